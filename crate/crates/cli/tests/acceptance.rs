//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails or exceeds its time budget.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sl2fam::cmd_tables;
use sl2fam_core::duals::{
    characterize_bijections, eta, eta_inverse, params_equivalent, verify_dual_bijection, CandidateMap, Characterization,
    Constraint,
};
use sl2fam_core::fiber::{factor_containing_m, jantzen_quotient_formula};
use sl2fam_core::pbw::{casimir, hc_projection, k_order, BasisKind, Monomial};
use sl2fam_core::sheaf::omega_infinity;
use sl2fam_core::verify::{fiber_suite, Grid};
use sl2fam_core::{
    evaluate_fiber, tilde_family, Chart, DualParam, FamilySection, GaussianRational as Gr, Poly, ProjectivePoint,
    UeaElement,
};

fn g(s: &str) -> Gr {
    s.parse().unwrap()
}

fn gs(items: &[&str]) -> Vec<Gr> {
    items.iter().map(|s| g(s)).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn cartan_poly(basis: BasisKind, coeffs: &[i64]) -> UeaElement {
    UeaElement::from_terms(
        basis,
        Gr::one(),
        coeffs
            .iter()
            .enumerate()
            .map(|(b, c)| (Monomial::new(0, b as u32, 0), Gr::from_int(*c))),
    )
}

fn hc_fixtures() -> Outcome {
    for basis in [BasisKind::Compact, BasisKind::Split] {
        let got = hc_projection(&casimir::<Gr>(basis), basis).unwrap();
        let want = cartan_poly(basis, &[-1, 0, 1]);
        if got != want {
            return fail(format!("{basis}: got {}", got.render()));
        }
    }
    ok("H^2 - 1 and Hs^2 - 1")
}

fn gamma_regularity() -> Outcome {
    let omega = omega_infinity();
    let mut power = FamilySection::function(Chart::Infinity, Poly::one());
    for n in 1..=3 {
        power = power.multiply(&omega);
        for basis in [BasisKind::Compact, BasisKind::Split] {
            match power.gamma_family(basis) {
                Ok(s) if s.is_regular() && s.chart == Chart::Infinity => {}
                other => return fail(format!("n={n} {basis}: {other:?}")),
            }
        }
    }
    ok("n = 1, 2, 3 for both Cartans")
}

fn order_inequality() -> Outcome {
    for basis in [BasisKind::Compact, BasisKind::Split] {
        let omega = casimir::<Gr>(basis);
        let mut power = UeaElement::one(basis);
        for n in 1..=3u32 {
            power = &power * &omega;
            let full = k_order(&power).unwrap();
            let proj = k_order(&hc_projection(&power, basis).unwrap()).unwrap();
            if full != Some(2 * n) || proj.is_some_and(|p| p > 2 * n) {
                return fail(format!("n={n} {basis}: o(Omega^n)={full:?}, o(gamma)={proj:?}"));
            }
        }
    }
    ok("n <= 3, both Cartans")
}

fn table_regeneration() -> Outcome {
    let mut kinds = std::collections::BTreeSet::new();
    for which in 1..=3u8 {
        let path = format!("{}/tests/fixtures/table{which}.json", env!("CARGO_MANIFEST_DIR"));
        let fixture: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let got = cmd_tables(which, 6, None, &Gr::one()).unwrap().json;
        if got != fixture {
            return fail(format!("table {which} differs from {path}"));
        }
        for row in fixture["rows"].as_array().unwrap() {
            kinds.insert(row["kind"].as_str().unwrap().to_string());
        }
    }
    if kinds.len() != 5 {
        return fail(format!("row kinds present: {kinds:?}"));
    }
    ok("tables 1-3 with |m| <= 6, all five row kinds")
}

fn jantzen_grid() -> Outcome {
    let c2s = gs(&["-4", "-1", "0", "1", "3", "8", "15"]);
    let points: Vec<ProjectivePoint> = ["1", "-1", "2", "-2", "3", "-3", "1/2", "-1/2", "inf"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut count = 0;
    for m in -4..=4i64 {
        let fams: Vec<_> = if m.abs() > 1 {
            vec![tilde_family(m, Gr::zero())]
        } else {
            c2s.iter().map(|c| tilde_family(m, c.clone())).collect()
        };
        for fam in fams {
            for p in &points {
                let got = factor_containing_m(&evaluate_fiber(&fam, p), m);
                let want = jantzen_quotient_formula(&fam, p);
                match (got, want) {
                    (Ok(a), Ok(b)) if a == b => count += 1,
                    (a, b) => return fail(format!("{fam} at {p}: {a:?} vs {b:?}")),
                }
            }
        }
    }
    ok(format!("{count} instances"))
}

fn dual_bijection() -> Outcome {
    let levels = gs(&["0", "1", "-1", "2", "-2", "4", "-4", "-9/4", "3", "8", "15"]);
    let mut total = 0;
    for r in ["1", "2", "1/2", "3"] {
        let rep = verify_dual_bijection(&g(r), 6, &levels);
        if let Some(e) = rep.failures().next() {
            return fail(format!("R={r}: {e:?}"));
        }
        for check in ["bijection", "surjectivity", "vogan-extension", "tempered", "affine"] {
            if rep.count(check) == 0 {
                return fail(format!("R={r}: no {check} instances"));
            }
        }
        if rep.count("vogan-extension") != 13 {
            return fail("Vogan check must cover |m| <= 6");
        }
        total += rep.entries.len();
    }
    ok(format!("{total} checks over R in {{1, 2, 1/2, 3}}"))
}

fn characterization() -> Outcome {
    for r in ["1", "2", "1/2"] {
        let big_r = g(r);
        let cand = CandidateMap::of_eta(&big_r).unwrap();
        match characterize_bijections(&cand) {
            Characterization::Matches { big_r: got } if got.is_rational() && Some(&got.rational) == big_r.as_real() => {}
            v => return fail(format!("R={r}: {v:?}")),
        }
        let a = cand.affine[&0].0.clone();
        let mut mismatched = cand.clone();
        mismatched.affine.insert(-1, (a.clone() + Gr::one(), -Gr::one()));
        let perturbed = [
            (CandidateMap::uniform(a.clone(), Gr::zero()), Constraint::VoganExtension),
            (CandidateMap::uniform(-a.clone(), -Gr::one()), Constraint::Temperedness),
            (mismatched, Constraint::MismatchedScale),
        ];
        for (c, want) in perturbed {
            match characterize_bijections(&c) {
                Characterization::Violated { constraint, .. } if constraint == want => {}
                v => return fail(format!("R={r}: expected {want:?}, got {v:?}")),
            }
        }
    }
    ok("accepts 1/R^2 for R in {1, 2, 1/2}; rejects b=0, a<0, mismatched a")
}

fn random_element(rng: &mut ChaCha8Rng, basis: BasisKind) -> UeaElement {
    let terms: Vec<(Monomial, Gr)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let m = Monomial::new(rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
            let c = Gr::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)) + Gr::i() * Gr::from_int(rng.gen_range(-2..=2));
            (m, c)
        })
        .collect();
    UeaElement::from_terms(basis, Gr::one(), terms)
}

fn property_suites() -> Outcome {
    // PBW associativity
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    let mut triples = 0;
    for i in 0..1000 {
        let basis = if i % 2 == 0 { BasisKind::Compact } else { BasisKind::Split };
        let (a, b, c) = (
            random_element(&mut rng, basis),
            random_element(&mut rng, basis),
            random_element(&mut rng, basis),
        );
        if &(&a * &b) * &c != &a * &(&b * &c) {
            return fail(format!("associativity: {} | {} | {}", a.render(), b.render(), c.render()));
        }
        triples += 1;
    }

    // ladder bracket and Casimir identities, as polynomials in each chart
    let mut ladders = 0;
    for m in -4..=4i64 {
        for c2 in gs(&["-4", "0", "1", "3"]) {
            let fam = tilde_family(m, c2);
            for chart in [Chart::Zero, Chart::Infinity] {
                let lad = fam.ladder_action(chart);
                let kappa = match chart {
                    Chart::Zero => Poly::one(),
                    Chart::Infinity => Poly::monomial(2, Gr::one()),
                };
                let c = match chart {
                    Chart::Zero => fam.casimir().clone(),
                    Chart::Infinity => Poly::new((0..3).rev().map(|i| fam.casimir().coeff(i)).collect()),
                };
                let z = Poly::zero;
                for n in fam.ktypes().elements_in(m - 10, m + 10) {
                    let xy = lad.up(n - 2).unwrap_or_else(z) * lad.down(n).unwrap_or_else(z);
                    let yx = lad.down(n + 2).unwrap_or_else(z) * lad.up(n).unwrap_or_else(z);
                    let nn = Gr::from_int(n);
                    if xy.clone() - yx.clone() != kappa.scale(&nn) {
                        return fail(format!("[X,Y] != kappa H on f_{n} of {fam} in {chart:?}"));
                    }
                    let omega = kappa.scale(&(nn.clone() * nn + Gr::from_int(2 * n))) + yx.scale(&Gr::from_int(4));
                    if omega != c {
                        return fail(format!("Casimir on f_{n} of {fam} in {chart:?}"));
                    }
                    ladders += 1;
                }
            }
        }
    }

    // factor K-type conservation and related fiber invariants
    let fibers = fiber_suite(&Grid::standard());
    if let Some(e) = fibers.failures().next() {
        return fail(format!("fibers: {e:?}"));
    }

    // eta round trips
    let mut trips = 0;
    for r in ["1", "2", "1/2", "3", "-7/2"] {
        let big_r = g(r);
        for m in -6..=6i64 {
            let levels = if m.abs() > 1 { vec![Gr::zero()] } else { (-12..=12).map(|k| Gr::from_ratio(k, 4)).collect() };
            for z in levels {
                let p = DualParam::motion(z, m).unwrap();
                let q = eta(&p, &big_r).unwrap();
                let back = eta_inverse(&q, &big_r).unwrap();
                if !params_equivalent(&back, &p).unwrap() {
                    return fail(format!("round trip {p} -> {q} -> {back}"));
                }
                trips += 1;
            }
        }
    }
    ok(format!(
        "{triples} associativity triples, {ladders} ladder identities, {} fiber checks, {trips} round trips",
        fibers.entries.len()
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("Harish-Chandra projection of the Casimir", Duration::from_secs(1), hc_fixtures),
        ("regularity of the family Harish-Chandra homomorphism", Duration::from_secs(1), gamma_regularity),
        ("order inequality for Casimir powers", Duration::from_secs(5), order_inequality),
        ("table regeneration against fixtures", Duration::from_secs(1), table_regeneration),
        ("Jantzen quotient formula on the family grid", Duration::from_secs(10), jantzen_grid),
        ("dual bijection properties", Duration::from_secs(10), dual_bijection),
        ("characterization of the bijections", Duration::from_secs(1), characterization),
        ("property suites", Duration::from_secs(30), property_suites),
    ];
    let mut all = true;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= budget;
        all &= pass;
        println!(
            "criterion {}: {} - {name}: {} ({:.3}s, budget {}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    assert!(all, "some acceptance criteria failed");
}
