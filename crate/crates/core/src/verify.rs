//! Verification suites over parameter grids. Each suite returns a
//! [`Report`] listing every instance checked.

use num_traits::{One, Zero};

use crate::duals::{
    characterize_bijections, eta, params_equivalent, verify_dual_bijection, CandidateMap, Characterization, Constraint,
    Report,
};
use crate::families::{tilde_family, KTypeSet};
use crate::fiber::{evaluate_fiber, factor_containing_m, jantzen_quotient_formula};
use crate::param::{DualParam, Flavor};
use crate::pbw::{casimir, hc_projection, k_order, BasisKind};
use crate::scalar::GaussianRational;
use crate::sheaf::{omega_infinity, ProjectivePoint};

type Gr = GaussianRational;

/// Families, points and dual levels a suite runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub m_max: i64,
    pub c2s: Vec<Gr>,
    pub points: Vec<ProjectivePoint>,
    pub dual_m_max: i64,
    pub levels: Vec<Gr>,
}

fn parse_all(items: &[&str]) -> Vec<Gr> {
    items.iter().map(|s| s.parse().expect("literal")).collect()
}

fn points(items: &[&str]) -> Vec<ProjectivePoint> {
    items.iter().map(|s| s.parse().expect("literal")).collect()
}

impl Grid {
    /// Families with `|m| <= 4`, `c2` in `{-4,-1,0,1,3,8,15}`, points
    /// `{+-1, +-2, +-3, +-1/2, inf}`; dual levels `{0,+-1,+-2,+-4,-9/4,3,8,15}`
    /// with `|m| <= 6`.
    pub fn standard() -> Self {
        Self {
            m_max: 4,
            c2s: parse_all(&["-4", "-1", "0", "1", "3", "8", "15"]),
            points: points(&["1", "-1", "2", "-2", "3", "-3", "1/2", "-1/2", "inf"]),
            dual_m_max: 6,
            levels: parse_all(&["0", "1", "-1", "2", "-2", "4", "-4", "-9/4", "3", "8", "15"]),
        }
    }

    pub fn small() -> Self {
        Self {
            m_max: 2,
            c2s: parse_all(&["-1", "0", "1"]),
            points: points(&["1", "2", "inf"]),
            dual_m_max: 3,
            levels: parse_all(&["0", "-1", "3"]),
        }
    }

    pub fn wide() -> Self {
        Self {
            m_max: 6,
            c2s: parse_all(&["-9", "-4", "-1", "-1/4", "0", "1/4", "1", "3", "8", "15", "24", "35"]),
            points: points(&["1", "-1", "2", "-2", "3", "-3", "5", "1/2", "-1/2", "1/3", "2/3", "-5/7", "inf"]),
            dual_m_max: 10,
            levels: parse_all(&["0", "1", "-1", "2", "-2", "4", "-4", "-9/4", "3", "8", "15", "24", "-1/3", "7/5"]),
        }
    }

    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "standard" | "default" => Some(Self::standard()),
            "small" => Some(Self::small()),
            "wide" => Some(Self::wide()),
            _ => None,
        }
    }

    /// Distinguished families on the grid; `|m| > 1` contributes one family.
    pub fn families(&self) -> Vec<crate::families::ModuleFamily> {
        let mut out = Vec::new();
        for m in -self.m_max..=self.m_max {
            if m.abs() > 1 {
                out.push(tilde_family(m, Gr::zero()));
            } else {
                out.extend(self.c2s.iter().map(|c2| tilde_family(m, c2.clone())));
            }
        }
        out
    }
}

fn fam_name(f: &crate::families::ModuleFamily) -> String {
    format!("m={} c={}", f.m(), f.casimir().render("r"))
}

/// The Jantzen quotient containing `m` agrees with the closed formula at
/// every real grid point.
pub fn jantzen_suite(grid: &Grid) -> Report {
    let mut rep = Report::default();
    for fam in grid.families() {
        for p in &grid.points {
            let instance = format!("{} at r={p}", fam_name(&fam));
            let fib = evaluate_fiber(&fam, p);
            let got = factor_containing_m(&fib, fam.m());
            let want = jantzen_quotient_formula(&fam, p);
            let pass = matches!((&got, &want), (Ok(a), Ok(b)) if a == b);
            let detail = match (&got, &want) {
                (Ok(a), Ok(b)) if pass => format!("{a}"),
                (Ok(a), Ok(b)) => format!("Jantzen quotient containing m is {a}, closed formula gives {b}"),
                (a, b) => format!("{a:?} / {b:?}"),
            };
            rep.push("jantzen-quotient", instance, pass, detail);
        }
    }
    rep
}

/// Structural invariants of fibers: factors partition the K-types, carry the
/// ambient level, and there are several exactly when the fiber is reducible.
pub fn fiber_suite(grid: &Grid) -> Report {
    let mut rep = Report::default();
    for fam in grid.families() {
        for p in &grid.points {
            let instance = format!("{} at r={p}", fam_name(&fam));
            let fib = evaluate_fiber(&fam, p);
            let factors = fib.composition_factors();
            let (lo, hi) = fib.analysis_window();
            let expected = fam.ktypes().elements_in(lo, hi);
            let mut seen: Vec<i64> = Vec::new();
            for f in &factors.factors {
                seen.extend(expected.iter().copied().filter(|&n| f.segment.contains(n)));
            }
            seen.sort_unstable();
            let conserved = seen == expected;
            rep.push(
                "ktype-conservation",
                instance.clone(),
                conserved,
                format!("{} factors over [{lo},{hi}]", factors.factors.len()),
            );

            let level = fib.level();
            let levels_ok = factors.factors.iter().all(|f| match &f.param.flavor {
                Flavor::Group { .. } => f.param.level == level,
                Flavor::Motion => f.param.level == level || (level.is_zero() && f.param.level.is_zero()),
            });
            rep.push("factor-level", instance.clone(), levels_ok, format!("ambient level {level}"));

            let multiple = factors.factors.len() >= 2 || factors.truncated;
            rep.push(
                "reducible-iff-split",
                instance.clone(),
                fib.is_reducible() == multiple,
                format!("reducible={}, factors={}", fib.is_reducible(), factors.factors.len()),
            );

            if fam.m() == 0 && matches!(fam.ktypes(), KTypeSet::AllEven) && level.is_real() && !factors.truncated {
                let walls = fib.walls();
                let mirrored: Vec<i64> = {
                    let mut w: Vec<i64> = walls.iter().map(|&n| -n - 2).collect();
                    w.sort_unstable();
                    w
                };
                rep.push(
                    "wall-symmetry",
                    instance,
                    walls == mirrored,
                    format!("edges {walls:?}"),
                );
            }
        }
    }
    rep
}

/// `eta^R` is a bijection of duals with the required properties, is the
/// unique such map of affine shape, and is realized by the families.
pub fn bijection_suite(big_r: &Gr, grid: &Grid) -> Report {
    let mut rep = verify_dual_bijection(big_r, grid.dual_m_max, &grid.levels);

    // boundary levels where the bare equivalence criterion would merge
    // modules with different K-types
    for (a, b) in boundary_pairs(big_r) {
        let ka = a.ktypes();
        let kb = b.ktypes();
        let merged = params_equivalent(&a, &b).unwrap_or(true);
        rep.push(
            "equivalence-caveat",
            format!("{a} vs {b}"),
            !merged && ka != kb,
            format!("same level, K-types {ka} vs {kb}: kept distinct; the bare criterion would identify them"),
        );
    }

    // uniqueness
    if let Some(c) = CandidateMap::of_eta(big_r) {
        let verdict = characterize_bijections(&c);
        let pass = match &verdict {
            Characterization::Matches { big_r: r } => r.is_rational() && Some(&r.rational) == big_r.as_real(),
            _ => false,
        };
        rep.push("characterization", format!("a=1/R^2, R={big_r}"), pass, verdict.to_string());
        let a = c.affine[&0].0.clone();
        let perturbed = [
            ("b=0", CandidateMap::uniform(a.clone(), Gr::zero()), Constraint::VoganExtension),
            ("a<0", CandidateMap::uniform(-a.clone(), -Gr::one()), Constraint::Temperedness),
            (
                "a_1 != a_0",
                {
                    let mut m = c.clone();
                    m.affine.insert(1, (a.clone() * Gr::from_int(2), -Gr::one()));
                    m
                },
                Constraint::MismatchedScale,
            ),
        ];
        for (name, cand, want) in perturbed {
            let verdict = characterize_bijections(&cand);
            let pass = matches!(&verdict, Characterization::Violated { constraint, .. } if *constraint == want);
            rep.push("characterization", format!("{name}, R={big_r}"), pass, verdict.to_string());
        }
    }

    // families connect the two fibers
    let p_r = ProjectivePoint::from_big_r(big_r.clone());
    for fam in grid.families() {
        let at_inf = factor_containing_m(&evaluate_fiber(&fam, &ProjectivePoint::infinity()), fam.m());
        let at_r = factor_containing_m(&evaluate_fiber(&fam, &p_r), fam.m());
        let mapped = at_inf.as_ref().ok().map(|q| eta(q, big_r));
        let pass = match (&mapped, &at_r) {
            (Some(Ok(a)), Ok(b)) => params_equivalent(a, b).unwrap_or(false),
            _ => false,
        };
        let detail = match (&at_inf, &mapped, &at_r) {
            (Ok(q), Some(Ok(a)), Ok(b)) => format!("eta({q}) = {a}, fiber at R gives {b}"),
            _ => format!("{at_inf:?} / {at_r:?}"),
        };
        rep.push("fiber-consistency", format!("{} at R={big_r}", fam_name(&fam)), pass, detail);
    }
    rep
}

fn boundary_pairs(big_r: &Gr) -> Vec<(DualParam, DualParam)> {
    let g = |m| DualParam::group(-Gr::one(), m, big_r.clone());
    let mo = |m| DualParam::motion(Gr::zero(), m);
    let mut out = Vec::new();
    if let (Ok(a), Ok(b)) = (g(1), g(-1)) {
        out.push((a, b));
    }
    if let (Ok(a), Ok(b)) = (mo(1), mo(-1)) {
        out.push((a, b));
    }
    out
}

/// `o(gamma(Omega^n)) <= o(Omega^n) = 2n` for `n <= n_max`, both Cartans.
fn show_order<E: std::fmt::Display>(o: &Result<Option<u32>, E>) -> String {
    match o {
        Ok(Some(k)) => k.to_string(),
        Ok(None) => "none (zero element)".into(),
        Err(e) => format!("error: {e}"),
    }
}

pub fn order_suite(n_max: u32) -> Report {
    let mut rep = Report::default();
    for cartan in [BasisKind::Compact, BasisKind::Split] {
        let omega = casimir(cartan);
        let mut power = crate::UeaElement::one(cartan);
        for n in 1..=n_max {
            power = &power * &omega;
            let full = k_order(&power);
            let projected = hc_projection(&power, cartan).and_then(|g| k_order(&g));
            let pass = matches!((&full, &projected),
                (Ok(Some(f)), Ok(p)) if *f == 2 * n && p.is_none_or(|p| p <= *f));
            rep.push(
                "order-inequality",
                format!("n={n}, {cartan}"),
                pass,
                format!("o(Omega^n) = {}, o(gamma(Omega^n)) = {}", show_order(&full), show_order(&projected)),
            );
        }
    }
    rep
}

/// `gamma((R^2 Omega_0)^n)` is regular over `Xinf` for both Cartans, and
/// the powers are central regular sections.
pub fn regularity_suite(n_max: u32) -> Report {
    let mut rep = Report::default();
    let omega = omega_infinity();
    let mut power = crate::sheaf::FamilySection::function(omega.chart(), crate::poly::Polynomial::one());
    for n in 1..=n_max {
        power = power.multiply(&omega);
        rep.push(
            "central-section",
            format!("n={n}"),
            power.center_membership() && power.is_regular_by_order(),
            power.render(),
        );
        for cartan in [BasisKind::Compact, BasisKind::Split] {
            let (pass, detail) = match power.gamma_family(cartan) {
                Ok(s) => (
                    s.is_regular() && s.chart == crate::poly::Chart::Infinity,
                    s.render(),
                ),
                Err(e) => (false, e.to_string()),
            };
            rep.push("gamma-regular", format!("n={n}, {cartan}"), pass, detail);
        }
    }
    rep
}

/// The statement a check instance tests, for failure reports.
pub fn claim(check: &str) -> &'static str {
    match check {
        "jantzen-quotient" => "the Jantzen quotient containing m at a real point is (c2/R^2 + c0, m)_R, or (c2, m)_0 at R = 0",
        "ktype-conservation" => "composition factors partition the K-types of the fiber",
        "factor-level" => "every composition factor carries the Casimir level of the fiber",
        "reducible-iff-split" => "a fiber is reducible exactly when it has at least two composition factors",
        "wall-symmetry" => "vanishing ladder edges are symmetric under n -> -n - 2",
        "bijection" => "eta^R is well defined and injective on equivalence classes",
        "surjectivity" => "every group parameter is eta^R of a motion parameter",
        "vogan-extension" => "eta^R sends the character (0, m)_0 to Vogan's tempered representative",
        "tempered" => "eta^R preserves temperedness in both directions",
        "affine" => "eta^R is an invertible affine map z -> z/R^2 + c0(m) on each minimal K-type",
        "equivalence-caveat" => "parameters at m = 1 and m = -1 are equivalent only when their K-type sets agree",
        "characterization" => "a bijection with the three properties is eta^R for a unique R > 0",
        "fiber-consistency" => "eta^R maps the factor containing m at R = 0 to the factor containing m at R",
        "order-inequality" => "the Harish-Chandra projection does not raise the K-adapted order of Omega^n",
        "central-section" => "powers of the Casimir section are central and regular over Xinf",
        "gamma-regular" => "the generalized Harish-Chandra homomorphism maps the center into regular Cartan sections",
        _ => "unnamed check",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Jantzen,
    Fibers,
    Bijection,
    OrderInequality,
    Regularity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Jantzen,
        Suite::Fibers,
        Suite::Bijection,
        Suite::OrderInequality,
        Suite::Regularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jantzen => "conjecture2",
            Suite::Fibers => "fibers",
            Suite::Bijection => "bijection",
            Suite::OrderInequality => "appendix",
            Suite::Regularity => "regularity",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Runs the suite. `radii` applies to the bijection suite, `n_max` to
    /// the order and regularity suites.
    pub fn run(self, grid: &Grid, radii: &[Gr], n_max: u32) -> Report {
        match self {
            Suite::Jantzen => jantzen_suite(grid),
            Suite::Fibers => fiber_suite(grid),
            Suite::Bijection => {
                let mut rep = Report::default();
                for r in radii {
                    rep.extend(bijection_suite(r, grid));
                }
                rep
            }
            Suite::OrderInequality => order_suite(n_max),
            Suite::Regularity => regularity_suite(n_max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_profile_passes() {
        let grid = Grid::small();
        for suite in Suite::ALL {
            let rep = suite.run(&grid, &[Gr::one(), Gr::from_int(2)], 2);
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "{}: {bad:#?}", suite.name());
            assert!(!rep.entries.is_empty());
        }
    }
}
