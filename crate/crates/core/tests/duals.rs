//! Round trips of the dual bijections at random rational levels, and the
//! bijection suite on the standard grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2fam_core::duals::{eta, eta_inverse, is_tempered, params_equivalent, vogan_map};
use sl2fam_core::verify::{bijection_suite, Grid};
use sl2fam_core::{DualParam, GaussianRational as Gr};

fn random_rational(rng: &mut ChaCha8Rng) -> Gr {
    Gr::from_ratio(rng.gen_range(-60..=60), rng.gen_range(1..=9))
}

#[test]
fn eta_round_trips_at_random_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_de7a);
    for _ in 0..2000 {
        let big_r = random_rational(&mut rng);
        if big_r == Gr::from_int(0) {
            continue;
        }
        let m: i64 = rng.gen_range(-6..=6);
        let level = if m.abs() > 1 { Gr::from_int(0) } else { random_rational(&mut rng) };
        let p = DualParam::motion(level, m).unwrap();
        let q = eta(&p, &big_r).unwrap();
        let back = eta_inverse(&q, &big_r).unwrap();
        assert!(params_equivalent(&back, &p).unwrap(), "{p} -> {q} -> {back}");
        assert_eq!(is_tempered(&p), is_tempered(&q), "{p} -> {q}");

        let w = if m.abs() > 1 {
            q.level.clone()
        } else {
            random_rational(&mut rng)
        };
        let q2 = DualParam::group(w, m, big_r.clone()).unwrap();
        let z = eta_inverse(&q2, &big_r).unwrap();
        assert!(params_equivalent(&eta(&z, &big_r).unwrap(), &q2).unwrap());
    }
}

#[test]
fn characters_map_to_vogan_representatives() {
    for r in ["1", "2", "1/2", "3", "-5/3"] {
        let big_r: Gr = r.parse().unwrap();
        for m in -6..=6 {
            let ch = DualParam::motion(Gr::from_int(0), m).unwrap();
            assert_eq!(eta(&ch, &big_r).unwrap(), vogan_map(m, &big_r).unwrap());
        }
    }
}

#[test]
fn bijection_suite_on_standard_grid() {
    let grid = Grid::standard();
    for r in ["1", "2", "1/2", "3"] {
        let big_r: Gr = r.parse().unwrap();
        let rep = bijection_suite(&big_r, &grid);
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "R={r}: {bad:#?}");
        for check in [
            "bijection",
            "surjectivity",
            "vogan-extension",
            "tempered",
            "affine",
            "equivalence-caveat",
            "characterization",
            "fiber-consistency",
        ] {
            assert!(rep.count(check) > 0, "{check} missing at R={r}");
        }
    }
}
