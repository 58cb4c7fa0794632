//! The admissible duals of the group fibers and of the motion-group fiber,
//! their tempered parts, and the bijections `eta^R` from the motion dual to
//! the group dual at `R` that extend Vogan's minimal K-type bijection.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fiber::RealRoot;
use crate::param::{DualParam, Flavor, ParamError};
use crate::scalar::GaussianRational;

type Gr = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualsError {
    #[error("parameters live on different fibers: {left} vs {right}")]
    FlavorMismatch { left: String, right: String },
    #[error("expected a parameter of the {expected} fiber, got {got}")]
    WrongFiber { expected: &'static str, got: String },
    #[error("R must be nonzero")]
    ZeroR,
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Whether `a` and `b` name isomorphic modules: equal, or the two
/// parameters `m = 1` and `m = -1` at one level when the K-type sets agree.
/// The last condition separates the two limits of discrete series
/// `(-1, +-1)_R` and the two characters `(0, +-1)_0`.
pub fn params_equivalent(a: &DualParam, b: &DualParam) -> Result<bool, DualsError> {
    if a.flavor != b.flavor {
        return Err(DualsError::FlavorMismatch {
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    if a == b {
        return Ok(true);
    }
    Ok(a.m == -b.m && a.m.abs() == 1 && a.level == b.level && a.ktypes() == b.ktypes())
}

fn real_le(x: &Gr, bound: i64) -> bool {
    x.as_real().is_some_and(|r| *r <= BigRational::from_integer(bound.into()))
}

fn real_lt(x: &Gr, bound: i64) -> bool {
    x.as_real().is_some_and(|r| *r < BigRational::from_integer(bound.into()))
}

/// Membership in the tempered dual.
///
/// Group: the discrete series and limits `(d(d-2), d)`, `d > 0`, and
/// `(d(d+2), d)`, `d < 0`; `(omega, +-1)` with `omega < -1`; `(omega, 0)` with
/// `omega <= -1`. Motion: all characters `(0, m)`, and `(c, 0)`, `(c, +-1)`
/// with `c < 0`.
pub fn is_tempered(p: &DualParam) -> bool {
    if !p.level.is_real() {
        return false;
    }
    match p.flavor {
        Flavor::Group { .. } => p.m.abs() > 1 || real_le(&p.level, -1),
        Flavor::Motion => p.level.is_zero() || (p.m.abs() <= 1 && real_lt(&p.level, 0)),
    }
}

/// The tempered parameter with real infinitesimal character and minimal
/// K-type `m` on the group fiber at `R`.
pub fn vogan_map(m: i64, big_r: &Gr) -> Result<DualParam, DualsError> {
    let level = match m {
        -1..=1 => -1,
        d if d > 1 => d * (d - 2),
        d => d * (d + 2),
    };
    DualParam::group(Gr::from_int(level), m, big_r.clone()).map_err(|_| DualsError::ZeroR)
}

/// Constant term `c0(m)` of `eta^R` on minimal K-type `m`: `-1` for
/// `|m| <= 1`, else the forced discrete-series level.
pub fn eta_intercept(m: i64) -> Gr {
    let flavor = Flavor::group(Gr::one());
    Gr::from_int(DualParam::forced_level(&flavor, m).unwrap_or(-1))
}

/// `eta^R((z, m)_0) = (z/R^2 + c0(m), m)_R`.
pub fn eta(p: &DualParam, big_r: &Gr) -> Result<DualParam, DualsError> {
    if p.flavor != Flavor::Motion {
        return Err(DualsError::WrongFiber {
            expected: "motion",
            got: p.to_string(),
        });
    }
    p.validate()?;
    let inv = big_r.inv().ok_or(DualsError::ZeroR)?;
    let level = if p.m.abs() <= 1 {
        p.level.clone() * inv.clone() * inv + eta_intercept(p.m)
    } else {
        eta_intercept(p.m)
    };
    Ok(DualParam::group(level, p.m, big_r.clone())?)
}

/// Inverse of [`eta`]: `z = (omega + 1) R^2` for `|m| <= 1`, `z = 0` otherwise.
pub fn eta_inverse(q: &DualParam, big_r: &Gr) -> Result<DualParam, DualsError> {
    match &q.flavor {
        Flavor::Group { big_r: Some(r) } if r == big_r => {}
        _ => {
            return Err(DualsError::WrongFiber {
                expected: "group",
                got: q.to_string(),
            })
        }
    }
    q.validate()?;
    let z = if q.m.abs() <= 1 {
        (q.level.clone() + Gr::one()) * big_r.clone() * big_r.clone()
    } else {
        Gr::zero()
    };
    Ok(DualParam::motion(z, q.m)?)
}

/// Parameters of one fiber with `|m| <= max_m`, levels drawn from `levels`
/// where free and forced otherwise.
#[derive(Clone, Debug)]
pub struct DualAtlas {
    pub flavor: Flavor,
    pub max_m: i64,
    pub levels: Vec<Gr>,
}

impl DualAtlas {
    pub fn group(big_r: Gr, max_m: i64, levels: Vec<Gr>) -> Self {
        Self {
            flavor: Flavor::group(big_r),
            max_m,
            levels,
        }
    }

    pub fn motion(max_m: i64, levels: Vec<Gr>) -> Self {
        Self {
            flavor: Flavor::Motion,
            max_m,
            levels,
        }
    }

    pub fn params(&self) -> impl Iterator<Item = DualParam> + '_ {
        (-self.max_m..=self.max_m).flat_map(move |m| {
            let levels: Vec<Gr> = match DualParam::forced_level(&self.flavor, m) {
                Some(l) => vec![Gr::from_int(l)],
                None => self.levels.clone(),
            };
            levels.into_iter().map(move |level| DualParam {
                flavor: self.flavor.clone(),
                level,
                m,
            })
        })
    }

    /// Equivalence classes, each listed by its members in enumeration order.
    pub fn classes(&self) -> Vec<Vec<DualParam>> {
        let mut classes: Vec<Vec<DualParam>> = Vec::new();
        for p in self.params() {
            match classes
                .iter_mut()
                .find(|c| params_equivalent(&c[0], &p).unwrap_or(false))
            {
                Some(c) => c.push(p),
                None => classes.push(vec![p]),
            }
        }
        classes
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn push(&mut self, check: &str, instance: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.into(),
            instance: instance.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn count(&self, check: &str) -> usize {
        self.entries.iter().filter(|e| e.check == check).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}

fn equivalent_or_false(a: &DualParam, b: &DualParam) -> bool {
    params_equivalent(a, b).unwrap_or(false)
}

fn shown(p: &Result<DualParam, DualsError>) -> String {
    match p {
        Ok(p) => p.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

/// Checks that `eta^R` is a bijection of duals extending Vogan's bijection,
/// preserving temperedness both ways, and affine in the level for each `m`.
pub fn verify_dual_bijection(big_r: &Gr, max_m: i64, levels: &[Gr]) -> Report {
    let mut rep = Report::default();
    let motion = DualAtlas::motion(max_m, levels.to_vec());
    let group = DualAtlas::group(big_r.clone(), max_m, levels.to_vec());
    let src: Vec<DualParam> = motion.params().collect();
    let images: Vec<Result<DualParam, DualsError>> = src.iter().map(|p| eta(p, big_r)).collect();

    // (a) well defined and injective on classes, surjective onto the grid
    for (i, p) in src.iter().enumerate() {
        let Ok(ep) = &images[i] else {
            rep.push("bijection", p.to_string(), false, format!("eta failed: {}", shown(&images[i])));
            continue;
        };
        let mut bad = Vec::new();
        for (j, q) in src.iter().enumerate().skip(i + 1) {
            let Ok(eq) = &images[j] else { continue };
            if equivalent_or_false(p, q) != equivalent_or_false(ep, eq) {
                bad.push(format!("{q} -> {eq}"));
            }
        }
        let back = eta_inverse(ep, big_r).map(|b| equivalent_or_false(&b, p)).unwrap_or(false);
        let pass = bad.is_empty() && back;
        let detail = if pass {
            format!("{p} -> {ep}")
        } else {
            format!("{p} -> {ep}; round trip {back}; class mismatches: {}", bad.join(", "))
        };
        rep.push("bijection", p.to_string(), pass, detail);
    }
    for q in group.params() {
        let pre = eta_inverse(&q, big_r);
        let pass = pre
            .as_ref()
            .ok()
            .and_then(|z| eta(z, big_r).ok())
            .is_some_and(|e| equivalent_or_false(&e, &q));
        let detail = match &pre {
            Ok(z) => format!("{q} <- {z}"),
            Err(e) => format!("{q}: {e}"),
        };
        rep.push("surjectivity", q.to_string(), pass, detail);
    }

    // (b) Vogan's bijection on the characters (0, m)_0
    for m in -max_m..=max_m {
        let ch = DualParam::motion(Gr::zero(), m).expect("characters are valid");
        let got = eta(&ch, big_r);
        let want = vogan_map(m, big_r);
        let pass = matches!((&got, &want), (Ok(a), Ok(b)) if a == b);
        rep.push(
            "vogan-extension",
            format!("m={m}"),
            pass,
            format!("eta({ch}) = {}, Vogan {}", shown(&got), shown(&want)),
        );
    }

    // (c) temperedness in both directions
    for (p, ep) in src.iter().zip(&images) {
        if !p.level.is_real() {
            continue;
        }
        let Ok(ep) = ep else { continue };
        let (t0, t1) = (is_tempered(p), is_tempered(ep));
        rep.push("tempered", p.to_string(), t0 == t1, format!("{p} tempered={t0}, {ep} tempered={t1}"));
    }
    for q in group.params() {
        if !q.level.is_real() {
            continue;
        }
        if let Ok(z) = eta_inverse(&q, big_r) {
            let (t0, t1) = (is_tempered(&q), is_tempered(&z));
            rep.push("tempered", q.to_string(), t0 == t1, format!("{q} tempered={t0}, {z} tempered={t1}"));
        }
    }

    // (d) affine and invertible in the level for each free m
    let inv_sq = big_r.inv().map(|x| x.clone() * x);
    for m in -max_m..=max_m {
        if DualParam::forced_level(&Flavor::Motion, m).is_some() {
            rep.push("affine", format!("m={m}"), true, "single point to single point");
            continue;
        }
        let pts: Vec<(Gr, Gr)> = levels
            .iter()
            .filter_map(|z| {
                let p = DualParam::motion(z.clone(), m).ok()?;
                Some((z.clone(), eta(&p, big_r).ok()?.level))
            })
            .collect();
        let (pass, detail) = match (pts.as_slice(), &inv_sq) {
            ([(z0, w0), (z1, w1), rest @ ..], Some(expected)) => {
                let slope = (w1.clone() - w0.clone()) * (z1.clone() - z0.clone()).inv().unwrap_or_else(Gr::zero);
                let intercept = w0.clone() - slope.clone() * z0.clone();
                let on_line = rest
                    .iter()
                    .all(|(z, w)| *w == slope.clone() * z.clone() + intercept.clone());
                let ok = on_line && !slope.is_zero() && slope == *expected && intercept == eta_intercept(m);
                (ok, format!("z -> {slope}*z + {intercept}"))
            }
            _ => (false, "fewer than two distinct grid levels".to_string()),
        };
        rep.push("affine", format!("m={m}"), pass, detail);
    }
    rep
}

/// A candidate bijection given on the free part of the dual by
/// `(z, m)_0 -> (a_m z + b_m, m)` for `m in {-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateMap {
    pub affine: BTreeMap<i64, (Gr, Gr)>,
}

impl CandidateMap {
    pub fn uniform(a: Gr, b: Gr) -> Self {
        Self {
            affine: (-1..=1).map(|m| (m, (a.clone(), b.clone()))).collect(),
        }
    }

    /// The coefficients of `eta^R`.
    pub fn of_eta(big_r: &Gr) -> Option<Self> {
        let inv = big_r.inv()?;
        Some(Self::uniform(inv.clone() * inv, -Gr::one()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// `a_m = 0` is not an isomorphism of affine lines.
    Isomorphism,
    /// `b_m = -1` is forced by sending `(0, m)_0` to Vogan's representative.
    VoganExtension,
    /// `a_m` real and positive is forced by preserving temperedness.
    Temperedness,
    /// `a_1 = a_-1` (and the common scale) is forced by compatibility with
    /// the equivalence `(c, 1)_0 ~ (c, -1)_0`.
    MismatchedScale,
    /// A minimal K-type in `{-1, 0, 1}` is missing from the candidate.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum Characterization {
    /// The candidate is `eta^R` with `R > 0`, `1/R^2 = a`.
    Matches { big_r: RealRoot },
    Violated { constraint: Constraint, m: i64, detail: String },
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characterization::Matches { big_r } => write!(f, "matches eta^R with R = {big_r}"),
            Characterization::Violated { constraint, m, detail } => {
                let name = serde_json::to_value(constraint).ok();
                let name = name.as_ref().and_then(|v| v.as_str()).unwrap_or("constraint");
                write!(f, "violates {name} at m={m}: {detail}")
            }
        }
    }
}

/// Replays the uniqueness argument: a bijection of the given affine shape
/// satisfying the three conditions is `eta^R` for exactly one `R > 0`.
pub fn characterize_bijections(candidate: &CandidateMap) -> Characterization {
    let violated = |constraint, m, detail: String| Characterization::Violated { constraint, m, detail };
    for m in -1..=1 {
        if !candidate.affine.contains_key(&m) {
            return violated(Constraint::Incomplete, m, format!("no affine map for m={m}"));
        }
    }
    for (&m, (a, _)) in &candidate.affine {
        if a.is_zero() {
            return violated(Constraint::Isomorphism, m, "a = 0".into());
        }
    }
    for (&m, (_, b)) in &candidate.affine {
        if *b != -Gr::one() {
            return violated(
                Constraint::VoganExtension,
                m,
                format!("(0,{m})_0 maps to ({b},{m}), Vogan's representative is (-1,{m})"),
            );
        }
    }
    for (&m, (a, _)) in &candidate.affine {
        if !a.as_real().is_some_and(|x| x.is_positive()) {
            return violated(
                Constraint::Temperedness,
                m,
                format!("a = {a}: tempered levels z < 0 must land in omega <= -1"),
            );
        }
    }
    let a0 = candidate.affine[&0].0.clone();
    for (&m, (a, _)) in &candidate.affine {
        if *a != a0 {
            return violated(Constraint::MismatchedScale, m, format!("a_{m} = {a} but a_0 = {a0}"));
        }
    }
    let a = a0.as_real().expect("checked real").clone();
    Characterization::Matches {
        big_r: RealRoot::new(BigRational::zero(), BigRational::one(), &(BigRational::one() / a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Gr {
        s.parse().unwrap()
    }

    fn grp(level: &str, m: i64, r: &str) -> DualParam {
        DualParam::group(g(level), m, g(r)).unwrap()
    }

    fn mot(level: &str, m: i64) -> DualParam {
        DualParam::motion(g(level), m).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        assert!(params_equivalent(&grp("5", 1, "1"), &grp("5", -1, "1")).unwrap());
        assert!(!params_equivalent(&grp("-1", 1, "1"), &grp("-1", -1, "1")).unwrap());
        assert!(params_equivalent(&grp("3", 1, "1"), &grp("3", -1, "1")).unwrap());
        assert!(!params_equivalent(&mot("0", 1), &mot("0", -1)).unwrap());
        assert!(params_equivalent(&mot("2", 1), &mot("2", -1)).unwrap());
        assert!(params_equivalent(&grp("5", 1, "1"), &grp("5", 1, "2")).is_err());
    }

    #[test]
    fn tempered_examples() {
        assert!(is_tempered(&grp("-4", 0, "1")));
        assert!(is_tempered(&grp("-1", 1, "1")));
        assert!(!is_tempered(&grp("3", 0, "1")));
        assert!(!is_tempered(&grp("-1/2", 1, "1")));
        assert!(is_tempered(&mot("0", 5)));
        assert!(is_tempered(&mot("-4", 0)));
        assert!(!is_tempered(&mot("4", 0)));
        assert!(!is_tempered(&grp("-2+i", 0, "1")));
    }

    #[test]
    fn vogan_and_eta_examples() {
        let one = Gr::one();
        assert_eq!(vogan_map(0, &one).unwrap(), grp("-1", 0, "1"));
        assert_eq!(vogan_map(3, &one).unwrap(), grp("3", 3, "1"));
        assert_eq!(vogan_map(-2, &one).unwrap(), grp("0", -2, "1"));
        assert_eq!(vogan_map(-3, &one).unwrap(), grp("3", -3, "1"));
        assert_eq!(eta(&mot("0", 0), &one).unwrap(), grp("-1", 0, "1"));
        assert_eq!(eta(&mot("-4", 0), &one).unwrap(), grp("-5", 0, "1"));
        assert_eq!(eta(&mot("-4", 0), &g("2")).unwrap(), grp("-2", 0, "2"));
        assert_eq!(eta_inverse(&grp("-1", 0, "1"), &one).unwrap(), mot("0", 0));
        assert_eq!(eta_inverse(&grp("-5", 0, "1"), &one).unwrap(), mot("-4", 0));
        assert_eq!(eta_inverse(&grp("3", 3, "1"), &one).unwrap(), mot("0", 3));
        assert!(eta(&grp("3", 3, "1"), &one).is_err());
        assert!(eta(&DualParam { flavor: Flavor::Motion, level: g("1"), m: 3 }, &one).is_err());
    }

    #[test]
    fn dual_bijection_small_grid() {
        let levels: Vec<Gr> = ["0", "1", "-1", "2", "-2", "4", "-4", "-9/4"].iter().map(|s| g(s)).collect();
        let rep = verify_dual_bijection(&Gr::one(), 6, &levels);
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        for check in ["bijection", "surjectivity", "vogan-extension", "tempered", "affine"] {
            assert!(rep.count(check) > 0, "{check}");
        }
    }

    #[test]
    fn characterization_examples() {
        let m = characterize_bijections(&CandidateMap::uniform(Gr::one(), -Gr::one()));
        assert_eq!(m, Characterization::Matches { big_r: RealRoot::rational(BigRational::one()) });
        for (r, want) in [("2", "2"), ("1/2", "1/2")] {
            let c = CandidateMap::of_eta(&g(r)).unwrap();
            match characterize_bijections(&c) {
                Characterization::Matches { big_r } => assert_eq!(big_r.to_string(), want),
                v => panic!("{v:?}"),
            }
        }
        let v = characterize_bijections(&CandidateMap::uniform(Gr::one(), Gr::zero()));
        assert!(matches!(v, Characterization::Violated { constraint: Constraint::VoganExtension, .. }));
        let v = characterize_bijections(&CandidateMap::uniform(-Gr::one(), -Gr::one()));
        assert!(matches!(v, Characterization::Violated { constraint: Constraint::Temperedness, .. }));
        let mut c = CandidateMap::uniform(Gr::one(), -Gr::one());
        c.affine.insert(1, (g("4"), -Gr::one()));
        let v = characterize_bijections(&c);
        assert!(matches!(v, Characterization::Violated { constraint: Constraint::MismatchedScale, m: 1, .. }));
        // an irrational scale still determines R
        match characterize_bijections(&CandidateMap::uniform(g("2"), -Gr::one())) {
            Characterization::Matches { big_r } => assert_eq!(big_r.to_string(), "1/2*sqrt(2)"),
            v => panic!("{v:?}"),
        }
    }
}
