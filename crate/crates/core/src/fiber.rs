//! Fibers of a family at a point of `CP^1`: ladder scalars, reducibility,
//! composition factors by cutting the K-type ladder at vanishing edges,
//! and the closed formula for the Jantzen quotient containing `m`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::families::{wall_value, KTypeSet, ModuleFamily};
use crate::param::{DualParam, Flavor};
use crate::poly::Chart;
use crate::scalar::{rational_sqrt, sqrt_ceil_abs, GaussianRational};
use crate::sheaf::ProjectivePoint;

type Gr = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("{m} is not a K-type of the fiber")]
    NotAKType { m: i64 },
    #[error("the point {point} is not real")]
    NotReal { point: String },
    #[error("the family is not in the distinguished class")]
    NotInTildeClass,
    #[error("the point r = 0 lies outside the chart at infinity")]
    OutsideInfinityChart,
    #[error("the Casimir function is not real on the real line")]
    ComplexCasimir,
}

/// A family evaluated at one point.
#[derive(Clone, Debug)]
pub struct FiberModule {
    family: ModuleFamily,
    point: ProjectivePoint,
    chart: Chart,
    coordinate: Gr,
}

/// `[lo, hi]` inside a K-type set, stepping by 2; `None` is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Segment {
    pub fn contains(&self, n: i64) -> bool {
        self.lo.is_none_or(|lo| lo <= n) && self.hi.is_none_or(|hi| n <= hi)
    }

    /// The element of smallest absolute value among `ktypes` in the
    /// segment; when `-1` and `1` tie, `prefer` decides (default `1`).
    fn minimal_ktype(&self, ktypes: &KTypeSet, prefer: Option<i64>) -> i64 {
        let parity = ktypes.parity();
        match (self.lo, self.hi) {
            (Some(lo), _) if lo > 0 => lo,
            (_, Some(hi)) if hi < 0 => hi,
            _ if parity == 0 => 0,
            _ => {
                let both = self.contains(1) && self.contains(-1);
                match (both, prefer) {
                    (true, Some(-1)) => -1,
                    (true, _) => 1,
                    (false, _) if self.contains(1) => 1,
                    _ => -1,
                }
            }
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => write!(f, "{{{a}}}"),
            (Some(a), Some(b)) => write!(f, "{{{a},...,{b}}}"),
            (Some(a), None) => write!(f, "{{{a},...}}"),
            (None, Some(b)) => write!(f, "{{...,{b}}}"),
            (None, None) => write!(f, "{{...}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub param: DualParam,
    pub segment: Segment,
}

/// Composition factors in ascending K-type order. When the fiber has
/// infinitely many factors only those meeting the analysis window are
/// listed and `truncated` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorList {
    pub factors: Vec<Factor>,
    pub truncated: bool,
}

impl FactorList {
    pub fn params(&self) -> Vec<DualParam> {
        self.factors.iter().map(|f| f.param.clone()).collect()
    }
}

/// `fam` at `p`, read in `X0` for finite points and in `Xinf` at infinity.
pub fn evaluate_fiber(fam: &ModuleFamily, p: &ProjectivePoint) -> FiberModule {
    let chart = p.chart();
    FiberModule {
        family: fam.clone(),
        point: p.clone(),
        chart,
        coordinate: p.coordinate(chart).expect("point lies in its chart"),
    }
}

impl FiberModule {
    pub fn family(&self) -> &ModuleFamily {
        &self.family
    }

    pub fn point(&self) -> &ProjectivePoint {
        &self.point
    }

    pub fn ktypes(&self) -> &KTypeSet {
        self.family.ktypes()
    }

    pub fn flavor(&self) -> Flavor {
        if self.point.is_infinity() {
            Flavor::Motion
        } else {
            Flavor::Group {
                big_r: self.point.big_r(),
            }
        }
    }

    /// `c(r)` on a group fiber, `c2` on the motion fiber.
    pub fn level(&self) -> Gr {
        match self.chart {
            Chart::Zero => self.family.casimir().eval(&self.coordinate),
            Chart::Infinity => self.family.c2(),
        }
    }

    /// The non-unit coefficient on the edge between `n` and `n+2`.
    pub fn edge_scalar(&self, n: i64) -> Gr {
        self.family.edge_coefficient(n, self.chart).eval(&self.coordinate)
    }

    /// Coefficient of `X` from the `n`-line to the `n+2`-line.
    pub fn up(&self, n: i64) -> Option<Gr> {
        self.family.ladder_action(self.chart).up(n).map(|p| p.eval(&self.coordinate))
    }

    /// Coefficient of `Y` from the `n`-line to the `n-2`-line.
    pub fn down(&self, n: i64) -> Option<Gr> {
        self.family.ladder_action(self.chart).down(n).map(|p| p.eval(&self.coordinate))
    }

    /// K-types scanned for walls. Any vanishing edge `(n, n+2)` has
    /// `(n+1)^2 = level + 1`, so `|n| <= sqrt|level| + 2` covers all of them.
    pub fn analysis_window(&self) -> (i64, i64) {
        let w = self.level();
        let b = sqrt_ceil_abs(&(w.re().abs() + w.im().abs())) + 3;
        let m = self.family.m();
        (-b.max(2 - m), b.max(m + 2))
    }

    /// Lower ends `n` of the edges `(n, n+2)` inside the K-type set whose
    /// scalar vanishes, within the analysis window.
    pub fn walls(&self) -> Vec<i64> {
        let (lo, hi) = self.analysis_window();
        let ks = self.ktypes();
        (lo..hi)
            .filter(|n| ks.contains(*n) && ks.contains(n + 2))
            .filter(|n| self.edge_scalar(*n).is_zero())
            .collect()
    }

    pub fn is_reducible(&self) -> bool {
        !self.walls().is_empty()
    }

    fn name(&self, seg: &Segment, prefer: Option<i64>) -> DualParam {
        let mk = seg.minimal_ktype(self.ktypes(), prefer);
        DualParam {
            flavor: self.flavor(),
            level: self.level(),
            m: mk,
        }
    }

    fn segments(&self) -> (Vec<Segment>, bool) {
        let (set_lo, set_hi) = self.ktypes().bounds();
        let walls = self.walls();
        let every_edge = self.chart == Chart::Infinity && self.family.c2().is_zero();
        let mut segs = Vec::new();
        let mut lo = set_lo;
        for w in &walls {
            segs.push(Segment { lo, hi: Some(*w) });
            lo = Some(w + 2);
        }
        segs.push(Segment { lo, hi: set_hi });
        let truncated = every_edge && !self.ktypes().is_finite();
        if truncated {
            // Every edge vanishes, so an unbounded end is a run of further
            // singletons; keep only the one inside the window.
            for s in &mut segs {
                (s.lo, s.hi) = (s.lo.or(s.hi), s.hi.or(s.lo));
            }
        }
        (segs, truncated)
    }

    /// Irreducible subquotients, one per maximal ladder segment without a
    /// vanishing edge.
    pub fn composition_factors(&self) -> FactorList {
        let (segs, truncated) = self.segments();
        FactorList {
            factors: segs
                .into_iter()
                .map(|s| Factor {
                    param: self.name(&s, None),
                    segment: s,
                })
                .collect(),
            truncated,
        }
    }

    /// The composition factor whose K-types contain `m`.
    pub fn factor_containing(&self, m: i64) -> Result<Factor, FiberError> {
        if !self.ktypes().contains(m) {
            return Err(FiberError::NotAKType { m });
        }
        let (segs, _) = self.segments();
        let seg = segs
            .into_iter()
            .find(|s| s.contains(m))
            .expect("window contains m");
        Ok(Factor {
            param: self.name(&seg, Some(m)),
            segment: seg,
        })
    }
}

/// The composition factor of `fib` containing `m`, as a parameter.
pub fn factor_containing_m(fib: &FiberModule, m: i64) -> Result<DualParam, FiberError> {
    fib.factor_containing(m).map(|f| f.param)
}

/// `(c2/R^2 + c0, m)_R` for `R != 0` and `(c2, m)_0` at `R = 0`.
pub fn jantzen_quotient_formula(fam: &ModuleFamily, p: &ProjectivePoint) -> Result<DualParam, FiberError> {
    if !p.is_real() {
        return Err(FiberError::NotReal { point: p.to_string() });
    }
    if !fam.in_tilde_class().member {
        return Err(FiberError::NotInTildeClass);
    }
    let big_r = p.big_r().ok_or(FiberError::OutsideInfinityChart)?;
    let [c0, _, c2] = fam.casimir_coeffs();
    Ok(if big_r.is_zero() {
        DualParam {
            flavor: Flavor::Motion,
            level: c2,
            m: fam.m(),
        }
    } else {
        let inv = big_r.inv().expect("nonzero");
        DualParam {
            flavor: Flavor::group(big_r),
            level: c2 * inv.clone() * inv + c0,
            m: fam.m(),
        }
    })
}

/// A real number `a + b sqrt(d)` with `d` a positive non-square integer,
/// or `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRoot {
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl RealRoot {
    pub fn rational(q: BigRational) -> Self {
        Self {
            rational: q,
            coeff: BigRational::zero(),
            radicand: BigInt::zero(),
        }
    }

    /// `a + b sqrt(q)` for rational `q >= 0`, simplified.
    pub fn new(a: BigRational, b: BigRational, q: &BigRational) -> Self {
        if let Some(s) = rational_sqrt(q) {
            return Self::rational(a + b * s);
        }
        // sqrt(p/s) = sqrt(p s) / s
        let (p, s) = (q.numer().clone(), q.denom().clone());
        let mut d = p * &s;
        let mut outside = BigInt::one();
        let mut f = BigInt::from(2);
        while &f * &f <= d && f < BigInt::from(10_000) {
            let sq = &f * &f;
            while (&d % &sq).is_zero() {
                d /= &sq;
                outside *= &f;
            }
            f += 1;
        }
        Self {
            rational: a,
            coeff: b * BigRational::new(outside, s),
            radicand: d,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        r + c * d.sqrt()
    }

    /// The point `r = value` when the value is rational.
    pub fn to_point(&self) -> Option<ProjectivePoint> {
        self.is_rational()
            .then(|| ProjectivePoint::finite(Gr::from_rational(self.rational.clone())))
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let c = &self.coeff;
        let surd = if c.is_one() {
            format!("sqrt({})", self.radicand)
        } else if (-c.clone()).is_one() {
            format!("-sqrt({})", self.radicand)
        } else {
            format!("{c}*sqrt({})", self.radicand)
        };
        if self.rational.is_zero() {
            f.write_str(&surd)
        } else if let Some(rest) = surd.strip_prefix('-') {
            write!(f, "{} - {rest}", self.rational)
        } else {
            write!(f, "{} + {surd}", self.rational)
        }
    }
}

impl Serialize for RealRoot {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Domain {
    RealLine,
    RealProjLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "at", rename_all = "camelCase")]
pub enum ReducibilityPoint {
    /// `c(r) = k(k+2)` at the real point `r`.
    Finite { r: RealRoot, k: i64 },
    Infinity,
}

/// Real points where the fiber is reducible. `complete` is false when the
/// locus is infinite and only walls with `k <= k_max` were solved for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibilityPoints {
    pub points: Vec<ReducibilityPoint>,
    pub complete: bool,
}

/// Solves `c(r) = k(k+2)` over the real line for every wall `k <= k_max`
/// whose edge lies inside the K-type set, adding infinity on the projective
/// line when the motion fiber is reducible.
pub fn reducibility_points(fam: &ModuleFamily, domain: Domain, k_max: i64) -> Result<ReducibilityPoints, FiberError> {
    if !fam.intertwiner_exists() {
        return Err(FiberError::ComplexCasimir);
    }
    let re = |g: Gr| g.re().clone();
    let [c0, c1, c2] = fam.casimir_coeffs().map(re);
    let ks = fam.ktypes();
    let kmin = if ks.parity() == 0 { 0 } else { -1 };
    let mut points = Vec::new();
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    for k in (kmin..=k_max).step_by(2) {
        let inside = (ks.contains(k) && ks.contains(k + 2)) || (ks.contains(-k - 2) && ks.contains(-k));
        if !inside {
            continue;
        }
        let w = BigRational::from_integer(wall_value(k).into());
        let d0 = &c0 - &w;
        if c2.is_zero() {
            // c constant on a wall inside the set is excluded by validation
            if !c1.is_zero() {
                points.push((RealRoot::rational(-d0 / &c1), k));
            }
            continue;
        }
        let disc = &c1 * &c1 - &four * &c2 * &d0;
        if disc.is_negative() {
            continue;
        }
        let a = -&c1 / (&two * &c2);
        let b = BigRational::one() / (&two * &c2);
        if disc.is_zero() {
            points.push((RealRoot::rational(a), k));
        } else {
            points.push((RealRoot::new(a.clone(), b.clone(), &disc), k));
            points.push((RealRoot::new(a, -b, &disc), k));
        }
    }
    points.sort_by(|x, y| x.0.to_f64().partial_cmp(&y.0.to_f64()).unwrap_or(Ordering::Equal));
    let mut out: Vec<ReducibilityPoint> = points
        .into_iter()
        .map(|(r, k)| ReducibilityPoint::Finite { r, k })
        .collect();
    let more_than_one = match ks.bounds() {
        (Some(a), Some(b)) => a < b,
        _ => true,
    };
    if domain == Domain::RealProjLine && c2.is_zero() && more_than_one {
        out.push(ReducibilityPoint::Infinity);
    }
    let complete = c2.is_negative() && {
        // beyond the maximum of c no wall value is reached
        let top = &c0 - &c1 * &c1 / (&four * &c2);
        BigRational::from_integer(wall_value(k_max).into()) > top
    } || (c2.is_zero() && c1.is_zero());
    Ok(ReducibilityPoints { points: out, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::tilde_family;
    use crate::make_family;
    use crate::Poly;

    fn g(s: &str) -> Gr {
        s.parse().unwrap()
    }

    fn at(r: &str) -> ProjectivePoint {
        r.parse().unwrap()
    }

    fn grp(level: i64, m: i64, r: &str) -> DualParam {
        DualParam::group(Gr::from_int(level), m, g(r)).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = tilde_family(0, Gr::one());
        let fib = evaluate_fiber(&f, &at("1"));
        assert_eq!(fib.up(-2), Some(Gr::zero()));
        let inf = evaluate_fiber(&f, &at("inf"));
        assert_eq!(inf.up(-4), Some(g("1/4")));
        assert_eq!(inf.down(4), Some(g("1/4")));
        let d2 = tilde_family(2, Gr::zero());
        let fib = evaluate_fiber(&d2, &at("5"));
        assert_eq!(fib.up(2), Some(Gr::one()));
        assert_eq!(fib.down(4), Some(g("-2")));
    }

    #[test]
    fn reducibility_examples() {
        let f = tilde_family(0, Gr::one());
        assert!(evaluate_fiber(&f, &at("1")).is_reducible());
        assert!(!evaluate_fiber(&f, &at("2")).is_reducible());
        assert!(!evaluate_fiber(&f, &at("inf")).is_reducible());
    }

    #[test]
    fn factor_examples() {
        let f = tilde_family(0, Gr::one());
        let fib = evaluate_fiber(&f, &at("1"));
        assert_eq!(fib.composition_factors().params(), vec![grp(0, -2, "1"), grp(0, 0, "1"), grp(0, 2, "1")]);
        assert_eq!(factor_containing_m(&fib, 0).unwrap(), grp(0, 0, "1"));
        let odd = make_family(1, Poly::new(vec![Gr::zero(), Gr::zero(), g("-1")]), KTypeSet::AllOdd).unwrap();
        let fib = evaluate_fiber(&odd, &at("1"));
        assert_eq!(fib.composition_factors().params(), vec![grp(-1, -1, "1"), grp(-1, 1, "1")]);
        let inf = evaluate_fiber(&f, &at("inf"));
        assert_eq!(inf.composition_factors().params(), vec![DualParam::motion(Gr::one(), 0).unwrap()]);
        assert_eq!(factor_containing_m(&evaluate_fiber(&f, &at("2")), 0).unwrap(), grp(3, 0, "1/2"));
        let d2 = tilde_family(2, Gr::zero());
        let inf = evaluate_fiber(&d2, &at("inf"));
        assert_eq!(factor_containing_m(&inf, 2).unwrap(), DualParam::motion(Gr::zero(), 2).unwrap());
        assert!(inf.composition_factors().truncated);
        assert_eq!(factor_containing_m(&inf, 1), Err(FiberError::NotAKType { m: 1 }));
    }

    #[test]
    fn jantzen_examples() {
        let f = tilde_family(0, Gr::one());
        assert_eq!(jantzen_quotient_formula(&f, &at("R=1")).unwrap(), grp(0, 0, "1"));
        assert_eq!(
            jantzen_quotient_formula(&f, &at("inf")).unwrap(),
            DualParam::motion(Gr::one(), 0).unwrap()
        );
        let ray = tilde_family(1, Gr::zero());
        assert_eq!(jantzen_quotient_formula(&ray, &at("R=7")).unwrap(), grp(-1, 1, "7"));
        assert!(matches!(jantzen_quotient_formula(&f, &at("i")), Err(FiberError::NotReal { .. })));
        assert_eq!(jantzen_quotient_formula(&f, &at("0")), Err(FiberError::OutsideInfinityChart));
        let off = make_family(0, Poly::new(vec![g("-1"), g("1"), g("1")]), KTypeSet::AllEven).unwrap();
        assert_eq!(jantzen_quotient_formula(&off, &at("1")), Err(FiberError::NotInTildeClass));
    }

    #[test]
    fn reducibility_point_examples() {
        let f = tilde_family(0, Gr::one());
        let pts = reducibility_points(&f, Domain::RealProjLine, 4).unwrap();
        let rs: Vec<String> = pts
            .points
            .iter()
            .map(|p| match p {
                ReducibilityPoint::Finite { r, .. } => r.to_string(),
                ReducibilityPoint::Infinity => "inf".into(),
            })
            .collect();
        assert_eq!(rs, ["-5", "-3", "-1", "1", "3", "5"]);
        assert!(!pts.complete);
        let neg = tilde_family(0, g("-4"));
        let pts = reducibility_points(&neg, Domain::RealProjLine, 4).unwrap();
        assert!(pts.points.is_empty() && pts.complete);
        let d2 = tilde_family(2, Gr::zero());
        let pts = reducibility_points(&d2, Domain::RealProjLine, 10).unwrap();
        assert_eq!(pts.points, vec![ReducibilityPoint::Infinity]);
        assert!(reducibility_points(&tilde_family(0, Gr::i()), Domain::RealLine, 2).is_err());
        // c = 2r^2 - 1 = 0 at r = +-sqrt(1/2)
        let s = reducibility_points(&tilde_family(0, g("2")), Domain::RealLine, 0).unwrap();
        let txt: Vec<String> = s
            .points
            .iter()
            .map(|p| match p {
                ReducibilityPoint::Finite { r, .. } => r.to_string(),
                ReducibilityPoint::Infinity => "inf".into(),
            })
            .collect();
        assert_eq!(txt, ["-1/2*sqrt(2)", "1/2*sqrt(2)"]);
    }
}
