//! Algebraic families of Harish-Chandra modules for `SL(2,R)` over `CP^1`,
//! described by their classification data: minimal K-type `m`, K-type set
//! `I`, and the Casimir function `c(r) = c2 r^2 + c1 r + c0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pbw::BasisKind;
use crate::poly::Chart;
use crate::scalar::{rational_sqrt, GaussianRational};
use crate::Poly;

type Gr = GaussianRational;

/// `n(n+2)`, the Casimir value of the finite-dimensional module with
/// highest weight `n`.
pub fn wall_value(n: i64) -> i64 {
    n * (n + 2)
}

/// The `k >= -1` with `k(k+2) = w`, if any.
pub fn wall_index(w: &Gr) -> Option<i64> {
    let v = w.as_integer()? + 1;
    if v < 0 {
        return None;
    }
    let s = rational_sqrt(&num_rational::BigRational::from_integer(BigInt::from(v)))?;
    Some(s.to_integer().to_i64()? - 1)
}

/// A set of K-types (integers) of one of the shapes that occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum KTypeSet {
    AllEven,
    AllOdd,
    /// `-k, -k+2, ..., k`
    Window { k: i64 },
    /// `start, start+2, ...`
    RayUp { start: i64 },
    /// `start, start-2, ...`
    RayDown { start: i64 },
    Singleton { n: i64 },
}

impl KTypeSet {
    pub fn contains(&self, n: i64) -> bool {
        match *self {
            KTypeSet::AllEven => n.rem_euclid(2) == 0,
            KTypeSet::AllOdd => n.rem_euclid(2) == 1,
            KTypeSet::Window { k } => n.abs() <= k && (n - k).rem_euclid(2) == 0,
            KTypeSet::RayUp { start } => n >= start && (n - start).rem_euclid(2) == 0,
            KTypeSet::RayDown { start } => n <= start && (n - start).rem_euclid(2) == 0,
            KTypeSet::Singleton { n: s } => n == s,
        }
    }

    /// `0` or `1`.
    pub fn parity(&self) -> i64 {
        match *self {
            KTypeSet::AllEven => 0,
            KTypeSet::AllOdd => 1,
            KTypeSet::Window { k } => k.rem_euclid(2),
            KTypeSet::RayUp { start } | KTypeSet::RayDown { start } => start.rem_euclid(2),
            KTypeSet::Singleton { n } => n.rem_euclid(2),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KTypeSet::Window { .. } | KTypeSet::Singleton { .. })
    }

    /// Smallest and largest element; `None` for an unbounded side.
    pub fn bounds(&self) -> (Option<i64>, Option<i64>) {
        match *self {
            KTypeSet::AllEven | KTypeSet::AllOdd => (None, None),
            KTypeSet::Window { k } => (Some(-k), Some(k)),
            KTypeSet::RayUp { start } => (Some(start), None),
            KTypeSet::RayDown { start } => (None, Some(start)),
            KTypeSet::Singleton { n } => (Some(n), Some(n)),
        }
    }

    /// Smallest `|n|` over the set.
    pub fn min_abs(&self) -> i64 {
        match self.bounds() {
            (Some(lo), _) if lo > 0 => lo,
            (_, Some(hi)) if hi < 0 => -hi,
            _ => self.parity(),
        }
    }

    /// Elements inside `[lo, hi]`, ascending.
    pub fn elements_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|n| self.contains(*n)).collect()
    }

    /// Table notation: `2Z`, `2Z+1`, `{-2,...,2}`, `{3,5,...}`, `{...,-5,-3}`, `{2}`.
    pub fn notation(&self) -> String {
        match *self {
            KTypeSet::AllEven => "2Z".into(),
            KTypeSet::AllOdd => "2Z+1".into(),
            KTypeSet::Window { k: 0 } => "{0}".into(),
            KTypeSet::Window { k } => format!("{{{},...,{}}}", -k, k),
            KTypeSet::RayUp { start } => format!("{{{},{},...}}", start, start + 2),
            KTypeSet::RayDown { start } => format!("{{...,{},{}}}", start - 2, start),
            KTypeSet::Singleton { n } => format!("{{{n}}}"),
        }
    }
}

impl fmt::Display for KTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Why `(m, I, c)` is not a row of the classification.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "camelCase")]
pub enum FamilyViolation {
    #[error("the Casimir function must have degree at most 2, got {degree}")]
    CasimirDegree { degree: usize },
    #[error("window bound k={k} must be nonnegative")]
    NegativeWindow { k: i64 },
    #[error("minimal K-type {m} is not in the K-type set {ktypes}")]
    MinimalNotInSet { m: i64, ktypes: String },
    #[error("{m} is not a minimal K-type of {ktypes}")]
    NotMinimal { m: i64, ktypes: String },
    #[error("K-type set {ktypes} is not allowed for minimal K-type {m}")]
    KindNotAllowed { m: i64, ktypes: String },
    #[error("Casimir c(r) = {value} = k(k+2) with k={k} requires a finite window or a ray")]
    WallCasimir { k: i64, value: String },
    #[error("K-type set {ktypes} requires the constant Casimir {expected}, got {got}")]
    CasimirMismatch { ktypes: String, expected: i64, got: String },
}

/// A validated family: minimal K-type, K-types and Casimir function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFamily {
    m: i64,
    ktypes: KTypeSet,
    casimir: Poly,
}

fn casimir_text(c: &Poly) -> String {
    c.render("r")
}

fn require_constant(c: &Poly, ktypes: &KTypeSet, expected: i64) -> Result<(), FamilyViolation> {
    if c.as_constant() == Some(Gr::from_int(expected)) {
        Ok(())
    } else {
        Err(FamilyViolation::CasimirMismatch {
            ktypes: ktypes.notation(),
            expected,
            got: casimir_text(c),
        })
    }
}

/// Whether `c` is identically `k(k+2)` for some `k >= kmin` of the given parity.
fn constant_wall(c: &Poly, parity: i64, kmin: i64) -> Option<i64> {
    wall_index(&c.as_constant()?).filter(|k| *k >= kmin && k.rem_euclid(2) == parity)
}

impl ModuleFamily {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn ktypes(&self) -> &KTypeSet {
        &self.ktypes
    }

    /// `c(r)` over `X0`.
    pub fn casimir(&self) -> &Poly {
        &self.casimir
    }

    /// `[c0, c1, c2]`
    pub fn casimir_coeffs(&self) -> [Gr; 3] {
        [self.casimir.coeff(0), self.casimir.coeff(1), self.casimir.coeff(2)]
    }

    pub fn c0(&self) -> Gr {
        self.casimir.coeff(0)
    }

    pub fn c1(&self) -> Gr {
        self.casimir.coeff(1)
    }

    pub fn c2(&self) -> Gr {
        self.casimir.coeff(2)
    }

    /// The K-type set forced by `(m, c)` when it is not given explicitly.
    pub fn infer_ktypes(m: i64, casimir: &Poly) -> KTypeSet {
        match m {
            0 => match constant_wall(casimir, 0, 0) {
                Some(k) => KTypeSet::Window { k },
                None => KTypeSet::AllEven,
            },
            1 | -1 => match constant_wall(casimir, 1, -1) {
                Some(-1) if m == 1 => KTypeSet::RayUp { start: 1 },
                Some(-1) => KTypeSet::RayDown { start: -1 },
                Some(k) => KTypeSet::Window { k },
                None => KTypeSet::AllOdd,
            },
            d if d > 1 => KTypeSet::RayUp { start: d },
            d => KTypeSet::RayDown { start: d },
        }
    }

    /// `make_family` with the K-type set inferred from `(m, c)`.
    pub fn infer(m: i64, casimir: Poly) -> Result<Self, FamilyViolation> {
        let ktypes = Self::infer_ktypes(m, &casimir);
        Self::new(m, casimir, ktypes)
    }

    /// Validates `(m, c, I)` against the classification table.
    pub fn new(m: i64, casimir: Poly, ktypes: KTypeSet) -> Result<Self, FamilyViolation> {
        if let Some(degree) = casimir.degree().filter(|d| *d > 2) {
            return Err(FamilyViolation::CasimirDegree { degree });
        }
        if let KTypeSet::Window { k } = ktypes {
            if k < 0 {
                return Err(FamilyViolation::NegativeWindow { k });
            }
        }
        let notation = ktypes.notation();
        if !ktypes.contains(m) {
            return Err(FamilyViolation::MinimalNotInSet { m, ktypes: notation });
        }
        if m.abs() != ktypes.min_abs() {
            return Err(FamilyViolation::NotMinimal { m, ktypes: notation });
        }
        let not_allowed = || FamilyViolation::KindNotAllowed {
            m,
            ktypes: ktypes.notation(),
        };
        match (m, &ktypes) {
            (0, KTypeSet::AllEven) | (1 | -1, KTypeSet::AllOdd) => {
                let (parity, kmin) = if m == 0 { (0, 0) } else { (1, -1) };
                if let Some(k) = constant_wall(&casimir, parity, kmin) {
                    return Err(FamilyViolation::WallCasimir {
                        k,
                        value: casimir_text(&casimir),
                    });
                }
            }
            (-1..=1, KTypeSet::Window { k }) => require_constant(&casimir, &ktypes, wall_value(*k))?,
            (1, KTypeSet::RayUp { start: 1 }) | (-1, KTypeSet::RayDown { start: -1 }) => {
                require_constant(&casimir, &ktypes, -1)?
            }
            (d, KTypeSet::RayUp { start }) if d > 1 && *start == d => {
                require_constant(&casimir, &ktypes, d * (d - 2))?
            }
            (d, KTypeSet::RayDown { start }) if d < -1 && *start == d => {
                require_constant(&casimir, &ktypes, d * (d + 2))?
            }
            _ => return Err(not_allowed()),
        }
        Ok(Self { m, ktypes, casimir })
    }

    /// Edge scalar of the ladder between `n` and `n+2` in the given chart:
    /// `(c(r) - n(n+2))/4` over `X0`, `(c2 + c1 R + (c0 - n(n+2)) R^2)/4`
    /// over `Xinf`.
    pub fn edge_coefficient(&self, n: i64, chart: Chart) -> Poly {
        let quarter = Gr::from_ratio(1, 4);
        let shifted = self.casimir.clone() - Poly::constant(Gr::from_int(wall_value(n)));
        let p = match chart {
            Chart::Zero => shifted,
            Chart::Infinity => {
                let [a, b, c] = [shifted.coeff(0), shifted.coeff(1), shifted.coeff(2)];
                Poly::new(vec![c, b, a])
            }
        };
        p.scale(&quarter)
    }

    /// The ladder operators of the family over `chart`.
    pub fn ladder_action(&self, chart: Chart) -> LadderAction<'_> {
        LadderAction { family: self, chart }
    }

    /// Every Casimir coefficient is real, i.e. `c` is real on `RP^1`.
    pub fn intertwiner_exists(&self) -> bool {
        self.casimir.coeffs().iter().all(Gr::is_real)
    }

    /// Solves for a character `psi` of the Cartan subfamily with
    /// `psi(gamma(Omega)) = c`.
    pub fn infinitesimal_character(&self, cartan: BasisKind) -> InfinitesimalCharacter {
        let [c0, c1, c2] = self.casimir_coeffs();
        let shifted = c0 + Gr::one();
        match cartan {
            BasisKind::Compact => {
                if !(c1.is_zero() && c2.is_zero()) {
                    return InfinitesimalCharacter::none(cartan);
                }
                InfinitesimalCharacter::found(cartan, shifted.sqrt(), Some(Gr::zero()))
            }
            BasisKind::Split => {
                if c2.is_zero() {
                    if !c1.is_zero() {
                        return InfinitesimalCharacter::none(cartan);
                    }
                    return InfinitesimalCharacter::found(cartan, shifted.sqrt(), Some(Gr::zero()));
                }
                if c1.clone() * c1.clone() != Gr::from_int(4) * c2.clone() * shifted {
                    return InfinitesimalCharacter::none(cartan);
                }
                let alpha1 = c2.sqrt();
                let alpha0 = alpha1
                    .as_ref()
                    .map(|a| c1.clone() * (Gr::from_int(2) * a.clone()).inv().expect("c2 != 0"));
                InfinitesimalCharacter::found(cartan, alpha0, alpha1)
            }
        }
    }

    /// Membership in the distinguished class of families admitting an
    /// infinitesimal character for the relevant Cartan.
    pub fn in_tilde_class(&self) -> TildeVerdict {
        let mut reasons = Vec::new();
        if self.m.abs() <= 1 {
            let [c0, c1, c2] = self.casimir_coeffs();
            if !c1.is_zero() {
                reasons.push(TildeReason::LinearTerm);
            }
            if c0 != -Gr::one() {
                reasons.push(TildeReason::ConstantTerm);
            }
            match (self.m, c2.is_zero(), &self.ktypes) {
                (0, _, KTypeSet::AllEven) => {}
                (0, _, _) => reasons.push(TildeReason::NeedsAllEven),
                (_, false, KTypeSet::AllOdd) => {}
                (_, false, _) => reasons.push(TildeReason::NeedsAllOdd),
                (1, true, KTypeSet::RayUp { .. }) | (-1, true, KTypeSet::RayDown { .. }) => {}
                (_, true, _) => reasons.push(TildeReason::NeedsRay),
            }
        }
        TildeVerdict {
            member: reasons.is_empty(),
            reasons,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FamilyDescriptor::from(self)).expect("serializable")
    }
}

impl fmt::Display for ModuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} I={} c(r)={}", self.m, self.ktypes, self.casimir.render("r"))
    }
}

/// The validated family for `(m, I, c)`.
pub fn make_family(m: i64, casimir: Poly, ktypes: KTypeSet) -> Result<ModuleFamily, FamilyViolation> {
    ModuleFamily::new(m, casimir, ktypes)
}

/// The distinguished family with minimal K-type `m` and leading Casimir
/// coefficient `c2`: `c = c2 r^2 - 1` for `|m| <= 1` (with the ray when
/// `m = +-1` and `c2 = 0`); for `|m| > 1` the Casimir is forced and `c2` is
/// ignored.
pub fn tilde_family(m: i64, c2: Gr) -> ModuleFamily {
    let casimir = if m.abs() <= 1 {
        Poly::new(vec![-Gr::one(), Gr::zero(), c2])
    } else if m > 1 {
        Poly::constant(Gr::from_int(m * (m - 2)))
    } else {
        Poly::constant(Gr::from_int(m * (m + 2)))
    };
    ModuleFamily::infer(m, casimir).expect("distinguished families are valid")
}

/// JSON form of a family: `{"m": 0, "ktypes": {...}, "casimir": [c0, c1, c2]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub m: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ktypes: Option<KTypeSet>,
    pub casimir: Vec<Gr>,
}

impl From<&ModuleFamily> for FamilyDescriptor {
    fn from(f: &ModuleFamily) -> Self {
        Self {
            m: f.m,
            ktypes: Some(f.ktypes.clone()),
            casimir: f.casimir_coeffs().to_vec(),
        }
    }
}

impl TryFrom<FamilyDescriptor> for ModuleFamily {
    type Error = FamilyViolation;

    fn try_from(d: FamilyDescriptor) -> Result<Self, Self::Error> {
        let casimir = Poly::new(d.casimir);
        match d.ktypes {
            Some(k) => ModuleFamily::new(d.m, casimir, k),
            None => ModuleFamily::infer(d.m, casimir),
        }
    }
}

impl Serialize for ModuleFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FamilyDescriptor::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModuleFamily {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let d = FamilyDescriptor::deserialize(deserializer)?;
        ModuleFamily::try_from(d).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum TildeReason {
    /// `c1 != 0`
    LinearTerm,
    /// `c0 != -1`
    ConstantTerm,
    NeedsAllEven,
    /// `c2 != 0` with `|m| = 1` needs all odd K-types.
    NeedsAllOdd,
    /// `c2 = 0` with `|m| = 1` needs the ray pointing away from zero.
    NeedsRay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildeVerdict {
    pub member: bool,
    pub reasons: Vec<TildeReason>,
}

/// Result of the infinitesimal-character solver. The witness is
/// `psi(h) = alpha1 r + alpha0` (split) or `psi(H) = alpha0` (compact);
/// `exact` is false when a square root leaves `Q(i)`, in which case the
/// character exists over `C` but the affected coefficients are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitesimalCharacter {
    pub cartan: BasisKind,
    pub exists: bool,
    pub exact: bool,
    pub alpha0: Option<Gr>,
    pub alpha1: Option<Gr>,
}

impl InfinitesimalCharacter {
    fn none(cartan: BasisKind) -> Self {
        Self {
            cartan,
            exists: false,
            exact: false,
            alpha0: None,
            alpha1: None,
        }
    }

    fn found(cartan: BasisKind, alpha0: Option<Gr>, alpha1: Option<Gr>) -> Self {
        Self {
            cartan,
            exists: true,
            exact: alpha0.is_some() && alpha1.is_some(),
            alpha0,
            alpha1,
        }
    }
}

/// The action `H f_n = n f_n`, `X f_n = up(n) f_{n+2}`, `Y f_n = down(n) f_{n-2}`
/// on the basis sections of a family over one chart. Along each edge the
/// coefficient pointing away from `m` is `1` and the other carries the
/// edge scalar.
#[derive(Clone, Copy, Debug)]
pub struct LadderAction<'a> {
    family: &'a ModuleFamily,
    chart: Chart,
}

/// One K-type's row of the ladder table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderEntry {
    pub n: i64,
    pub up: Option<Poly>,
    pub down: Option<Poly>,
}

impl LadderAction<'_> {
    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn cartan(&self, n: i64) -> Option<Gr> {
        self.family.ktypes.contains(n).then(|| Gr::from_int(n))
    }

    /// Coefficient of `X f_n` on `f_{n+2}`.
    pub fn up(&self, n: i64) -> Option<Poly> {
        let ks = &self.family.ktypes;
        if !(ks.contains(n) && ks.contains(n + 2)) {
            return None;
        }
        Some(if self.family.m <= n {
            Poly::one()
        } else {
            self.family.edge_coefficient(n, self.chart)
        })
    }

    /// Coefficient of `Y f_n` on `f_{n-2}`.
    pub fn down(&self, n: i64) -> Option<Poly> {
        let ks = &self.family.ktypes;
        if !(ks.contains(n) && ks.contains(n - 2)) {
            return None;
        }
        Some(if self.family.m >= n {
            Poly::one()
        } else {
            self.family.edge_coefficient(n - 2, self.chart)
        })
    }

    /// Rows for the K-types in `[lo, hi]`.
    pub fn table(&self, lo: i64, hi: i64) -> Vec<LadderEntry> {
        self.family
            .ktypes
            .elements_in(lo, hi)
            .into_iter()
            .map(|n| LadderEntry {
                n,
                up: self.up(n),
                down: self.down(n),
            })
            .collect()
    }
}

/// `wall_value` as a scalar.
pub fn wall_scalar(n: i64) -> Gr {
    Gr::from_int(wall_value(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|c| Gr::from_int(*c)).collect())
    }

    #[test]
    fn make_family_examples() {
        assert!(make_family(0, poly(&[-1, 0, 1]), KTypeSet::AllEven).is_ok());
        assert!(make_family(2, poly(&[0]), KTypeSet::RayUp { start: 2 }).is_ok());
        assert!(make_family(0, poly(&[0]), KTypeSet::Window { k: 0 }).is_ok());
        assert_eq!(
            make_family(0, poly(&[8]), KTypeSet::AllEven),
            Err(FamilyViolation::WallCasimir { k: 2, value: "8".into() })
        );
        assert!(matches!(
            make_family(1, poly(&[-1, 0, 1]), KTypeSet::AllEven),
            Err(FamilyViolation::MinimalNotInSet { .. })
        ));
        assert!(matches!(
            make_family(3, poly(&[0]), KTypeSet::RayUp { start: 3 }),
            Err(FamilyViolation::CasimirMismatch { expected: 3, .. })
        ));
        assert!(matches!(
            make_family(1, poly(&[-1]), KTypeSet::AllOdd),
            Err(FamilyViolation::WallCasimir { k: -1, .. })
        ));
        assert!(matches!(
            make_family(0, poly(&[0, 0, 0, 1]), KTypeSet::AllEven),
            Err(FamilyViolation::CasimirDegree { degree: 3 })
        ));
        assert!(matches!(
            make_family(2, poly(&[0]), KTypeSet::AllEven),
            Err(FamilyViolation::NotMinimal { .. })
        ));
    }

    #[test]
    fn inference() {
        assert_eq!(ModuleFamily::infer_ktypes(0, &poly(&[8])), KTypeSet::Window { k: 2 });
        assert_eq!(ModuleFamily::infer_ktypes(-1, &poly(&[-1])), KTypeSet::RayDown { start: -1 });
        assert_eq!(ModuleFamily::infer_ktypes(1, &poly(&[3])), KTypeSet::Window { k: 1 });
        assert_eq!(ModuleFamily::infer_ktypes(1, &poly(&[-1, 0, 2])), KTypeSet::AllOdd);
        assert_eq!(ModuleFamily::infer_ktypes(-3, &poly(&[3])), KTypeSet::RayDown { start: -3 });
    }

    #[test]
    fn tilde_class_examples() {
        assert!(tilde_family(0, Gr::from_int(-4)).in_tilde_class().member);
        let f = ModuleFamily::infer(0, poly(&[-1, 1, 1])).unwrap();
        assert_eq!(f.in_tilde_class().reasons, vec![TildeReason::LinearTerm]);
        let f = make_family(1, poly(&[-1, 0, 1]), KTypeSet::AllOdd).unwrap();
        assert!(f.in_tilde_class().member);
        // c2 = 0 and all odd K-types is not even a valid family; use c = 3r^2 - 1
        // with the wrong shape instead.
        let f = make_family(1, poly(&[3]), KTypeSet::Window { k: 1 }).unwrap();
        let v = f.in_tilde_class();
        assert!(!v.member);
        assert!(v.reasons.contains(&TildeReason::NeedsRay));
        for m in -4..=4 {
            assert!(tilde_family(m, Gr::from_int(3)).in_tilde_class().member, "m={m}");
        }
    }

    #[test]
    fn ladder_examples() {
        let f = tilde_family(0, Gr::one());
        let lad = f.ladder_action(Chart::Zero);
        assert_eq!(lad.up(-2), Some(poly(&[-1, 0, 1]).scale(&Gr::from_ratio(1, 4))));
        assert_eq!(lad.up(0), Some(Poly::one()));
        assert_eq!(lad.down(0), Some(Poly::one()));
        assert_eq!(lad.down(2), Some(poly(&[-1, 0, 1]).scale(&Gr::from_ratio(1, 4))));
        assert_eq!(lad.cartan(4), Some(Gr::from_int(4)));
        let inf = f.ladder_action(Chart::Infinity);
        assert_eq!(inf.up(-2).unwrap().eval(&Gr::zero()), Gr::from_ratio(1, 4));
        let ray = tilde_family(2, Gr::zero());
        assert_eq!(ray.ladder_action(Chart::Zero).down(2), None);
        assert_eq!(ray.ladder_action(Chart::Zero).down(4), Some(poly(&[-2])));
    }

    #[test]
    fn infinitesimal_character_examples() {
        let d3 = tilde_family(3, Gr::zero());
        let ic = d3.infinitesimal_character(BasisKind::Compact);
        assert!(ic.exists && ic.exact);
        assert_eq!(ic.alpha0, Some(Gr::from_int(2)));
        let f = tilde_family(0, Gr::from_int(-4));
        let ic = f.infinitesimal_character(BasisKind::Split);
        assert_eq!((ic.alpha0, ic.alpha1), (Some(Gr::zero()), Some("2i".parse().unwrap())));
        assert!(!f.infinitesimal_character(BasisKind::Compact).exists);
        let f = tilde_family(0, Gr::from_int(2));
        let ic = f.infinitesimal_character(BasisKind::Split);
        assert!(ic.exists && !ic.exact);
    }

    #[test]
    fn intertwiner_examples() {
        assert!(tilde_family(0, Gr::from_int(-4)).intertwiner_exists());
        assert!(!tilde_family(0, Gr::i()).intertwiner_exists());
        assert!(ModuleFamily::infer(1, poly(&[3])).unwrap().intertwiner_exists());
    }

    #[test]
    fn json_descriptor() {
        let f: ModuleFamily = serde_json::from_str(r#"{"m":0,"casimir":[-1,0,1]}"#).unwrap();
        assert_eq!(f, tilde_family(0, Gr::one()));
        let v = f.to_json();
        assert_eq!(v["ktypes"]["kind"], "allEven");
        let back: ModuleFamily = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
        let f: ModuleFamily =
            serde_json::from_str(r#"{"m":1,"casimir":[-1,0,0],"ktypes":{"kind":"rayUp","start":1}}"#).unwrap();
        assert_eq!(f.ktypes(), &KTypeSet::RayUp { start: 1 });
        assert!(serde_json::from_str::<ModuleFamily>(r#"{"m":0,"casimir":[8],"ktypes":{"kind":"allEven"}}"#).is_err());
    }
}
