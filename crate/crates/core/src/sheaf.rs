//! Chart-local sections of the enveloping-algebra sheaf of the deformation
//! family over `CP^1`.
//!
//! Over `X0` the fiber generators are the constant `H0, X0, Y0`; over
//! `Xinf` they are `H_inf = H0`, `X_inf = R X0`, `Y_inf = R Y0`, subject to
//! `[X_inf, Y_inf] = R^2 H_inf`. A section is stored as
//! `var^(-pole) * sum q_xi(var) xi`, with `xi` running over PBW monomials in
//! the chart's own generators, so `pole > 0` marks a rational section with a
//! pole at the chart origin.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pbw::{casimir_scaled, change_basis, hc_projection, k_order, BasisKind, Monomial, PbwError, Uea};
use crate::poly::{Chart, ChartPoly};
use crate::scalar::{GaussianRational, ParseScalarError};
use crate::{Poly, UeaElement};

type Gr = GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error("section is not central")]
    NotCentral,
    #[error("[0:0] is not a point of the projective line")]
    ZeroPoint,
    #[error(transparent)]
    Pbw(#[from] PbwError),
}

/// A point `[alpha:beta]` of `CP^1`, kept as `[1:r]` or `[0:1]`.
///
/// The chart coordinates are `r = beta/alpha` and `R = alpha/beta`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    alpha: Gr,
    beta: Gr,
}

impl ProjectivePoint {
    pub fn new(alpha: Gr, beta: Gr) -> Result<Self, SheafError> {
        if alpha.is_zero() {
            if beta.is_zero() {
                return Err(SheafError::ZeroPoint);
            }
            return Ok(Self::infinity());
        }
        let inv = alpha.inv().expect("nonzero");
        Ok(Self::finite(beta * inv))
    }

    pub fn finite(r: Gr) -> Self {
        Self {
            alpha: Gr::one(),
            beta: r,
        }
    }

    /// The point with `R`-coordinate `big_r`.
    pub fn from_big_r(big_r: Gr) -> Self {
        match big_r.inv() {
            Some(r) => Self::finite(r),
            None => Self::infinity(),
        }
    }

    pub fn infinity() -> Self {
        Self {
            alpha: Gr::zero(),
            beta: Gr::one(),
        }
    }

    pub fn homogeneous(&self) -> (&Gr, &Gr) {
        (&self.alpha, &self.beta)
    }

    pub fn is_infinity(&self) -> bool {
        self.alpha.is_zero()
    }

    /// `r`-coordinate; `None` at infinity.
    pub fn r(&self) -> Option<Gr> {
        (!self.is_infinity()).then(|| self.beta.clone())
    }

    /// `R`-coordinate; `None` at `r = 0`.
    pub fn big_r(&self) -> Option<Gr> {
        if self.is_infinity() {
            Some(Gr::zero())
        } else {
            self.beta.inv()
        }
    }

    /// Whether the point lies on `RP^1`.
    pub fn is_real(&self) -> bool {
        self.alpha.is_real() && self.beta.is_real()
    }

    /// The real structure `[alpha:beta] -> [conj alpha : conj beta]`.
    pub fn conj(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: self.beta.conj(),
        }
    }

    /// A chart containing the point, preferring `X0`.
    pub fn chart(&self) -> Chart {
        if self.is_infinity() {
            Chart::Infinity
        } else {
            Chart::Zero
        }
    }

    /// Coordinate in `chart`, if the point lies in it.
    pub fn coordinate(&self, chart: Chart) -> Option<Gr> {
        match chart {
            Chart::Zero => self.r(),
            Chart::Infinity => self.big_r(),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r() {
            Some(r) => write!(f, "{r}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.alpha, self.beta)
    }
}

/// Accepts `inf`, `r=<scalar>`, `R=<scalar>`, `[a:b]` or a bare `r` value.
impl FromStr for ProjectivePoint {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Self::infinity());
        }
        if let Some(v) = t.strip_prefix("R=") {
            return Ok(Self::from_big_r(v.trim().parse()?));
        }
        if let Some(v) = t.strip_prefix("r=") {
            return Ok(Self::finite(v.trim().parse()?));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(|| ParseScalarError(s.into()))?;
            return Self::new(a.trim().parse()?, b.trim().parse()?).map_err(|_| ParseScalarError(s.into()));
        }
        Ok(Self::finite(t.parse()?))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The bracket scale of the chart: `[X, Y] = kappa H`.
pub fn chart_bracket_scale(chart: Chart) -> Poly {
    match chart {
        Chart::Zero => Poly::one(),
        Chart::Infinity => Poly::monomial(2, Gr::one()),
    }
}

/// `var^(-pole) * sum_xi q_xi(var) xi` over one chart.
#[derive(Clone, PartialEq, Eq)]
pub struct FamilySection {
    chart: Chart,
    pole: u32,
    terms: BTreeMap<Monomial, Poly>,
}

impl FamilySection {
    pub fn new(chart: Chart, pole: u32, terms: impl IntoIterator<Item = (Monomial, Poly)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, q) in terms {
            let e = map.entry(m).or_insert_with(Poly::zero);
            *e = e.clone() + q;
        }
        map.retain(|_, q: &mut Poly| !q.is_zero());
        Self { chart, pole, terms: map }.normalized()
    }

    pub fn zero(chart: Chart) -> Self {
        Self::new(chart, 0, [])
    }

    /// `f(var) * 1`.
    pub fn function(chart: Chart, f: Poly) -> Self {
        Self::new(chart, 0, [(Monomial::ONE, f)])
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the section has a pole at the origin of its own chart.
    pub fn is_rational(&self) -> bool {
        self.pole > 0
    }

    fn normalized(mut self) -> Self {
        if self.terms.is_empty() {
            self.pole = 0;
            return self;
        }
        let common = self.terms.values().filter_map(Poly::valuation).min().unwrap_or(0) as u32;
        let k = common.min(self.pole);
        if k > 0 {
            for q in self.terms.values_mut() {
                *q = q.shift_down(k as usize).expect("divisible");
            }
            self.pole -= k;
        }
        self
    }

    fn as_uea(&self) -> Uea<Poly> {
        Uea::from_terms(
            BasisKind::Compact,
            chart_bracket_scale(self.chart),
            self.terms.iter().map(|(m, q)| (*m, q.clone())),
        )
    }

    fn from_uea(chart: Chart, pole: u32, u: &Uea<Poly>) -> Self {
        Self::new(chart, pole, u.terms().iter().map(|(m, q)| (*m, q.clone())))
    }

    /// `1 (x) u` for a constant element of `U(sl2)`.
    pub fn from_constant(u: &UeaElement, chart: Chart) -> Self {
        let u = change_basis(u, BasisKind::Compact).expect("unscaled element");
        match chart {
            Chart::Zero => Self::new(chart, 0, u.terms().iter().map(|(m, c)| (*m, Poly::constant(c.clone())))),
            Chart::Infinity => {
                // xi_0 = R^(-(a+c)) xi_inf
                let pole = k_order(&u).expect("compact").unwrap_or(0);
                Self::new(
                    chart,
                    pole,
                    u.terms()
                        .iter()
                        .map(|(m, c)| (*m, Poly::monomial((pole - m.root_degree()) as usize, c.clone()))),
                )
            }
        }
    }

    /// The same section written over the other chart (or unchanged).
    pub fn to_chart(&self, target: Chart) -> Self {
        if target == self.chart || self.is_zero() {
            return Self {
                chart: target,
                ..self.clone()
            };
        }
        // var^(-p) q(var) xi_(a,b,c)  ->  new^(p - deg q - (a+c)) rev(q)(new) xi'_(a,b,c)
        let p = i64::from(self.pole);
        let shifts: Vec<(Monomial, i64, Poly)> = self
            .terms
            .iter()
            .map(|(m, q)| {
                let d = q.degree().expect("nonzero") as i64;
                (*m, p - d - i64::from(m.root_degree()), q.reversed())
            })
            .collect();
        let new_pole = shifts.iter().map(|(_, e, _)| -e).max().unwrap_or(0).max(0);
        Self::new(
            target,
            new_pole as u32,
            shifts
                .into_iter()
                .map(|(m, e, q)| (m, q.shift_up((e + new_pole) as usize))),
        )
    }

    pub fn to_infinity_chart(&self) -> Self {
        self.to_chart(Chart::Infinity)
    }

    pub fn to_zero_chart(&self) -> Self {
        self.to_chart(Chart::Zero)
    }

    /// No pole at `p`, judged in a chart containing `p`.
    pub fn is_regular_at(&self, p: &ProjectivePoint) -> bool {
        let chart = if p.coordinate(self.chart).is_some() { self.chart } else { self.chart.other() };
        let s = self.to_chart(chart);
        let x = p.coordinate(chart).expect("point lies in chart");
        !x.is_zero() || s.pole == 0
    }

    /// Regularity over `Xinf` by the divisibility test: writing the section
    /// as `sum f(R) xi_0` with constant monomials, each `f` must be divisible
    /// by `R^o(xi_0)`.
    pub fn is_regular_by_order(&self) -> bool {
        let s = self.to_infinity_chart();
        s.terms.iter().all(|(m, q)| {
            let xi = UeaElement::monomial(BasisKind::Compact, *m, Gr::one());
            let order = i64::from(k_order(&xi).expect("compact").unwrap_or(0));
            // f(R) = R^(-pole) q(R) R^(a+c)
            let val = q.valuation().expect("nonzero") as i64 + i64::from(m.root_degree()) - i64::from(s.pole);
            val >= order
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.to_chart(self.chart);
        let p = self.pole.max(other.pole);
        let lift = |s: &Self| -> Vec<(Monomial, Poly)> {
            s.terms.iter().map(|(m, q)| (*m, q.shift_up((p - s.pole) as usize))).collect()
        };
        Self::new(self.chart, p, lift(self).into_iter().chain(lift(&other)))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.chart, self.pole, self.terms.iter().map(|(m, q)| (*m, -q.clone())))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies by a function of the chart coordinate.
    pub fn mul_function(&self, f: &Poly) -> Self {
        Self::new(self.chart, self.pole, self.terms.iter().map(|(m, q)| (*m, q.clone() * f.clone())))
    }

    /// Product in `U` over the chart of `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        let other = other.to_chart(self.chart);
        let prod = &self.as_uea() * &other.as_uea();
        Self::from_uea(self.chart, self.pole + other.pole, &prod)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::function(self.chart, Poly::one()), |acc, _| acc.multiply(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other).sub(&other.multiply(self))
    }

    /// Commutes with the three generators of the chart.
    pub fn is_central(&self) -> bool {
        [Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)]
            .into_iter()
            .all(|m| self.commutator(&Self::new(self.chart, 0, [(m, Poly::one())])).is_zero())
    }

    /// Whether the section is a polynomial in the chart coordinate and the
    /// chart's regular Casimir (`Omega0` over `X0`, `R^2 Omega0` over `Xinf`).
    /// Rational sections are never members.
    pub fn center_membership(&self) -> bool {
        if self.pole > 0 {
            return false;
        }
        let omega = casimir_scaled(BasisKind::Compact, chart_bracket_scale(self.chart));
        let mut rest = self.as_uea();
        while let Some(d) = rest.degree() {
            if d % 2 == 1 {
                return false;
            }
            let k = d / 2;
            let f = rest.coeff(Monomial::new(k, 0, k));
            let g = f.div_scalar(&Gr::from_int(4).pow(k));
            rest = &rest - &omega.pow(k).scale(&g);
            if rest.terms().keys().any(|m| m.degree() >= d) {
                return false;
            }
        }
        true
    }

    /// Coefficients of the section against the constant monomials
    /// `Y0^a H0^b X0^c`, as `var^(-pole) * sum q xi_0`.
    fn constant_monomials(&self) -> Uea<Poly> {
        match self.chart {
            Chart::Zero => self.as_uea(),
            Chart::Infinity => Uea::from_terms(
                BasisKind::Compact,
                Poly::one(),
                self.terms.iter().map(|(m, q)| (*m, q.shift_up(m.root_degree() as usize))),
            ),
        }
    }

    /// The generalized Harish-Chandra homomorphism applied coefficient-wise.
    pub fn gamma_family(&self, cartan: BasisKind) -> Result<CartanSection, SheafError> {
        if !self.is_central() {
            return Err(SheafError::NotCentral);
        }
        let proj = hc_projection(&self.constant_monomials(), cartan)?;
        Ok(CartanSection::new(
            self.chart,
            cartan,
            self.pole,
            proj.terms().iter().map(|(m, q)| (m.cartan, q.clone())),
        ))
    }

    /// Evaluates at a point of the chart other than a pole, giving an
    /// element of the fiber in the chart's generators.
    pub fn value_at(&self, x: &Gr) -> Option<UeaElement> {
        let scale = if self.pole == 0 { Gr::one() } else { x.inv()?.pow(self.pole) };
        Some(Uea::from_terms(
            BasisKind::Compact,
            chart_bracket_scale(self.chart).eval(x),
            self.terms.iter().map(|(m, q)| (*m, q.eval(x) * scale.clone())),
        ))
    }

    pub fn render(&self) -> String {
        let var = self.chart.variable();
        let names = match self.chart {
            Chart::Zero => ["Y0", "H0", "X0"],
            Chart::Infinity => ["Yinf", "Hinf", "Xinf"],
        };
        if self.is_zero() {
            return "0".into();
        }
        let mut monos: Vec<(&Monomial, &Poly)> = self.terms.iter().collect();
        monos.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.as_array().cmp(&a.as_array())));
        let body: Vec<String> = monos
            .into_iter()
            .map(|(m, q)| {
                let factors: Vec<String> = m
                    .as_array()
                    .iter()
                    .zip(names)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                    .collect();
                let coeff = q.render(var);
                if factors.is_empty() {
                    format!("({coeff})")
                } else if q.is_one() {
                    factors.join("*")
                } else {
                    format!("({coeff})*{}", factors.join("*"))
                }
            })
            .collect();
        let body = body.join(" + ");
        if self.pole > 0 {
            format!("{var}^-{}*[{body}]", self.pole)
        } else {
            body
        }
    }
}

impl fmt::Debug for FamilySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilySection({:?}, {})", self.chart, self.render())
    }
}

/// `Omega0 = H0^2 + 2 H0 + 4 Y0 X0` over `X0`.
pub fn omega_zero() -> FamilySection {
    FamilySection::from_constant(&crate::pbw::casimir(BasisKind::Compact), Chart::Zero)
}

/// `Omega_inf = R^2 Omega0 = R^2 (H_inf^2 + 2 H_inf) + 4 Y_inf X_inf` over `Xinf`.
pub fn omega_infinity() -> FamilySection {
    omega_zero().to_infinity_chart().mul_function(&Poly::monomial(2, Gr::one()))
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mono: [u32; 3],
    coeff: ChartPoly,
}

#[derive(Serialize, Deserialize)]
struct SectionRepr {
    chart: Chart,
    terms: Vec<TermRepr>,
    #[serde(default)]
    rational: bool,
    #[serde(default)]
    pole: u32,
}

impl Serialize for FamilySection {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SectionRepr {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(m, q)| TermRepr {
                    mono: m.as_array(),
                    coeff: ChartPoly {
                        chart: self.chart,
                        poly: q.clone(),
                    },
                })
                .collect(),
            rational: self.is_rational(),
            pole: self.pole,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FamilySection {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SectionRepr::deserialize(deserializer)?;
        if let Some(t) = repr.terms.iter().find(|t| t.coeff.chart != repr.chart) {
            return Err(serde::de::Error::custom(format!(
                "coefficient in {} on chart {:?}",
                t.coeff.chart.variable(),
                repr.chart
            )));
        }
        Ok(FamilySection::new(
            repr.chart,
            repr.pole,
            repr.terms
                .into_iter()
                .map(|t| (Monomial::new(t.mono[0], t.mono[1], t.mono[2]), t.coeff.poly)),
        ))
    }
}

/// `var^(-pole) * sum_j q_j(var) h^j`, a section of `U` of a Cartan
/// subfamily. `h` is the constant generator `H0` (compact) or `Hs0` (split);
/// the split subfamily is `O(-1)`, so over `Xinf` its regular generator is
/// `R Hs0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanSection {
    pub chart: Chart,
    pub cartan: BasisKind,
    pub pole: u32,
    pub coeffs: BTreeMap<u32, Poly>,
}

impl CartanSection {
    pub fn new(chart: Chart, cartan: BasisKind, pole: u32, coeffs: impl IntoIterator<Item = (u32, Poly)>) -> Self {
        Self {
            chart,
            cartan,
            pole,
            coeffs: coeffs.into_iter().filter(|(_, q)| !q.is_zero()).collect(),
        }
    }

    fn weight(&self) -> i64 {
        match (self.chart, self.cartan) {
            (Chart::Infinity, BasisKind::Split) => 1,
            _ => 0,
        }
    }

    /// Regular at the origin of its chart.
    pub fn is_regular(&self) -> bool {
        let w = self.weight();
        self.coeffs.iter().all(|(j, q)| {
            let v = q.valuation().expect("nonzero") as i64;
            v - i64::from(self.pole) >= w * i64::from(*j)
        })
    }

    pub fn render(&self) -> String {
        let var = self.chart.variable();
        let h = match self.cartan {
            BasisKind::Compact => "H",
            BasisKind::Split => "Hs",
        };
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(j, q)| {
                let hp = match j {
                    0 => String::new(),
                    1 => h.to_string(),
                    _ => format!("{h}^{j}"),
                };
                match (j, q.is_one()) {
                    (0, _) => format!("({})", q.render(var)),
                    (_, true) => hp,
                    _ => format!("({})*{hp}", q.render(var)),
                }
            })
            .collect();
        let body = parts.join(" + ");
        if self.pole > 0 {
            format!("{var}^-{}*[{body}]", self.pole)
        } else {
            body
        }
    }
}
