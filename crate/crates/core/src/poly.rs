//! Dense univariate polynomials and the chart coordinates `r`, `R` of the
//! projective line.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{Field, GaussianRational, Ring};

/// Dense polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(k: usize, c: S) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The coordinate function `x`.
    pub fn x() -> Self {
        Self::monomial(1, S::one())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial, `-inf`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<S> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Divide by `x^k`, if the division is exact.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        (self.valuation()? >= k).then(|| Self::new(self.coeffs[k..].to_vec()))
    }

    /// `x^deg(p) * p(1/x)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `p(x + shift)`
    pub fn translate(&self, shift: &S) -> Self {
        let lin = Self::new(vec![shift.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * lin.clone() + Self::constant(c.clone()))
    }
}

impl<S: Field> Polynomial<S> {
    /// Divide every coefficient by a nonzero constant.
    pub fn div_scalar(&self, c: &S) -> Self {
        let inv = S::one() / c.clone();
        self.scale(&inv)
    }
}

impl<S: Ring> Zero for Polynomial<S> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Ring> One for Polynomial<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Ring> Add for Polynomial<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Ring> Sub for Polynomial<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Ring> Neg for Polynomial<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<S: Ring> Mul for Polynomial<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<S: Ring> Ring for Polynomial<S> {
    fn from_i64(n: i64) -> Self {
        Self::constant(S::from_i64(n))
    }
}

impl crate::scalar::GaussianAlgebra for Polynomial<GaussianRational> {
    fn from_gaussian(c: &GaussianRational) -> Self {
        Self::constant(c.clone())
    }
}

impl<S: Ring + fmt::Debug> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Polynomial<GaussianRational> {
    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coeff = c.to_string();
            let term = if k == 0 {
                coeff
            } else if c.is_one() {
                power
            } else if (-c.clone()).is_one() {
                format!("-{power}")
            } else if c.is_real() {
                format!("{coeff}*{power}")
            } else {
                format!("({coeff})*{power}")
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

/// The two standard charts of `CP^1`: `X0` with coordinate `r` (everything
/// but `infinity`) and `Xinf` with coordinate `R = 1/r` (everything but
/// `r = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    #[serde(rename = "X0")]
    Zero,
    #[serde(rename = "Xinf")]
    Infinity,
}

impl Chart {
    pub fn other(self) -> Self {
        match self {
            Chart::Zero => Chart::Infinity,
            Chart::Infinity => Chart::Zero,
        }
    }

    /// Name of the chart coordinate.
    pub fn variable(self) -> &'static str {
        match self {
            Chart::Zero => "r",
            Chart::Infinity => "R",
        }
    }
}

/// A polynomial in the coordinate of a chart: an element of `C[r]` or `C[R]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoly {
    pub chart: Chart,
    pub poly: Polynomial<GaussianRational>,
}

impl ChartPoly {
    pub fn new(chart: Chart, coeffs: Vec<GaussianRational>) -> Self {
        Self {
            chart,
            poly: Polynomial::new(coeffs),
        }
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        poly_eval(&self.poly, x)
    }

    /// Rewrites `p(r)` as a function of `R = 1/r` (or conversely).
    ///
    /// Returns `(q, k)` with `p(1/R) = R^(-k) q(R)`; `q(0) != 0` unless `p = 0`.
    pub fn chart_substitute(&self) -> (ChartPoly, usize) {
        let (q, k) = chart_substitute(&self.poly);
        (
            ChartPoly {
                chart: self.chart.other(),
                poly: q,
            },
            k,
        )
    }
}

/// `p(x)` for a polynomial over `Q(i)`.
pub fn poly_eval(p: &Polynomial<GaussianRational>, x: &GaussianRational) -> GaussianRational {
    p.eval(x)
}

/// `p(1/x) = x^(-k) q(x)`; returns `(q, k)` with `k = deg p`.
pub fn chart_substitute<S: Ring>(p: &Polynomial<S>) -> (Polynomial<S>, usize) {
    match p.degree() {
        None => (Polynomial::zero(), 0),
        Some(d) => (p.reversed(), d),
    }
}

#[derive(Serialize, Deserialize)]
struct ChartPolyRepr {
    var: String,
    coeffs: Vec<GaussianRational>,
}

impl Serialize for ChartPoly {
    fn serialize<Se: serde::Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        ChartPolyRepr {
            var: self.chart.variable().to_string(),
            coeffs: self.poly.coeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChartPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ChartPolyRepr::deserialize(deserializer)?;
        let chart = match repr.var.as_str() {
            "r" => Chart::Zero,
            "R" => Chart::Infinity,
            v => return Err(serde::de::Error::custom(format!("unknown variable {v:?}"))),
        };
        Ok(ChartPoly::new(chart, repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = Polynomial<GaussianRational>;

    fn p(cs: &[i64]) -> P {
        P::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly_eval(&p(&[-1, 0, 1]), &g(1)), g(0));
        assert_eq!(poly_eval(&P::zero(), &g(5)), g(0));
        // c2 r^2 - 1 at r = 3 by repeated addition: 3*3 - 1.
        let by_addition = (0..3).fold(g(0), |acc, _| acc + g(3)) - g(1);
        assert_eq!(poly_eval(&p(&[-1, 0, 1]), &g(3)), by_addition);
        assert_eq!(by_addition, g(8));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(chart_substitute(&p(&[0, 1])), (p(&[1]), 1));
        // c2 r^2 - 1 -> (c2 - R^2, 2) with c2 = 1
        assert_eq!(chart_substitute(&p(&[-1, 0, 1])), (p(&[1, 0, -1]), 2));
        assert_eq!(chart_substitute(&p(&[7])), (p(&[7]), 0));
        assert_eq!(chart_substitute(&P::zero()), (P::zero(), 0));
        let cp = ChartPoly::new(Chart::Zero, vec![g(-1), g(0), g(3)]);
        let (q, k) = cp.chart_substitute();
        assert_eq!(q.chart, Chart::Infinity);
        assert_eq!(k, 2);
        assert_eq!(q.poly, p(&[3, 0, -1]));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(P::zero().degree(), None);
        assert!(P::zero().degree() < p(&[3]).degree());
        assert_eq!(p(&[0, 0, 2, 0]).degree(), Some(2));
        assert_eq!(p(&[0, 0, 2]).valuation(), Some(2));
    }

    #[test]
    fn generic_scalars_agree() {
        let pr: Polynomial<BigRational> =
            Polynomial::new(vec![rational(1, 2), rational(-3, 1), rational(2, 5)]);
        let pf: Polynomial<f64> = Polynomial::new(vec![0.5, -3.0, 0.4]);
        let exact = pr.eval(&rational(3, 2));
        let approx = pf.eval(&1.5);
        let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        assert!((exact_f - approx).abs() < 1e-12);
    }

    #[test]
    fn render_and_json() {
        assert_eq!(p(&[-1, 0, 4]).render("r"), "4*r^2 - 1");
        let cp = ChartPoly::new(Chart::Infinity, vec![g(1), g(0), g(-1)]);
        let j = serde_json::to_value(&cp).unwrap();
        assert_eq!(j["var"], "R");
        let back: ChartPoly = serde_json::from_value(j).unwrap();
        assert_eq!(back, cp);
    }

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-5i64..=5, -3i64..=3, 1i64..=3), 0..5).prop_map(|cs| {
            P::new(
                cs.into_iter()
                    .map(|(a, b, d)| GaussianRational::new(rational(a, d), rational(b, 1)))
                    .collect(),
            )
        })
    }

    fn small_scalar() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, -6i64..=6, 1i64..=4)
            .prop_map(|(a, b, d)| GaussianRational::new(rational(a, d), rational(b, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b * a);
        }

        #[test]
        fn scalar_ring_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(), x in small_scalar()) {
            prop_assert_eq!((a.clone() * b.clone()).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn substitution_is_an_involution(a in small_poly()) {
            let (q, k1) = chart_substitute(&a);
            let (back, k2) = chart_substitute(&q);
            // p = r^(k1 - k2) * back, the power being the valuation of p.
            let v = a.valuation().unwrap_or(0);
            prop_assert_eq!(k1 - k2, v);
            prop_assert_eq!(back.shift_up(k1 - k2), a.clone());
            if a.valuation() == Some(0) {
                prop_assert_eq!((back, k2), (a.clone(), a.degree().unwrap()));
            }
            if !a.is_zero() {
                prop_assert!(!q.coeff(0).is_zero());
            }
        }

        #[test]
        fn translate_matches_eval(a in small_poly(), s in small_scalar(), x in small_scalar()) {
            prop_assert_eq!(a.translate(&s).eval(&x), a.eval(&(x + s)));
        }
    }
}
