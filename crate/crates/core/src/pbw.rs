//! PBW normal forms in the enveloping algebra of `sl(2)`.
//!
//! Elements are stored as linear combinations of ordered monomials
//! `lowering^a cartan^b raising^c` in one of two bases: the compact triple
//! `(Y, H, X)` with `H` spanning `k`, and the split triple `(Ys, Hs, Xs)`
//! with `Hs` spanning the diagonal Cartan. Both satisfy
//!
//! ```text
//! [H, X] = 2X,   [H, Y] = -2Y,   [X, Y] = kappa * H
//! ```
//!
//! where the bracket scale `kappa` is `1` for `sl(2)` itself. Sections over
//! the chart at infinity are handled by the same code with coefficients in
//! `C[R]` and `kappa = R^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::{GaussianAlgebra, GaussianRational, Ring};

type Gr = GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Compact,
    Split,
}

impl BasisKind {
    pub fn basis(self) -> &'static Sl2Basis {
        match self {
            BasisKind::Compact => Sl2Basis::compact(),
            BasisKind::Split => Sl2Basis::split(),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Compact => "compact",
            BasisKind::Split => "split",
        })
    }
}

/// Eigenvalue of the Cartan involution on a basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaParity {
    /// `+1`, the vector lies in `k`.
    K,
    /// `-1`, the vector lies in `p`.
    P,
    /// Not an eigenvector.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Lowering,
    Cartan,
    Raising,
}

/// An ordered `sl(2)` triple `(lowering, cartan, raising)`.
#[derive(Clone, Debug)]
pub struct Sl2Basis {
    pub kind: BasisKind,
    pub names: [&'static str; 3],
    pub parity: [ThetaParity; 3],
    /// Row `i` holds the coordinates of vector `i` in the compact basis `(Y, H, X)`.
    pub to_compact: [[Gr; 3]; 3],
    /// Inverse of `to_compact`.
    pub from_compact: [[Gr; 3]; 3],
}

fn g(s: &str) -> Gr {
    s.parse().expect("literal")
}

/// Bracket of two vectors given in compact coordinates `(y, h, x)`.
pub fn compact_bracket(u: &[Gr; 3], v: &[Gr; 3]) -> [Gr; 3] {
    let [y1, h1, x1] = u.clone();
    let [y2, h2, x2] = v.clone();
    let two = Gr::from_int(2);
    [
        two.clone() * (y1.clone() * h2.clone() - h1.clone() * y2.clone()),
        x1.clone() * y2 - y1 * x2.clone(),
        two * (h1 * x2 - x1 * h2),
    ]
}

fn invert3(m: &[[Gr; 3]; 3]) -> Option<[[Gr; 3]; 3]> {
    let c = |i: usize, j: usize| {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        m[i1][j1].clone() * m[i2][j2].clone() - m[i1][j2].clone() * m[i2][j1].clone()
    };
    let det = (0..3).fold(Gr::zero(), |acc, j| acc + m[0][j].clone() * c(0, j));
    let inv = det.inv()?;
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| c(j, i) * inv.clone())
    }))
}

fn row_times(row: &[Gr; 3], m: &[[Gr; 3]; 3]) -> [Gr; 3] {
    std::array::from_fn(|j| {
        (0..3).fold(Gr::zero(), |acc, k| acc + row[k].clone() * m[k][j].clone())
    })
}

impl Sl2Basis {
    fn build(
        kind: BasisKind,
        names: [&'static str; 3],
        parity: [ThetaParity; 3],
        to_compact: [[Gr; 3]; 3],
    ) -> Self {
        let from_compact = invert3(&to_compact).expect("change of basis must be invertible");
        let [lo, ca, ra] = to_compact.clone();
        let scale = |s: i64, v: &[Gr; 3]| -> [Gr; 3] {
            std::array::from_fn(|i| Gr::from_int(s) * v[i].clone())
        };
        assert_eq!(compact_bracket(&ca, &ra), scale(2, &ra), "[cartan, raising]");
        assert_eq!(compact_bracket(&ca, &lo), scale(-2, &lo), "[cartan, lowering]");
        assert_eq!(compact_bracket(&ra, &lo), ca, "[raising, lowering]");
        Self {
            kind,
            names,
            parity,
            to_compact,
            from_compact,
        }
    }

    /// `(Y, H, X)`, with `H` spanning `k` and `X, Y` spanning `p`.
    pub fn compact() -> &'static Self {
        static B: OnceLock<Sl2Basis> = OnceLock::new();
        B.get_or_init(|| {
            let (o, z) = (Gr::one(), Gr::zero());
            Self::build(
                BasisKind::Compact,
                ["Y", "H", "X"],
                [ThetaParity::P, ThetaParity::K, ThetaParity::P],
                [
                    [o.clone(), z.clone(), z.clone()],
                    [z.clone(), o.clone(), z.clone()],
                    [z.clone(), z, o],
                ],
            )
        })
    }

    /// `(Ys, Hs, Xs)`: the diagonal Cartan and the strictly lower/upper
    /// triangular root vectors, written in the compact basis as
    /// `Hs = X + Y`, `Xs = i/2 (H - X + Y)`, `Ys = -i/2 (H + X - Y)`.
    pub fn split() -> &'static Self {
        static B: OnceLock<Sl2Basis> = OnceLock::new();
        B.get_or_init(|| {
            Self::build(
                BasisKind::Split,
                ["Ys", "Hs", "Xs"],
                [ThetaParity::Mixed, ThetaParity::P, ThetaParity::Mixed],
                [
                    [g("1/2i"), g("-1/2i"), g("-1/2i")],
                    [g("1"), g("0"), g("1")],
                    [g("1/2i"), g("1/2i"), g("-1/2i")],
                ],
            )
        })
    }

    /// Coordinates of this basis' `i`-th vector in `target`'s basis.
    pub fn image_in(&self, target: &Sl2Basis, i: usize) -> [Gr; 3] {
        row_times(&self.to_compact[i], &target.from_compact)
    }
}

/// Exponents of `lowering^a cartan^b raising^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub lowering: u32,
    pub cartan: u32,
    pub raising: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial::new(0, 0, 0);

    pub const fn new(lowering: u32, cartan: u32, raising: u32) -> Self {
        Self {
            lowering,
            cartan,
            raising,
        }
    }

    pub fn degree(&self) -> u32 {
        self.lowering + self.cartan + self.raising
    }

    /// Total exponent on the root vectors.
    pub fn root_degree(&self) -> u32 {
        self.lowering + self.raising
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.lowering, self.cartan, self.raising]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: BasisKind, right: BasisKind },
    #[error("elements belong to algebras with different bracket scales")]
    BracketScaleMismatch,
    #[error("change of basis is only defined for the unscaled algebra")]
    ScaledChangeOfBasis,
}

/// An element of `U(sl2)` (or of its rescaled version) in PBW normal form.
#[derive(Clone, PartialEq)]
pub struct Uea<S> {
    basis: BasisKind,
    bracket_scale: S,
    terms: BTreeMap<Monomial, S>,
}

fn add_term<S: Ring>(terms: &mut BTreeMap<Monomial, S>, mono: Monomial, c: S) {
    if c.is_zero() {
        return;
    }
    let sum = match terms.remove(&mono) {
        Some(old) => old + c,
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(mono, sum);
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * i64::from(n - j) / i64::from(j + 1))
}

impl<S: Ring> Uea<S> {
    pub fn zero(basis: BasisKind) -> Self {
        Self::zero_scaled(basis, S::one())
    }

    pub fn zero_scaled(basis: BasisKind, bracket_scale: S) -> Self {
        Self {
            basis,
            bracket_scale,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: BasisKind) -> Self {
        Self::scalar(basis, S::one())
    }

    pub fn scalar(basis: BasisKind, c: S) -> Self {
        Self::monomial(basis, Monomial::ONE, c)
    }

    pub fn monomial(basis: BasisKind, mono: Monomial, c: S) -> Self {
        let mut out = Self::zero(basis);
        add_term(&mut out.terms, mono, c);
        out
    }

    pub fn generator(basis: BasisKind, which: Generator) -> Self {
        let mono = match which {
            Generator::Lowering => Monomial::new(1, 0, 0),
            Generator::Cartan => Monomial::new(0, 1, 0),
            Generator::Raising => Monomial::new(0, 0, 1),
        };
        Self::monomial(basis, mono, S::one())
    }

    pub fn lowering(basis: BasisKind) -> Self {
        Self::generator(basis, Generator::Lowering)
    }

    pub fn cartan(basis: BasisKind) -> Self {
        Self::generator(basis, Generator::Cartan)
    }

    pub fn raising(basis: BasisKind) -> Self {
        Self::generator(basis, Generator::Raising)
    }

    pub fn from_terms(
        basis: BasisKind,
        bracket_scale: S,
        terms: impl IntoIterator<Item = (Monomial, S)>,
    ) -> Self {
        let mut out = Self::zero_scaled(basis, bracket_scale);
        for (m, c) in terms {
            add_term(&mut out.terms, m, c);
        }
        out
    }

    /// The same linear combination, read in the algebra with `[X, Y] = kappa H`.
    pub fn with_bracket_scale(mut self, kappa: S) -> Self {
        self.bracket_scale = kappa;
        self
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn bracket_scale(&self) -> &S {
        &self.bracket_scale
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn coeff(&self, mono: Monomial) -> S {
        self.terms.get(&mono).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total PBW degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero_scaled(self.basis, self.bracket_scale.clone());
        for (m, a) in &self.terms {
            add_term(&mut out.terms, *m, a.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &S) -> S) -> Self {
        Self::from_terms(
            self.basis,
            self.bracket_scale.clone(),
            self.terms.iter().map(|(m, c)| (*m, f(m, c))),
        )
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PbwError> {
        if self.basis != other.basis {
            return Err(PbwError::BasisMismatch {
                left: self.basis,
                right: other.basis,
            });
        }
        if self.bracket_scale != other.bracket_scale {
            return Err(PbwError::BracketScaleMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PbwError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, *m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PbwError> {
        self.try_add(&other.scale(&-S::one()))
    }

    fn left_lowering(&self, terms: &BTreeMap<Monomial, S>) -> BTreeMap<Monomial, S> {
        terms
            .iter()
            .map(|(m, c)| (Monomial::new(m.lowering + 1, m.cartan, m.raising), c.clone()))
            .collect()
    }

    // H Y^a = Y^a (H - 2a)
    fn left_cartan(&self, terms: &BTreeMap<Monomial, S>) -> BTreeMap<Monomial, S> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            add_term(&mut out, Monomial::new(m.lowering, m.cartan + 1, m.raising), c.clone());
            if m.lowering > 0 {
                let shift = S::from_i64(-2 * i64::from(m.lowering));
                add_term(&mut out, *m, c.clone() * shift);
            }
        }
        out
    }

    // X Y^a = Y^a X + kappa Y^(a-1) (a H - a(a-1)),  X H^b = (H - 2)^b X
    fn left_raising(&self, terms: &BTreeMap<Monomial, S>) -> BTreeMap<Monomial, S> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            let (a, b, r) = (m.lowering, m.cartan, m.raising);
            for j in 0..=b {
                let k = binomial(b, j) * (-2i64).pow(b - j);
                add_term(&mut out, Monomial::new(a, j, r + 1), c.clone() * S::from_i64(k));
            }
            if a > 0 {
                let ai = i64::from(a);
                let kc = c.clone() * self.bracket_scale.clone();
                add_term(&mut out, Monomial::new(a - 1, b + 1, r), kc.clone() * S::from_i64(ai));
                if a > 1 {
                    add_term(&mut out, Monomial::new(a - 1, b, r), kc * S::from_i64(-ai * (ai - 1)));
                }
            }
        }
        out
    }

    /// `monomial * rhs` in normal form.
    fn monomial_times(&self, m: &Monomial, rhs: &BTreeMap<Monomial, S>) -> BTreeMap<Monomial, S> {
        let mut acc = rhs.clone();
        for _ in 0..m.raising {
            acc = self.left_raising(&acc);
        }
        for _ in 0..m.cartan {
            acc = self.left_cartan(&acc);
        }
        for _ in 0..m.lowering {
            acc = self.left_lowering(&acc);
        }
        acc
    }

    /// PBW normal form of `self * rhs`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PbwError> {
        self.check_compatible(rhs)?;
        let mut out = Self::zero_scaled(self.basis, self.bracket_scale.clone());
        for (m, c) in &self.terms {
            for (mm, cc) in self.monomial_times(m, &rhs.terms) {
                add_term(&mut out.terms, mm, c.clone() * cc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::scalar(self.basis, S::one()).with_bracket_scale(self.bracket_scale.clone());
        for _ in 0..n {
            acc = acc.try_mul(self).expect("same algebra");
        }
        acc
    }

    /// `self * rhs - rhs * self`
    pub fn commutator(&self, rhs: &Self) -> Result<Self, PbwError> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    /// Whether the element commutes with the three generators.
    pub fn is_central(&self) -> bool {
        [Generator::Lowering, Generator::Cartan, Generator::Raising]
            .into_iter()
            .all(|w| {
                let gen = Self::generator(self.basis, w).with_bracket_scale(self.bracket_scale.clone());
                self.commutator(&gen).map(|c| c.is_zero()).unwrap_or(false)
            })
    }
}

/// `u * v` in PBW normal form.
pub fn pbw_multiply<S: Ring>(u: &Uea<S>, v: &Uea<S>) -> Result<Uea<S>, PbwError> {
    u.try_mul(v)
}

impl<S: Ring> std::ops::Add for &Uea<S> {
    type Output = Uea<S>;
    /// Panics if the operands live in different algebras.
    fn add(self, rhs: Self) -> Uea<S> {
        self.try_add(rhs).expect("incompatible enveloping algebra elements")
    }
}

impl<S: Ring> std::ops::Sub for &Uea<S> {
    type Output = Uea<S>;
    fn sub(self, rhs: Self) -> Uea<S> {
        self.try_sub(rhs).expect("incompatible enveloping algebra elements")
    }
}

impl<S: Ring> std::ops::Mul for &Uea<S> {
    type Output = Uea<S>;
    fn mul(self, rhs: Self) -> Uea<S> {
        self.try_mul(rhs).expect("incompatible enveloping algebra elements")
    }
}

/// `kappa (cartan^2 + 2 cartan) + 4 lowering raising`; the Casimir of the
/// algebra with `[X, Y] = kappa H`.
pub fn casimir_scaled<S: Ring>(basis: BasisKind, kappa: S) -> Uea<S> {
    Uea::from_terms(
        basis,
        kappa.clone(),
        [
            (Monomial::new(0, 2, 0), kappa.clone()),
            (Monomial::new(0, 1, 0), kappa * S::from_i64(2)),
            (Monomial::new(1, 0, 1), S::from_i64(4)),
        ],
    )
}

/// `H^2 + 2H + 4YX` in the generators of `basis`.
pub fn casimir<S: Ring>(basis: BasisKind) -> Uea<S> {
    casimir_scaled(basis, S::one())
}

/// Re-expresses `u` in the `target` basis (an algebra isomorphism).
pub fn change_basis<S: GaussianAlgebra>(u: &Uea<S>, target: BasisKind) -> Result<Uea<S>, PbwError> {
    if u.basis == target {
        return Ok(u.clone());
    }
    if !u.bracket_scale.is_one() {
        return Err(PbwError::ScaledChangeOfBasis);
    }
    let (src, dst) = (u.basis.basis(), target.basis());
    let images: Vec<Uea<S>> = (0..3)
        .map(|i| {
            let coords = src.image_in(dst, i);
            Uea::from_terms(
                target,
                S::one(),
                [
                    (Monomial::new(1, 0, 0), S::from_gaussian(&coords[0])),
                    (Monomial::new(0, 1, 0), S::from_gaussian(&coords[1])),
                    (Monomial::new(0, 0, 1), S::from_gaussian(&coords[2])),
                ],
            )
        })
        .collect();
    let mut powers: Vec<Vec<Uea<S>>> = images.iter().map(|g| vec![Uea::one(target), g.clone()]).collect();
    let mut power = |i: usize, n: u32| -> Uea<S> {
        while powers[i].len() <= n as usize {
            let next = powers[i].last().unwrap() * &images[i];
            powers[i].push(next);
        }
        powers[i][n as usize].clone()
    };
    let mut out = Uea::zero(target);
    for (m, c) in &u.terms {
        let prod = &(&power(0, m.lowering) * &power(1, m.cartan)) * &power(2, m.raising);
        out = &out + &prod.scale(c);
    }
    Ok(out)
}

/// Order with respect to the filtration `U_n(g) U(k)`: the largest total
/// exponent on `p`-generators in the compact basis. `None` means `-inf`.
pub fn k_order<S: GaussianAlgebra>(u: &Uea<S>) -> Result<Option<u32>, PbwError> {
    let compact = change_basis(u, BasisKind::Compact)?;
    Ok(compact.terms.keys().map(Monomial::root_degree).max())
}

/// The rho-shifted Harish-Chandra projection onto `U(h)` for the compact
/// (`h = CH`) or split (`h = CHs`) Cartan: discard monomials involving root
/// vectors, then substitute `h -> h - 1`.
pub fn hc_projection<S: GaussianAlgebra>(u: &Uea<S>, cartan: BasisKind) -> Result<Uea<S>, PbwError> {
    let v = change_basis(u, cartan)?;
    let p = Polynomial::new(
        (0..=v.degree().unwrap_or(0))
            .map(|b| v.coeff(Monomial::new(0, b, 0)))
            .collect(),
    );
    let shifted = p.translate(&-S::one());
    Ok(Uea::from_terms(
        cartan,
        S::one(),
        shifted
            .coeffs()
            .iter()
            .enumerate()
            .map(|(b, c)| (Monomial::new(0, b as u32, 0), c.clone())),
    ))
}

impl Uea<Gr> {
    /// Sorted textual form, e.g. `4*Y*X + H^2 + 2*H`: higher total degree
    /// first, ties broken by descending exponent triple.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = self.basis.basis().names;
        let mut monos: Vec<(&Monomial, &Gr)> = self.terms.iter().collect();
        monos.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| b.as_array().cmp(&a.as_array()))
        });
        let mut out = String::new();
        for (k, (m, c)) in monos.into_iter().enumerate() {
            let factors: Vec<String> = m
                .as_array()
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect();
            let negative = c.is_real() && c.re() < &num_rational::BigRational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let coeff = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                String::new()
            } else if mag.is_real() {
                format!("{mag}*")
            } else {
                format!("({mag})*")
            };
            let body = format!("{coeff}{}", factors.join("*"));
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": self.basis,
            "terms": self.terms.iter().map(|(m, c)| serde_json::json!({
                "mono": m.as_array(),
                "coeff": c,
            })).collect::<Vec<_>>(),
        })
    }
}

impl<S: Ring> fmt::Debug for Uea<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Uea")
            .field("basis", &self.basis)
            .field("terms", &self.terms)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UeaElement;

    fn gr(n: i64) -> Gr {
        Gr::from_int(n)
    }

    fn mono(a: u32, b: u32, c: u32, k: i64) -> (Monomial, Gr) {
        (Monomial::new(a, b, c), gr(k))
    }

    fn elem(basis: BasisKind, terms: &[(Monomial, Gr)]) -> UeaElement {
        Uea::from_terms(basis, Gr::one(), terms.iter().cloned())
    }

    use BasisKind::{Compact, Split};

    #[test]
    fn bracket_relations() {
        let x = UeaElement::raising(Compact);
        let y = UeaElement::lowering(Compact);
        let h = UeaElement::cartan(Compact);
        assert_eq!(&x * &y, elem(Compact, &[mono(1, 0, 1, 1), mono(0, 1, 0, 1)]));
        assert_eq!(&x * &h, elem(Compact, &[mono(0, 1, 1, 1), mono(0, 0, 1, -2)]));
        assert_eq!(h.commutator(&y).unwrap(), y.scale(&gr(-2)));
    }

    #[test]
    fn casimir_terms_and_centrality() {
        for basis in [Compact, Split] {
            let om: UeaElement = casimir(basis);
            assert_eq!(om, elem(basis, &[mono(0, 2, 0, 1), mono(0, 1, 0, 2), mono(1, 0, 1, 4)]));
            assert!(om.is_central());
        }
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let a = UeaElement::cartan(Compact);
        let b = UeaElement::cartan(Split);
        assert_eq!(
            pbw_multiply(&a, &b),
            Err(PbwError::BasisMismatch { left: Compact, right: Split })
        );
    }

    #[test]
    fn change_basis_examples() {
        let om_c: UeaElement = casimir(Compact);
        let om_s: UeaElement = casimir(Split);
        assert_eq!(change_basis(&om_c, Split).unwrap(), om_s);
        assert_eq!(change_basis(&om_s, Compact).unwrap(), om_c);
        let h = UeaElement::cartan(Compact);
        let there = change_basis(&h, Split).unwrap();
        assert_eq!(change_basis(&there, Compact).unwrap(), h);
        assert_eq!(change_basis(&UeaElement::one(Compact), Split).unwrap(), UeaElement::one(Split));
        // Hs = X + Y
        let hs = change_basis(&UeaElement::cartan(Split), Compact).unwrap();
        assert_eq!(hs, elem(Compact, &[mono(1, 0, 0, 1), mono(0, 0, 1, 1)]));
    }

    #[test]
    fn k_order_examples() {
        let om: UeaElement = casimir(Compact);
        assert_eq!(k_order(&om).unwrap(), Some(2));
        assert_eq!(k_order(&UeaElement::cartan(Compact).pow(5)).unwrap(), Some(0));
        assert_eq!(k_order(&om.pow(3)).unwrap(), Some(6));
        assert_eq!(k_order(&UeaElement::zero(Compact)).unwrap(), None);
        // Hs lies in p
        assert_eq!(k_order(&UeaElement::cartan(Split)).unwrap(), Some(1));
    }

    #[test]
    fn hc_projection_examples() {
        let om: UeaElement = casimir(Compact);
        assert_eq!(
            hc_projection(&om, Compact).unwrap(),
            elem(Compact, &[mono(0, 2, 0, 1), mono(0, 0, 0, -1)])
        );
        assert_eq!(
            hc_projection(&om, Split).unwrap(),
            elem(Split, &[mono(0, 2, 0, 1), mono(0, 0, 0, -1)])
        );
        let g1 = hc_projection(&om, Compact).unwrap();
        assert_eq!(hc_projection(&om.pow(2), Compact).unwrap(), g1.pow(2));
    }

    #[test]
    fn render_golden() {
        let om: UeaElement = casimir(Compact);
        assert_eq!(om.render(), "4*Y*X + H^2 + 2*H");
        assert_eq!(casimir::<Gr>(Split).render(), "4*Ys*Xs + Hs^2 + 2*Hs");
        assert_eq!(hc_projection(&om, Compact).unwrap().render(), "H^2 - 1");
        let xs = change_basis(&UeaElement::raising(Split), Compact).unwrap();
        assert_eq!(xs.render(), "(1/2i)*Y + (1/2i)*H + (-1/2i)*X");
        assert_eq!(UeaElement::zero(Compact).render(), "0");
    }

    #[test]
    fn json_term_map() {
        let v = casimir::<Gr>(Compact).to_json();
        assert_eq!(v["basis"], "compact");
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    }
}
