//! Scalar rings used throughout the crate.
//!
//! Everything the library computes lives over the Gaussian rationals
//! `Q(i)`. The polynomial and enveloping-algebra layers are written against
//! the small [`Ring`] / [`Field`] traits below so they can also be driven by
//! plain rationals, floats, or polynomial rings (the latter is how sections
//! over a chart are multiplied).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A commutative ring with unit, exact enough for structural equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

/// Rings containing a copy of `Q(i)`; needed wherever the split Cartan
/// enters, since the change of basis has imaginary entries.
pub trait GaussianAlgebra: Ring {
    fn from_gaussian(c: &GaussianRational) -> Self;
}

impl Ring for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}
impl Field for f64 {}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}
impl Field for BigRational {}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Smallest integer `b >= 0` with `b*b >= |q|`.
pub fn sqrt_ceil_abs(q: &BigRational) -> i64 {
    let a = q.abs().ceil().to_integer();
    let mut s = a.sqrt();
    if &s * &s < a {
        s += 1;
    }
    i64::try_from(s).unwrap_or(i64::MAX / 4)
}

/// `re + im*i` with `re, im` rational.
///
/// `BigRational` keeps itself reduced with a positive denominator, so the
/// derived equality is structural equality of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_i64(n))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(rational(numer, denom))
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The rational value when the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.re)
    }

    /// The integer value when this is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        let re = self.as_real()?;
        if re.is_integer() {
            i64::try_from(re.to_integer()).ok()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// A square root inside `Q(i)`, if one exists.
    ///
    /// The returned root is normalized to have positive real part, or zero
    /// real part and nonnegative imaginary part.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // (u + vi)^2 = a + bi  <=>  u^2 - v^2 = a, 2uv = b, u^2 + v^2 = |x|.
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_i64(2);
        let u = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if u.is_zero() {
            let v = rational_sqrt(&(-self.re.clone()))?;
            return Some(Self::new(u, v));
        }
        let v = &self.im / (&two * &u);
        Some(Self::new(u, v))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

/// The optional `Q(i)` square root used by the infinitesimal-character
/// solvers.
pub fn has_gaussian_sqrt(x: &GaussianRational) -> Option<GaussianRational> {
    x.sqrt()
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(f: &mut fmt::Formatter<'_>, im: &BigRational) -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im.clone()).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{im}i")
            }
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        imag(f, &self.im)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as a Gaussian rational")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let body = s.strip_suffix('i')?;
    match body.trim() {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        b => parse_rational(b.strip_prefix('+').unwrap_or(b)),
    }
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Accepts `p`, `p/q`, `bi`, `p/q+r/si`, `-i`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.ends_with('i') {
            return parse_rational(&t).map(Self::from_rational).ok_or_else(err);
        }
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = parse_rational(&t[..k]).ok_or_else(err)?;
                let im = parse_imag(&t[k..]).ok_or_else(err)?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(
                BigRational::zero(),
                parse_imag(&t).ok_or_else(err)?,
            )),
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Ring for GaussianRational {
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
}
impl Field for GaussianRational {}

impl GaussianAlgebra for GaussianRational {
    fn from_gaussian(c: &GaussianRational) -> Self {
        c.clone()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

// JSON: {"re": "p/q", "im": "p/q"}. Deserialization also takes a bare
// integer or a compact string such as "1/2-3i".
impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Text(String),
    Parts { re: String, im: String },
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Int(n) => Ok(Self::from_int(n)),
            ScalarRepr::Text(s) => s.parse().map_err(de::Error::custom),
            ScalarRepr::Parts { re, im } => {
                let re = parse_rational(&re)
                    .ok_or_else(|| de::Error::custom(format!("bad rational {re:?}")))?;
                let im = parse_rational(&im)
                    .ok_or_else(|| de::Error::custom(format!("bad rational {im:?}")))?;
                Ok(Self::new(re, im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    /// Brute-force search for p/q + (r/q) i squaring to `x`, with |p|,|r| <= bound*q.
    fn search_sqrt(x: &GaussianRational, max_den: i64, bound: i64) -> Option<GaussianRational> {
        for q in 1..=max_den {
            for p in -bound * q..=bound * q {
                for r in -bound * q..=bound * q {
                    let c = GaussianRational::new(rational(p, q), rational(r, q));
                    if &(c.clone() * c.clone()) == x {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(g("4").sqrt(), Some(g("2")));
        assert_eq!(g("-4").sqrt(), Some(g("2i")));
        assert_eq!(g("2").sqrt(), None);
        assert_eq!(search_sqrt(&g("2"), 12, 3), None);
        assert_eq!(g("2i").sqrt(), Some(g("1+i")));
        assert_eq!(g("-3+4i").sqrt(), Some(g("1+2i")));
        assert_eq!(g("9/4").sqrt(), Some(g("3/2")));
    }

    #[test]
    fn sqrt_agrees_with_search() {
        for s in ["3+4i", "-5/4", "1/2", "-2i", "7", "-8+6i", "5/9"] {
            let x = g(s);
            let found = search_sqrt(&x, 3, 3);
            match x.sqrt() {
                Some(r) => {
                    assert_eq!(r.clone() * r, x);
                    assert!(found.is_some(), "{s}");
                }
                None => assert!(found.is_none(), "{s}"),
            }
        }
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "3/2", "-i", "i", "2i", "1+i", "1/2-3/4i", "-7"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("+3i"), g("3i"));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn json_encoding() {
        let x = g("-1/2+3i");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"re":"-1/2","im":"3"}"#);
        let back: GaussianRational = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        let n: GaussianRational = serde_json::from_str("-4").unwrap();
        assert_eq!(n, g("-4"));
        let t: GaussianRational = serde_json::from_str("\"2/6\"").unwrap();
        assert_eq!(t, g("1/3"));
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(a.clone() * b.clone(), g("5+5i"));
        assert_eq!((a.clone() / b.clone()) * b, a);
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(g("i").pow(2), g("-1"));
    }
}
