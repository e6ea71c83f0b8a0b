//! Exact scalar types shared by every layer of the engine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// A commutative ring containing the rationals.
///
/// Everything the engine computes lives over some `Scalar`: plain rationals,
/// complex rationals for eigenvalue problems, and Laurent polynomials in the
/// Fock–Bargmann variable while building the deformed representation.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse, when one exists in the ring.
    fn try_inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q`, `p`, or `-p/q`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("invalid fraction `{s}`"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("invalid fraction `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(num, den))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

/// Serde helpers that write a rational as the string `p/q`.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// `[numerator, denominator]` as JSON integers when they fit in 64 bits,
/// decimal strings otherwise.
pub fn fraction_pair(q: &Rational) -> serde_json::Value {
    let part = |n: &BigInt| match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    };
    serde_json::Value::Array(vec![part(q.numer()), part(q.denom())])
}

/// Gaussian rationals `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ComplexRational {
    #[serde(with = "rational_string")]
    pub re: Rational,
    #[serde(with = "rational_string")]
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational { re, im: Rational::zero() }
    }

    /// Parses `a`, `a/b`, `a+bi`, `a/b-c/di`, `i`, `-2i` and similar.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty complex number".into());
        }
        if !s.ends_with('i') {
            return Ok(Self::real(parse_rational(&s)?));
        }
        let body = &s[..s.len() - 1];
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other.trim_start_matches('+'),
        };
        Ok(ComplexRational::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for ComplexRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for ComplexRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        ComplexRational::new(re, im)
    }
}

impl Neg for ComplexRational {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexRational::new(-self.re, -self.im)
    }
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Scalar for ComplexRational {
    fn from_rational(q: &Rational) -> Self {
        Self::real(q.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(ComplexRational::new(&self.re / &norm, -(&self.im / &norm)))
    }
}
