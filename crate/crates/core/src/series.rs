//! Formal power series in the deformation parameter `z`, truncated at a fixed
//! order.
//!
//! A [`TruncatedSeries`] of order `k` stores exactly `k + 1` coefficients and
//! represents `c0 + c1 z + ... + ck z^k mod z^(k+1)`. The variable `z` is
//! always central. Arithmetic between series of different orders is an
//! error; the checked methods report it and the operator impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{int, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("exp requires a zero constant term")]
    NonzeroConstant,
    #[error("sqrt requires constant term 1")]
    ConstantNotOne,
    #[error("series has no inverse: constant term is not invertible")]
    NotInvertible,
    #[error("series is not divisible by z")]
    NotDivisibleByZ,
    #[error("cannot raise truncation order from {from} to {to}")]
    CannotRaiseOrder { from: usize, to: usize },
    #[error("a series needs at least one coefficient")]
    Empty,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedSeries<C = Rational> {
    coeffs: Vec<C>,
}

pub type Series = TruncatedSeries<Rational>;

impl<C: Scalar> TruncatedSeries<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^power`, which is zero when `power > order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest power of `z` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let k = self.order();
        let mut out = Self::zero(k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// `exp(a) = Σ aⁿ/n!`, computed from `n bₙ = Σ_{j≥1} j aⱼ b_{n-j}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let k = self.order();
        let mut b = Self::one(k);
        for n in 1..=k {
            let mut acc = C::zero();
            for j in 1..=n {
                acc = acc + C::from_int(j as i64) * self.coeffs[j].clone() * b.coeffs[n - j].clone();
            }
            b.coeffs[n] = acc * C::from_rational(&(int(1) / int(n as i64)));
        }
        Ok(b)
    }

    /// The square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if *self.constant_term() != C::one() {
            return Err(SeriesError::ConstantNotOne);
        }
        let k = self.order();
        let half = C::from_rational(&(int(1) / int(2)));
        let mut s = Self::one(k);
        for n in 1..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 1..n {
                acc = acc - s.coeffs[j].clone() * s.coeffs[n - j].clone();
            }
            s.coeffs[n] = acc * half.clone();
        }
        Ok(s)
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        let b0 = self.constant_term().try_inv().ok_or(SeriesError::NotInvertible)?;
        let k = self.order();
        let mut b = Self::constant(b0.clone(), k);
        for n in 1..=k {
            let mut acc = C::zero();
            for j in 1..=n {
                acc = acc + self.coeffs[j].clone() * b.coeffs[n - j].clone();
            }
            b.coeffs[n] = -(b0.clone() * acc);
        }
        Ok(b)
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::CannotRaiseOrder { from: self.order(), to: order });
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Multiplication by `z^power` at the same order.
    pub fn shift(&self, power: usize) -> Self {
        let k = self.order();
        let mut out = Self::zero(k);
        for i in 0..=k {
            if i + power <= k {
                out.coeffs[i + power] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Exact division by `z`. The result is one order lower, since the top
    /// coefficient of the quotient is not determined by the input.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NotDivisibleByZ);
        }
        if self.order() == 0 {
            return Err(SeriesError::Empty);
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Substitutes a value for `z`.
    pub fn evaluate(&self, z: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<C: Scalar> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, o: Self) -> TruncatedSeries<C> {
        self.checked_add(o).expect("series order mismatch")
    }
}

impl<C: Scalar> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, o: Self) -> TruncatedSeries<C> {
        self.checked_sub(o).expect("series order mismatch")
    }
}

impl<C: Scalar> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, o: Self) -> TruncatedSeries<C> {
        self.checked_mul(o).expect("series order mismatch")
    }
}

impl<C: Scalar> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Scalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.trim_start_matches('-').contains(['+', '-', ' ']);
            let body = match (i, compound) {
                (0, _) => text,
                (_, true) => format!("({text})*{}", zpow(i)),
                (_, false) if text == "1" => zpow(i),
                (_, false) if text == "-1" => format!("-{}", zpow(i)),
                (_, false) => format!("{text}*{}", zpow(i)),
            };
            parts.push(body);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, p) in parts.iter().enumerate() {
            if n == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

fn zpow(i: usize) -> String {
    if i == 1 {
        "z".into()
    } else {
        format!("z^{i}")
    }
}
