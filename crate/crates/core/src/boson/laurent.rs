use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

/// Laurent polynomials in α with rational coefficients. Used as the
/// coefficient ring while the deformed representation still carries
/// negative powers of α.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn monomial(c: Rational, power: i32) -> Self {
        let mut p = LaurentPoly::default();
        if !c.is_zero() {
            p.terms.insert(power, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.terms
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, power: i32, c: Rational) {
        let e = self.terms.entry(power).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&power);
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}*α^{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for LaurentPoly {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (p, c) in o.terms {
            self.add_term(p, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for LaurentPoly {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for LaurentPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = LaurentPoly::default();
        for (p, c) in &self.terms {
            for (q, d) in &o.terms {
                out.add_term(p + q, c * d);
            }
        }
        out
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::monomial(Rational::one(), 0)
    }
}

impl Scalar for LaurentPoly {
    fn from_rational(q: &Rational) -> Self {
        LaurentPoly::monomial(q.clone(), 0)
    }

    /// Only monomials are units.
    fn try_inv(&self) -> Option<Self> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [(p, c)] => Some(LaurentPoly::monomial(c.recip(), -**p)),
            _ => None,
        }
    }
}
