use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::boson::falling;
use crate::scalar::{int, Rational};

/// `x^x t^t T^shift ∂x^dx ∂t^dt`; the derived ordering is the canonical one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub t: u32,
    pub shift: i32,
    pub dx: u32,
    pub dt: u32,
}

impl Monomial {
    pub fn new(x: u32, t: u32, shift: i32, dx: u32, dt: u32) -> Self {
        Monomial { x, t, shift, dx, dt }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::default()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut letter = |name: &str, p: i64| match p {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{p}")),
        };
        letter("x", self.x as i64);
        letter("t", self.t as i64);
        letter("T", self.shift as i64);
        letter("∂x", self.dx as i64);
        letter("∂t", self.dt as i64);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An element of the algebra generated by `x, t, ∂x, ∂t, T, T⁻¹` with
/// `[∂x,x] = [∂t,t] = 1`, `T t = (t+4z) T` and all other pairs commuting,
/// stored in canonical form. `T` stands for the exact shift `t → t+4z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchrodingerOperator {
    z: Rational,
    terms: BTreeMap<Monomial, Rational>,
}

impl SchrodingerOperator {
    pub fn zero(z: &Rational) -> Self {
        SchrodingerOperator { z: z.clone(), terms: BTreeMap::new() }
    }

    pub fn one(z: &Rational) -> Self {
        Self::scalar(z, Rational::one())
    }

    pub fn scalar(z: &Rational, c: Rational) -> Self {
        Self::monomial(z, Monomial::default(), c)
    }

    pub fn monomial(z: &Rational, m: Monomial, c: Rational) -> Self {
        let mut op = Self::zero(z);
        op.add_term(m, c);
        op
    }

    pub fn x(z: &Rational) -> Self {
        Self::monomial(z, Monomial::new(1, 0, 0, 0, 0), Rational::one())
    }

    pub fn t(z: &Rational) -> Self {
        Self::monomial(z, Monomial::new(0, 1, 0, 0, 0), Rational::one())
    }

    pub fn dx(z: &Rational) -> Self {
        Self::monomial(z, Monomial::new(0, 0, 0, 1, 0), Rational::one())
    }

    pub fn dt(z: &Rational) -> Self {
        Self::monomial(z, Monomial::new(0, 0, 0, 0, 1), Rational::one())
    }

    /// `T^n` for any integer `n`.
    pub fn shift(z: &Rational, n: i32) -> Self {
        Self::monomial(z, Monomial::new(0, 0, n, 0, 0), Rational::one())
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.z);
        for (m, d) in &self.terms {
            out.add_term(*m, d * c);
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `self²`
    pub fn square(&self) -> Self {
        self * self
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial, c: &Rational, out: &mut Self) {
        let step = &self.z * int(4 * a.shift as i64);
        for i in 0..=a.dx.min(b.x) {
            let cx = int(binomial(a.dx as u64, i as u64) as i64 * falling(b.x as i64, i));
            for j in 0..=a.dt.min(b.t) {
                let ct = int(binomial(a.dt as u64, j as u64) as i64 * falling(b.t as i64, j));
                let n = b.t - j;
                // T^a t^n = (t + 4z·a)^n T^a
                for l in 0..=n {
                    let spread = int(binomial(n as u64, l as u64) as i64) * pow(&step, n - l);
                    let m = Monomial::new(
                        a.x + b.x - i,
                        a.t + l,
                        a.shift + b.shift,
                        a.dx - i + b.dx,
                        a.dt - j + b.dt,
                    );
                    out.add_term(m, c * &cx * &ct * spread);
                }
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            let term = if m.is_one() {
                c.to_string()
            } else if c.is_one() {
                m.to_string()
            } else if *c == -Rational::one() {
                format!("-{m}")
            } else {
                format!("{c}*{m}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn pow(q: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * q)
}

impl fmt::Display for SchrodingerOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Mul for &SchrodingerOperator {
    type Output = SchrodingerOperator;
    /// Panics if the two operators carry different `z`.
    fn mul(self, o: &SchrodingerOperator) -> SchrodingerOperator {
        assert_eq!(self.z, o.z, "operators built for different z");
        let mut out = SchrodingerOperator::zero(&self.z);
        for (a, c1) in &self.terms {
            for (b, c2) in &o.terms {
                self.mul_monomials(a, b, &(c1 * c2), &mut out);
            }
        }
        out
    }
}

impl Add for &SchrodingerOperator {
    type Output = SchrodingerOperator;
    fn add(self, o: &SchrodingerOperator) -> SchrodingerOperator {
        assert_eq!(self.z, o.z, "operators built for different z");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SchrodingerOperator {
    type Output = SchrodingerOperator;
    fn sub(self, o: &SchrodingerOperator) -> SchrodingerOperator {
        self + &-o
    }
}

impl Neg for &SchrodingerOperator {
    type Output = SchrodingerOperator;
    fn neg(self) -> SchrodingerOperator {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn basic_relations() {
        let z = frac(1, 10);
        let t = SchrodingerOperator::t(&z);
        let tt = SchrodingerOperator::shift(&z, 1);
        let ti = SchrodingerOperator::shift(&z, -1);
        assert_eq!((&tt * &t).render(), "2/5*T + t T");
        assert_eq!((&ti * &t).render(), "-2/5*T^-1 + t T^-1");
        assert_eq!(&tt * &ti, SchrodingerOperator::one(&z));
        assert_eq!(SchrodingerOperator::dx(&z).commutator(&SchrodingerOperator::x(&z)), SchrodingerOperator::one(&z));
        assert_eq!(SchrodingerOperator::dt(&z).commutator(&t), SchrodingerOperator::one(&z));
        assert!(SchrodingerOperator::dt(&z).commutator(&tt).is_zero());
    }

    #[test]
    fn shift_of_square() {
        // T t² = (t+4z)² T
        let z = frac(1, 4);
        let t = SchrodingerOperator::t(&z);
        let lhs = &SchrodingerOperator::shift(&z, 1) * &t.square();
        assert_eq!(lhs.render(), "T + 2*t T + t^2 T");
    }
}
