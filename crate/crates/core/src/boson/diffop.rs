use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::BosonError;
use crate::scalar::{Rational, Scalar};
use crate::series::TruncatedSeries;

/// `n(n−1)…(n−l+1)`
pub fn falling(n: i64, l: u32) -> i64 {
    (0..l as i64).map(|i| n - i).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// A differential operator `Σ c_{jl}(z) α^j ∂^l` in canonical form, with
/// every `∂ = d/dα` to the right of every `α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOperator<C: Scalar = Rational> {
    order: usize,
    terms: BTreeMap<(u32, u32), TruncatedSeries<C>>,
}

impl<C: Scalar> DiffOperator<C> {
    pub fn zero(order: usize) -> Self {
        DiffOperator { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 0, TruncatedSeries::one(order))
    }

    /// Multiplication by α.
    pub fn alpha(order: usize) -> Self {
        Self::monomial(1, 0, TruncatedSeries::one(order))
    }

    /// `d/dα`
    pub fn d(order: usize) -> Self {
        Self::monomial(0, 1, TruncatedSeries::one(order))
    }

    pub fn monomial(alpha: u32, d: u32, c: TruncatedSeries<C>) -> Self {
        let mut op = Self::zero(c.order());
        op.add_term(alpha, d, c);
        op
    }

    pub fn scalar(c: C, order: usize) -> Self {
        Self::monomial(0, 0, TruncatedSeries::constant(c, order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), TruncatedSeries<C>> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: u32, d: u32) -> TruncatedSeries<C> {
        self.terms.get(&(alpha, d)).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: u32, d: u32, c: TruncatedSeries<C>) {
        assert_eq!(c.order(), self.order, "truncation order mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(alpha, d)) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&(alpha, d));
                }
            }
            None => {
                self.terms.insert((alpha, d), c);
            }
        }
    }

    pub fn scale(&self, c: &TruncatedSeries<C>) -> Self {
        let mut out = Self::zero(self.order);
        for (&(a, b), d) in &self.terms {
            out.add_term(a, b, d * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &C) -> Self {
        self.scale(&TruncatedSeries::constant(c.clone(), self.order))
    }

    /// The product `self ∘ other` in canonical form, using
    /// `∂^b α^c = Σᵢ C(b,i) c(c−1)…(c−i+1) α^{c−i} ∂^{b−i}`.
    pub fn compose(&self, other: &Self) -> Result<Self, BosonError> {
        if self.order != other.order {
            return Err(BosonError::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zero(self.order);
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &other.terms {
                let prod = c1 * c2;
                for i in 0..=b.min(c) {
                    let n = binomial(b, i) * falling(c as i64, i);
                    let coef = prod.scale(&C::from_int(n));
                    out.add_term(a + c - i, b + d - i, coef);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, BosonError> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    pub fn truncate(&self, order: usize) -> Result<Self, BosonError> {
        let mut out = Self::zero(order);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.truncate(order).map_err(|e| BosonError::Series(e.to_string()))?);
        }
        Ok(out)
    }

    /// Substitutes a value for `z`, giving an operator at order 0.
    pub fn at_z(&self, z: &C) -> Self {
        let mut out = Self::zero(0);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, TruncatedSeries::constant(c.evaluate(z), 0));
        }
        out
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> DiffOperator<D> {
        let mut out = DiffOperator::zero(self.order);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.map(&f));
        }
        out
    }

    /// `self(αⁿ)` as a map from α-power to coefficient.
    pub fn apply_to_monomial(&self, n: u32) -> BTreeMap<u32, TruncatedSeries<C>> {
        let mut out: BTreeMap<u32, TruncatedSeries<C>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if b > n {
                continue;
            }
            let v = c.scale(&C::from_int(falling(n as i64, b)));
            let slot = out.entry(a + n - b).or_insert_with(|| TruncatedSeries::zero(self.order));
            *slot = &*slot + &v;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Canonical text such as `(1 + z)*α^2 ∂^2 + z*α ∂`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&(a, b), c) in &self.terms {
            let mut body = Vec::new();
            match a {
                0 => {}
                1 => body.push("α".to_string()),
                _ => body.push(format!("α^{a}")),
            }
            match b {
                0 => {}
                1 => body.push("∂".to_string()),
                _ => body.push(format!("∂^{b}")),
            }
            let coef = c.to_string();
            let term = if body.is_empty() {
                coef
            } else {
                let body = body.join(" ");
                let compound = coef.trim_start_matches('-').contains([' ', '+']) || coef.contains('i');
                match coef.as_str() {
                    "1" => body,
                    "-1" => format!("-{body}"),
                    _ if compound => format!("({coef})*{body}"),
                    _ => format!("{coef}*{body}"),
                }
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

impl<C: Scalar> Add for &DiffOperator<C> {
    type Output = DiffOperator<C>;
    fn add(self, o: &DiffOperator<C>) -> DiffOperator<C> {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &DiffOperator<C> {
    type Output = DiffOperator<C>;
    fn sub(self, o: &DiffOperator<C>) -> DiffOperator<C> {
        self + &-o
    }
}

impl<C: Scalar> Neg for &DiffOperator<C> {
    type Output = DiffOperator<C>;
    fn neg(self) -> DiffOperator<C> {
        let mut out = DiffOperator::zero(self.order);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = DiffOperator<Rational>;

    #[test]
    fn boson_commutator() {
        let a = Op::alpha(0);
        let d = Op::d(0);
        assert_eq!(d.compose(&a).unwrap().render(), "1 + α ∂");
        assert_eq!(d.commutator(&a).unwrap(), Op::one(0));
        assert_eq!(a.compose(&a).unwrap().render(), "α^2");
    }

    #[test]
    fn number_operator_squared() {
        let n = Op::alpha(0).compose(&Op::d(0)).unwrap();
        assert_eq!(n.compose(&n).unwrap().render(), "α ∂ + α^2 ∂^2");
        let out = n.compose(&n).unwrap().apply_to_monomial(5);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&5].constant_term(), &crate::scalar::int(25));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(matches!(Op::alpha(0).compose(&Op::d(1)), Err(BosonError::OrderMismatch(0, 1))));
    }
}
