use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Rational;
use crate::series::Series;

/// A monomial in the generators, stored as generator indices. Normal-ordered
/// words are non-decreasing.
pub type Word = Vec<u8>;

pub fn is_normal_word(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// A linear combination of PBW words with series coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCElement {
    order: usize,
    terms: BTreeMap<Word, Series>,
}

impl NCElement {
    pub fn zero(order: usize) -> Self {
        NCElement { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::word(Vec::new(), order)
    }

    pub fn word(w: Word, order: usize) -> Self {
        Self::term(w, Series::one(order))
    }

    pub fn generator(g: u8, order: usize) -> Self {
        Self::word(vec![g], order)
    }

    pub fn scalar(c: Series) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(w: Word, c: Series) -> Self {
        let mut e = Self::zero(c.order());
        e.add_term(w, c);
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Word, Series> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u8]) -> Series {
        self.terms.get(w).cloned().unwrap_or_else(|| Series::zero(self.order))
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_normal_word(w))
    }

    pub fn add_term(&mut self, w: Word, c: Series) {
        debug_assert_eq!(c.order(), self.order);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    /// `self += coef · other`
    pub fn add_scaled(&mut self, other: &NCElement, coef: &Series) {
        for (w, c) in &other.terms {
            let p = c * coef;
            if !p.is_zero() {
                self.add_term(w.clone(), p);
            }
        }
    }

    pub fn scale(&self, coef: &Series) -> Self {
        let mut out = Self::zero(self.order);
        out.add_scaled(self, coef);
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Series::constant(q.clone(), self.order))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.truncate(order).expect("cannot raise order"));
        }
        out
    }
}

impl Add for &NCElement {
    type Output = NCElement;
    fn add(self, o: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCElement {
    type Output = NCElement;
    fn sub(self, o: &NCElement) -> NCElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        NCElement { order: self.order, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

/// An element of the tensor square or cube: each key holds one word per leg.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    rank: usize,
    order: usize,
    terms: BTreeMap<Vec<Word>, Series>,
}

impl TensorElement {
    pub fn zero(rank: usize, order: usize) -> Self {
        TensorElement { rank, order, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, order: usize) -> Self {
        let mut t = Self::zero(rank, order);
        t.add_term(vec![Vec::new(); rank], Series::one(order));
        t
    }

    /// `a ⊗ b (⊗ c)`
    pub fn product_of(legs: &[&NCElement]) -> Self {
        let order = legs[0].order();
        let mut partial: Vec<(Vec<Word>, Series)> = vec![(Vec::new(), Series::one(order))];
        for leg in legs {
            let mut next = Vec::with_capacity(partial.len() * leg.len());
            for (ws, c) in &partial {
                for (w, d) in leg.terms() {
                    let p = c * d;
                    if p.is_zero() {
                        continue;
                    }
                    let mut key = ws.clone();
                    key.push(w.clone());
                    next.push((key, p));
                }
            }
            partial = next;
        }
        let mut t = Self::zero(legs.len(), order);
        for (k, c) in partial {
            t.add_term(k, c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Series> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: Series) {
        debug_assert_eq!(key.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, coef: &Series) -> Self {
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * coef);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Series::constant(q.clone(), self.order))
    }

    /// Reorders legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }

    /// The flip `σ(a ⊗ b) = b ⊗ a`.
    pub fn flip(&self) -> Self {
        assert_eq!(self.rank, 2);
        self.permute_legs(&[1, 0])
    }

    /// Places the legs of `self` at `positions` of a rank-`rank` tensor with
    /// the unit in every other slot, e.g. `R ↦ R₁₃` is `embed(3, &[0, 2])`.
    pub fn embed(&self, rank: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.rank);
        let mut out = Self::zero(rank, self.order);
        for (k, c) in &self.terms {
            let mut key = vec![Vec::new(); rank];
            for (leg, &p) in positions.iter().enumerate() {
                key[p] = k[leg].clone();
            }
            out.add_term(key, c.clone());
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.rank, order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.truncate(order).expect("cannot raise order"));
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, o: &TensorElement) -> TensorElement {
        assert_eq!(self.rank, o.rank);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, o: &TensorElement) -> TensorElement {
        assert_eq!(self.rank, o.rank);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-&Series::one(self.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn cancelling_terms_are_pruned() {
        let a = NCElement::generator(1, 2);
        assert!((&a - &a).is_zero());
        let t = TensorElement::product_of(&[&a, &NCElement::one(2)]);
        assert!((&t - &t).is_zero());
    }

    #[test]
    fn embed_and_flip() {
        let a = NCElement::generator(0, 1);
        let b = NCElement::generator(1, 1);
        let t = TensorElement::product_of(&[&a, &b]);
        let f = t.flip();
        assert_eq!(f, TensorElement::product_of(&[&b, &a]));
        let e = t.embed(3, &[0, 2]);
        assert_eq!(e, TensorElement::product_of(&[&a, &NCElement::one(1), &b]));
        let s = t.scale_rational(&int(3));
        assert_eq!(s.terms().values().next().unwrap(), &Series::constant(int(3), 1));
    }
}
