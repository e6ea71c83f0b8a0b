//! Hand-coded tables of the two built-in deformed algebras.
//!
//! Right-hand sides are written directly in PBW normal form; the unordered
//! forms they came from are noted beside each entry and re-derived by the
//! engine in the tests below.

use std::collections::BTreeMap;

use num_traits::One;

use super::element::{NCElement, TensorElement};
use super::spec::AlgebraSpec;
use super::AlgebraError;
use crate::scalar::{frac, int, Rational};
use crate::series::Series;

pub const H6: &str = "h6-twophoton";
pub const SCHRODINGER: &str = "schrodinger11";

pub const H6_GENERATORS: [&str; 6] = ["B+", "N", "M", "A+", "A-", "B-"];
pub const SCH_GENERATORS: [&str; 6] = ["H", "D", "M", "P", "K", "C"];

pub mod h6 {
    pub const BP: u8 = 0;
    pub const N: u8 = 1;
    pub const M: u8 = 2;
    pub const AP: u8 = 3;
    pub const AM: u8 = 4;
    pub const BM: u8 = 5;
}

pub mod sch {
    pub const H: u8 = 0;
    pub const D: u8 = 1;
    pub const M: u8 = 2;
    pub const P: u8 = 3;
    pub const K: u8 = 4;
    pub const C: u8 = 5;
}

/// Small constructors for table entries at a fixed order.
struct Builder {
    k: usize,
}

impl Builder {
    fn zs(&self, c: Rational, power: usize) -> Series {
        Series::monomial(c, power, self.k)
    }

    fn w(&self, word: &[u8]) -> NCElement {
        NCElement::word(word.to_vec(), self.k)
    }

    fn c(&self, c: i64, power: usize, word: &[u8]) -> NCElement {
        NCElement::term(word.to_vec(), self.zs(int(c), power))
    }

    fn cq(&self, c: Rational, power: usize, word: &[u8]) -> NCElement {
        NCElement::term(word.to_vec(), self.zs(c, power))
    }

    fn one(&self) -> NCElement {
        NCElement::one(self.k)
    }

    fn zero(&self) -> NCElement {
        NCElement::zero(self.k)
    }

    /// `e^{c z g} = Σ (c z)ⁿ/n! gⁿ`
    fn exp(&self, g: u8, c: i64) -> NCElement {
        self.exp_from(g, c, 0)
    }

    /// `e^{c z g} − 1`
    fn expm1(&self, g: u8, c: i64) -> NCElement {
        self.exp_from(g, c, 1)
    }

    fn exp_from(&self, g: u8, c: i64, start: usize) -> NCElement {
        let mut out = self.zero();
        let mut coef = Rational::one();
        for n in 0..=self.k {
            if n > 0 {
                coef = coef * int(c) / int(n as i64);
            }
            if n >= start {
                out.add_term(vec![g; n], self.zs(coef.clone(), n));
            }
        }
        out
    }

    /// `(e^{c z g} − 1)/z = Σ_{n≥1} cⁿ z^{n−1}/n! gⁿ`
    fn expm1_over_z(&self, g: u8, c: i64) -> NCElement {
        let mut out = self.zero();
        let mut coef = Rational::one();
        for n in 1..=self.k + 1 {
            coef = coef * int(c) / int(n as i64);
            out.add_term(vec![g; n], self.zs(coef.clone(), n - 1));
        }
        out
    }

    /// Appends a letter to every word; only valid when the result stays
    /// normal-ordered, which the presentation constructor re-checks.
    fn then(&self, e: &NCElement, g: u8) -> NCElement {
        let mut out = self.zero();
        for (w, c) in e.terms() {
            let mut w = w.clone();
            w.push(g);
            out.add_term(w, c.clone());
        }
        out
    }

    fn t(&self, a: &NCElement, b: &NCElement) -> TensorElement {
        TensorElement::product_of(&[a, b])
    }

    fn primitive(&self, g: u8) -> TensorElement {
        &self.t(&self.one(), &self.w(&[g])) + &self.t(&self.w(&[g]), &self.one())
    }
}

fn sum(parts: &[NCElement]) -> NCElement {
    parts.iter().skip(1).fold(parts[0].clone(), |acc, p| &acc + p)
}

fn relation_table(k: usize, entries: Vec<((u8, u8), NCElement)>) -> BTreeMap<(u8, u8), NCElement> {
    let mut table: BTreeMap<(u8, u8), NCElement> = entries.into_iter().collect();
    for x in 0..6u8 {
        for y in 0..x {
            table.entry((x, y)).or_insert_with(|| NCElement::zero(k));
        }
    }
    table
}

/// The quantum two-photon algebra with PBW order `B+ < N < M < A+ < A- < B-`.
pub fn h6_twophoton(order: usize) -> Result<AlgebraSpec, AlgebraError> {
    use h6::*;
    let b = Builder { k: order };
    let relations = relation_table(
        order,
        vec![
            // [N,B+] = (e^{2zB+} − 1)/z
            ((N, BP), b.expm1_over_z(BP, 2)),
            // [A+,N] = −A+
            ((AP, N), b.c(-1, 0, &[AP])),
            // [A-,B+] = 2 e^{2zB+} A+
            ((AM, BP), b.then(&b.exp(BP, 2), AP).scale_rational(&int(2))),
            // [A-,N] = A-
            ((AM, N), b.w(&[AM])),
            // [A-,A+] = M
            ((AM, AP), b.w(&[M])),
            // [B-,B+] = 4N + 2M e^{2zB+}
            ((BM, BP), &b.c(4, 0, &[N]) + &b.then(&b.exp(BP, 2), M).scale_rational(&int(2))),
            // [B-,N] = 2B- + 4zN²
            ((BM, N), &b.c(2, 0, &[BM]) + &b.c(4, 1, &[N, N])),
            // [B-,A+] = 2A- − 2z(NA+ + A+N)
            ((BM, AP), sum(&[b.c(2, 0, &[AM]), b.c(-4, 1, &[N, AP]), b.c(2, 1, &[AP])])),
            // [B-,A-] = 2z(NA- + A-N)
            ((BM, AM), &b.c(4, 1, &[N, AM]) + &b.c(2, 1, &[AM])),
        ],
    );
    let central = [false, false, true, false, false, false];
    let mut spec = AlgebraSpec::new(H6, &H6_GENERATORS, &central, order, relations)?;

    let one = b.one();
    let g = |x: u8| b.w(&[x]);
    let two_z = b.zs(int(2), 1);

    let coproduct = vec![
        b.primitive(BP),
        &b.t(&one, &g(N)) + &b.t(&g(N), &b.exp(BP, 2)),
        b.primitive(M),
        &b.t(&one, &g(AP)) + &b.t(&g(AP), &b.exp(BP, -1)),
        &(&b.t(&one, &g(AM)) + &b.t(&g(AM), &b.exp(BP, 1)))
            + &b.t(&g(N), &spec.mul(&b.exp(BP, 2), &g(AP))?).scale(&two_z),
        &(&b.t(&one, &g(BM)) + &b.t(&g(BM), &b.exp(BP, 2)))
            + &b.t(&g(N), &spec.mul(&b.exp(BP, 2), &g(M))?).scale(&two_z),
    ];

    let antipode = vec![
        -&g(BP),
        -&spec.mul(&g(N), &b.exp(BP, -2))?,
        -&g(M),
        -&spec.mul(&g(AP), &b.exp(BP, 1))?,
        // γ(A-) = −(A- − 2zN A+) e^{−zB+}
        -&spec.mul(&(&g(AM) - &b.c(2, 1, &[N, AP])), &b.exp(BP, -1))?,
        // γ(B-) = −(B- − 2zN M) e^{−2zB+}
        -&spec.mul(&(&g(BM) - &b.c(2, 1, &[N, M])), &b.exp(BP, -2))?,
    ];

    let counit = vec![Series::zero(order); 6];

    // R = exp(−z B+ ⊗ N) exp(z N ⊗ B+)
    let r_factors = vec![
        b.t(&g(BP), &g(N)).scale(&b.zs(int(-1), 1)),
        b.t(&g(N), &g(BP)).scale(&b.zs(int(1), 1)),
    ];

    spec.set_hopf(coproduct, antipode, counit, r_factors);
    Ok(spec)
}

/// The quantum (1+1) Schrödinger algebra with PBW order `H < D < M < P < K < C`.
pub fn schrodinger11(order: usize) -> Result<AlgebraSpec, AlgebraError> {
    use sch::*;
    let b = Builder { k: order };
    let half = frac(1, 2);
    let relations = relation_table(
        order,
        vec![
            // [D,H] = (1 − e^{4zH})/(2z)
            ((D, H), b.expm1_over_z(H, 4).scale_rational(&frac(-1, 2))),
            // [P,D] = P
            ((P, D), b.w(&[P])),
            // [K,H] = e^{4zH} P
            ((K, H), b.then(&b.exp(H, 4), P)),
            // [K,D] = −K
            ((K, D), b.c(-1, 0, &[K])),
            // [K,P] = M
            ((K, P), b.w(&[M])),
            // [C,H] = −D − M(1 − e^{4zH})/2
            ((C, H), &b.c(-1, 0, &[D]) + &b.then(&b.expm1(H, 4), M).scale_rational(&half)),
            // [C,D] = −2C − 2z(D + M/2)²
            ((C, D), sum(&[b.c(-2, 0, &[C]), b.c(-2, 1, &[D, D]), b.c(-2, 1, &[D, M]), b.cq(frac(-1, 2), 1, &[M, M])])),
            // [C,P] = K + z(DP + PD + PM)
            ((C, P), sum(&[b.w(&[K]), b.c(2, 1, &[D, P]), b.c(1, 1, &[P]), b.c(1, 1, &[M, P])])),
            // [C,K] = −z(DK + KD + KM)
            ((C, K), sum(&[b.c(-2, 1, &[D, K]), b.c(1, 1, &[K]), b.c(-1, 1, &[M, K])])),
        ],
    );
    let central = [false, false, true, false, false, false];
    let mut spec = AlgebraSpec::new(SCHRODINGER, &SCH_GENERATORS, &central, order, relations)?;

    let one = b.one();
    let g = |x: u8| b.w(&[x]);
    let d_plus_half_m = &g(D) + &g(M).scale_rational(&half);

    let coproduct = vec![
        b.primitive(H),
        // Δ(D) = 1⊗D + D⊗e^{4zH} + M⊗(e^{4zH} − 1)/2
        &(&b.t(&one, &g(D)) + &b.t(&g(D), &b.exp(H, 4))) + &b.t(&g(M), &b.expm1(H, 4).scale_rational(&half)),
        b.primitive(M),
        &b.t(&one, &g(P)) + &b.t(&g(P), &b.exp(H, -2)),
        // Δ(K) = 1⊗K + K⊗e^{2zH} − 2z(D + M/2)⊗e^{4zH}P
        &(&b.t(&one, &g(K)) + &b.t(&g(K), &b.exp(H, 2)))
            + &b.t(&d_plus_half_m, &spec.mul(&b.exp(H, 4), &g(P))?).scale(&b.zs(int(-2), 1)),
        // Δ(C) = 1⊗C + C⊗e^{4zH} − z(D + M/2)⊗e^{4zH}M
        &(&b.t(&one, &g(C)) + &b.t(&g(C), &b.exp(H, 4)))
            + &b.t(&d_plus_half_m, &spec.mul(&b.exp(H, 4), &g(M))?).scale(&b.zs(int(-1), 1)),
    ];

    let antipode = vec![
        -&g(H),
        // γ(D) = M/2 − (D + M/2) e^{−4zH}
        &g(M).scale_rational(&half) - &spec.mul(&d_plus_half_m, &b.exp(H, -4))?,
        -&g(M),
        -&spec.mul(&g(P), &b.exp(H, 2))?,
        // γ(K) = −(K + 2z(D + M/2)P) e^{−2zH}
        -&spec.mul(
            &(&g(K) + &spec.mul(&d_plus_half_m, &g(P))?.scale(&b.zs(int(2), 1))),
            &b.exp(H, -2),
        )?,
        // γ(C) = −(C + z(D + M/2)M) e^{−4zH}
        -&spec.mul(
            &(&g(C) + &spec.mul(&d_plus_half_m, &g(M))?.scale(&b.zs(int(1), 1))),
            &b.exp(H, -4),
        )?,
    ];

    let counit = vec![Series::zero(order); 6];

    // R = exp(2zH⊗D) exp(zH⊗M) exp(−zM⊗H) exp(−2zD⊗H)
    let r_factors = vec![
        b.t(&g(H), &g(D)).scale(&b.zs(int(2), 1)),
        b.t(&g(H), &g(M)).scale(&b.zs(int(1), 1)),
        b.t(&g(M), &g(H)).scale(&b.zs(int(-1), 1)),
        b.t(&g(D), &g(H)).scale(&b.zs(int(-2), 1)),
    ];

    spec.set_hopf(coproduct, antipode, counit, r_factors);
    Ok(spec)
}

/// Looks up a built-in algebra by name.
pub fn builtin(name: &str, order: usize) -> Result<AlgebraSpec, AlgebraError> {
    match name {
        H6 | "h6" => h6_twophoton(order),
        SCHRODINGER | "sch" => schrodinger11(order),
        other => Err(AlgebraError::UnknownAlgebra(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc_hopf::spec::RawExpr;

    fn el(spec: &AlgebraSpec, text: &str) -> NCElement {
        NCElement::word(spec.parse_word(text).unwrap(), spec.order())
    }

    fn prod(spec: &AlgebraSpec, a: &str, b: &str) -> NCElement {
        spec.mul(&el(spec, a), &el(spec, b)).unwrap()
    }

    #[test]
    fn h6_hand_ordered_entries_match_engine() {
        let s = h6_twophoton(3).unwrap();
        let z = |c: i64| Series::monomial(int(c), 1, 3);
        // [B-,A+] = 2A- − 2z(N A+ + A+ N)
        let expected = &el(&s, "A-").scale_rational(&int(2))
            - &(&prod(&s, "N", "A+") + &prod(&s, "A+", "N")).scale(&z(2));
        assert_eq!(s.commutator(&el(&s, "B-"), &el(&s, "A+")).unwrap(), expected);
        // [B-,A-] = 2z(N A- + A- N)
        let expected = (&prod(&s, "N", "A-") + &prod(&s, "A-", "N")).scale(&z(2));
        assert_eq!(s.commutator(&el(&s, "B-"), &el(&s, "A-")).unwrap(), expected);
    }

    #[test]
    fn schrodinger_hand_ordered_entries_match_engine() {
        let s = schrodinger11(2).unwrap();
        let z = |c: i64| Series::monomial(int(c), 1, 2);
        let d_half_m = &el(&s, "D") + &el(&s, "M").scale_rational(&frac(1, 2));
        // [D,C] = 2C + 2z(D + M/2)²
        let expected = &el(&s, "C").scale_rational(&int(2)) + &s.mul(&d_half_m, &d_half_m).unwrap().scale(&z(2));
        assert_eq!(s.commutator(&el(&s, "D"), &el(&s, "C")).unwrap(), expected);
        // [K,C] = z(DK + KD + KM)
        let expected = sum(&[prod(&s, "D", "K"), prod(&s, "K", "D"), prod(&s, "K", "M")]).scale(&z(1));
        assert_eq!(s.commutator(&el(&s, "K"), &el(&s, "C")).unwrap(), expected);
        // [P,C] = −K − z(DP + PD + PM)
        let expected = &-&el(&s, "K") - &sum(&[prod(&s, "D", "P"), prod(&s, "P", "D"), prod(&s, "P", "M")]).scale(&z(1));
        assert_eq!(s.commutator(&el(&s, "P"), &el(&s, "C")).unwrap(), expected);
    }

    #[test]
    fn normal_order_examples() {
        let s = h6_twophoton(1).unwrap();
        let raw = RawExpr::new(1).with(s.parse_word("A- A+").unwrap(), Series::one(1));
        assert_eq!(s.render(&s.normal_order(&raw).unwrap()), "M + A+ A-");
        let raw = RawExpr::new(1).with(s.parse_word("N B+").unwrap(), Series::one(1));
        assert_eq!(s.render(&s.normal_order(&raw).unwrap()), "2*B+ + 2*z*B+^2 + B+ N");
        for g in H6_GENERATORS {
            let m_x = prod(&s, "M", g);
            assert_eq!(m_x, prod(&s, g, "M"));
        }
    }

    #[test]
    fn commutator_examples() {
        let s = h6_twophoton(2).unwrap();
        assert_eq!(
            s.render(&s.commutator(&el(&s, "B-"), &el(&s, "B+")).unwrap()),
            "4*N + 2*M + 4*z*B+ M + 4*z^2*B+^2 M"
        );
        for g in H6_GENERATORS {
            assert!(s.commutator(&el(&s, g), &el(&s, g)).unwrap().is_zero());
        }
        let s = h6_twophoton(1).unwrap();
        assert_eq!(s.render(&s.commutator(&el(&s, "A-"), &el(&s, "B+")).unwrap()), "2*A+ + 4*z*B+ A+");
    }

    #[test]
    fn coproduct_antipode_counit_examples() {
        let s = h6_twophoton(1).unwrap();
        let bp = el(&s, "B+");
        assert_eq!(s.render_tensor(&s.coproduct(&bp).unwrap()), "(1 ⊗ B+) + (B+ ⊗ 1)");
        assert_eq!(
            s.render_tensor(&s.coproduct(&el(&s, "N")).unwrap()),
            "(1 ⊗ N) + (N ⊗ 1) + 2*z*(N ⊗ B+)"
        );
        assert_eq!(s.render(&s.antipode(&bp).unwrap()), "-B+");
        // −N + 2z N B+, where N B+ = B+ N + 2B+ + O(z)
        let unordered = &-&el(&s, "N") + &prod(&s, "N", "B+").scale(&Series::monomial(int(2), 1, 1));
        assert_eq!(s.antipode(&el(&s, "N")).unwrap(), unordered);
        assert_eq!(s.render(&unordered), "4*z*B+ - N + 2*z*B+ N");
        assert!(s.counit(&el(&s, "N A+")).unwrap().is_zero());
        assert_eq!(s.counit(&NCElement::one(1)).unwrap(), Series::one(1));

        let s0 = h6_twophoton(0).unwrap();
        for (i, _) in H6_GENERATORS.iter().enumerate() {
            let x = NCElement::generator(i as u8, 0);
            let prim = &TensorElement::product_of(&[&NCElement::one(0), &x])
                + &TensorElement::product_of(&[&x, &NCElement::one(0)]);
            assert_eq!(s0.coproduct(&x).unwrap(), prim);
        }
    }

    #[test]
    fn truncation_consistency_of_tables() {
        let hi = h6_twophoton(3).unwrap();
        let lo = h6_twophoton(1).unwrap();
        for (key, rel) in hi.relations() {
            assert_eq!(&rel.truncate(1), lo.relation(key.0, key.1).unwrap());
        }
        for i in 0..6 {
            assert_eq!(hi.coproduct_table()[i].truncate(1), lo.coproduct_table()[i]);
            assert_eq!(hi.antipode_table()[i].truncate(1), lo.antipode_table()[i]);
        }
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let s = h6_twophoton(2).unwrap().with_fuel_limit(1);
        let err = s.mul(&el(&s, "B- B-"), &el(&s, "B+ B+")).unwrap_err();
        assert!(matches!(err, AlgebraError::FuelExhausted { .. }), "{err}");
    }
}
