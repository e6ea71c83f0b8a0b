//! Transport of a presentation along a linear change of generators.
//!
//! Products are always computed in the source algebra; the result is then
//! rewritten letter by letter. This only needs the target's central letters
//! to be moved, so the target's own relations are never consulted and the
//! comparison against a hand-coded table is not circular.

use std::time::Instant;

use num_traits::One;

use super::builtin::{h6, sch, H6, SCHRODINGER, SCH_GENERATORS};
use super::element::{is_normal_word, NCElement, TensorElement, Word};
use super::spec::AlgebraSpec;
use super::AlgebraError;
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, Rational};
use crate::series::Series;

/// Sends every source generator to a linear combination of target
/// generators.
#[derive(Clone, Debug)]
pub struct LinearSubstitution {
    images: Vec<Vec<(u8, Rational)>>,
    target_central: Vec<bool>,
}

impl LinearSubstitution {
    pub fn new(images: Vec<Vec<(u8, Rational)>>, target_central: Vec<bool>) -> Self {
        LinearSubstitution { images, target_central }
    }

    /// `B+ ↦ 2H, N ↦ −D − M/2, M ↦ M, A+ ↦ P, A- ↦ K, B- ↦ 2C`
    pub fn h6_to_schrodinger() -> Self {
        let mut images = vec![Vec::new(); 6];
        images[h6::BP as usize] = vec![(sch::H, int(2))];
        images[h6::N as usize] = vec![(sch::D, int(-1)), (sch::M, frac(-1, 2))];
        images[h6::M as usize] = vec![(sch::M, int(1))];
        images[h6::AP as usize] = vec![(sch::P, int(1))];
        images[h6::AM as usize] = vec![(sch::K, int(1))];
        images[h6::BM as usize] = vec![(sch::C, int(2))];
        Self::new(images, vec![false, false, true, false, false, false])
    }

    /// `H ↦ B+/2, D ↦ −N − M/2, M ↦ M, P ↦ A+, K ↦ A-, C ↦ B-/2`
    pub fn schrodinger_to_h6() -> Self {
        let mut images = vec![Vec::new(); 6];
        images[sch::H as usize] = vec![(h6::BP, frac(1, 2))];
        images[sch::D as usize] = vec![(h6::N, int(-1)), (h6::M, frac(-1, 2))];
        images[sch::M as usize] = vec![(h6::M, int(1))];
        images[sch::P as usize] = vec![(h6::AP, int(1))];
        images[sch::K as usize] = vec![(h6::AM, int(1))];
        images[sch::C as usize] = vec![(h6::BM, frac(1, 2))];
        Self::new(images, vec![false, false, true, false, false, false])
    }

    pub fn image_of(&self, g: u8, order: usize) -> NCElement {
        let mut out = NCElement::zero(order);
        for (t, c) in &self.images[g as usize] {
            out.add_term(vec![*t], Series::constant(c.clone(), order));
        }
        out
    }

    pub fn apply(&self, x: &NCElement) -> Result<NCElement, AlgebraError> {
        let mut out = NCElement::zero(x.order());
        for (w, c) in x.terms() {
            out.add_scaled(&substitute_word(self, w, x.order())?, c);
        }
        Ok(out)
    }

    pub fn apply_tensor(&self, t: &TensorElement) -> Result<TensorElement, AlgebraError> {
        let mut out = TensorElement::zero(t.rank(), t.order());
        for (key, c) in t.terms() {
            let legs = key.iter().map(|w| substitute_word(self, w, t.order())).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&NCElement> = legs.iter().collect();
            for (k, d) in TensorElement::product_of(&refs).terms() {
                out.add_term(k.clone(), d * c);
            }
        }
        Ok(out)
    }
}

/// Image of a source word, expanded and written in target PBW order.
///
/// Fails if an expanded word would need a non-central reordering, i.e. if the
/// substitution is not compatible with the two PBW orders.
pub fn substitute_word(sub: &LinearSubstitution, w: &[u8], order: usize) -> Result<NCElement, AlgebraError> {
    let mut partial: Vec<(Word, Rational)> = vec![(Vec::new(), Rational::one())];
    for &g in w {
        let image = sub
            .images
            .get(g as usize)
            .ok_or_else(|| AlgebraError::Transport(format!("no image for generator #{g}")))?;
        let mut next = Vec::with_capacity(partial.len() * image.len());
        for (word, c) in &partial {
            for (t, d) in image {
                let mut word = word.clone();
                word.push(*t);
                next.push((word, c * d));
            }
        }
        partial = next;
    }
    let mut out = NCElement::zero(order);
    for (word, c) in partial {
        let core: Vec<u8> = word.iter().copied().filter(|&g| !sub.target_central[g as usize]).collect();
        if !is_normal_word(&core) {
            return Err(AlgebraError::Transport(format!("word {word:?} needs a non-central reordering")));
        }
        let mut sorted = word;
        sorted.sort_unstable();
        out.add_term(sorted, Series::constant(c, order));
    }
    Ok(out)
}

/// Builds the Schrödinger presentation and Hopf tables from the two-photon
/// ones: every bracket, coproduct, antipode and R-matrix exponent is computed
/// on preimages in the two-photon algebra and then rewritten.
pub fn transport_structure(from: &AlgebraSpec) -> Result<AlgebraSpec, AlgebraError> {
    if from.name() != H6 {
        return Err(AlgebraError::Transport(format!("no transport defined from `{}`", from.name())));
    }
    let k = from.order();
    let fwd = LinearSubstitution::h6_to_schrodinger();
    let back = LinearSubstitution::schrodinger_to_h6();
    let pre = |g: u8| back.image_of(g, k);

    let mut relations = std::collections::BTreeMap::new();
    for x in 0..6u8 {
        for y in 0..x {
            relations.insert((x, y), fwd.apply(&from.commutator(&pre(x), &pre(y))?)?);
        }
    }
    let central = [false, false, true, false, false, false];
    let mut spec = AlgebraSpec::new(SCHRODINGER, &SCH_GENERATORS, &central, k, relations)?;
    if from.has_hopf() {
        let mut coproduct = Vec::new();
        let mut antipode = Vec::new();
        let mut counit = Vec::new();
        for g in 0..6u8 {
            coproduct.push(fwd.apply_tensor(&from.coproduct(&pre(g))?)?);
            antipode.push(fwd.apply(&from.antipode(&pre(g))?)?);
            counit.push(from.counit(&pre(g))?);
        }
        let r_factors = from.r_factors().iter().map(|f| fwd.apply_tensor(f)).collect::<Result<Vec<_>, _>>()?;
        spec.set_hopf(coproduct, antipode, counit, r_factors);
    }
    Ok(spec)
}

/// Compares two presentations of the same algebra table by table. R-matrices
/// are compared as full products, since the factorizations may differ.
pub fn verify_spec_equality(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<VerificationReport, AlgebraError> {
    if a.generators() != b.generators() {
        return Err(AlgebraError::Transport(format!("generator lists differ: {:?} vs {:?}", a.generators(), b.generators())));
    }
    if a.order() != b.order() {
        return Err(AlgebraError::OrderMismatch(a.order(), b.order()));
    }
    let k = a.order();
    let name = b.name();
    let gens = b.generators();
    let mut report = VerificationReport::new();
    let entry = |what: String| CheckEntry::new("hopf", format!("{name}/transport/{what}")).param("k", k);

    for (&(x, y), rel) in b.relations() {
        let start = Instant::now();
        let res = a.relation(x, y).expect("complete relation table") - rel;
        let label = format!("relation/[{},{}]", gens[x as usize], gens[y as usize]);
        report.push(entry(label).residual(res.is_zero(), || b.render(&res)).since(start));
    }
    if !(a.has_hopf() && b.has_hopf()) {
        return Ok(report);
    }
    for (i, g) in gens.iter().enumerate() {
        let start = Instant::now();
        let res = &a.coproduct_table()[i] - &b.coproduct_table()[i];
        report.push(entry(format!("coproduct/{g}")).residual(res.is_zero(), || b.render_tensor(&res)).since(start));

        let start = Instant::now();
        let res = &a.antipode_table()[i] - &b.antipode_table()[i];
        report.push(entry(format!("antipode/{g}")).residual(res.is_zero(), || b.render(&res)).since(start));

        let start = Instant::now();
        let res = &a.counit_table()[i] - &b.counit_table()[i];
        report.push(entry(format!("counit/{g}")).residual(res.is_zero(), || res.to_string()).since(start));
    }
    let start = Instant::now();
    let res = &a.r_matrix()? - &b.r_matrix()?;
    report.push(entry("r-matrix".into()).residual(res.is_zero(), || b.render_tensor(&res)).since(start));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc_hopf::{h6_twophoton, schrodinger11};

    #[test]
    fn transported_brackets_match_examples() {
        let t = transport_structure(&h6_twophoton(1).unwrap()).unwrap();
        assert_eq!(t.render(t.relation(sch::P, sch::D).unwrap()), "P");
        // [D,P] = −P is stored as [P,D] = P; [H,C] = D − 2zHM at k=1
        let hc = -t.relation(sch::C, sch::H).unwrap();
        assert_eq!(t.render(&hc), "D - 2*z*H M");
    }

    #[test]
    fn classical_transport_gives_undeformed_table() {
        let t = transport_structure(&h6_twophoton(0).unwrap()).unwrap();
        let r = |x: u8, y: u8| t.render(t.relation(x, y).unwrap());
        assert_eq!(r(sch::D, sch::H), "-2*H");
        assert_eq!(r(sch::C, sch::D), "-2*C");
        assert_eq!(r(sch::C, sch::H), "-D");
        assert_eq!(r(sch::K, sch::H), "P");
        assert_eq!(r(sch::C, sch::P), "K");
        assert_eq!(r(sch::K, sch::P), "M");
    }

    #[test]
    fn transport_matches_hand_coded_tables() {
        for k in 0..=2 {
            let t = transport_structure(&h6_twophoton(k).unwrap()).unwrap();
            let report = verify_spec_equality(&t, &schrodinger11(k).unwrap()).unwrap();
            assert!(report.all_passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn incompatible_substitution_is_rejected() {
        // B+ ↦ C breaks the order relation with N ↦ D
        let mut images = vec![Vec::new(); 6];
        images[h6::BP as usize] = vec![(sch::C, int(1))];
        images[h6::N as usize] = vec![(sch::D, int(1))];
        let sub = LinearSubstitution::new(images, vec![false, false, true, false, false, false]);
        let err = substitute_word(&sub, &[h6::BP, h6::N], 0).unwrap_err();
        assert!(matches!(err, AlgebraError::Transport(_)));
    }

    #[test]
    fn only_h6_can_be_transported() {
        assert!(transport_structure(&schrodinger11(0).unwrap()).is_err());
    }
}
