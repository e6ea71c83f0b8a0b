use std::time::Instant;

use super::element::{NCElement, TensorElement};
use super::spec::AlgebraSpec;
use super::AlgebraError;
use crate::report::{CheckEntry, VerificationReport};

/// Replaces leg `leg` of a rank-2 tensor by its coproduct.
fn coproduct_on_leg(spec: &AlgebraSpec, t: &TensorElement, leg: usize) -> Result<TensorElement, AlgebraError> {
    let mut out = TensorElement::zero(3, spec.order());
    for (k, c) in t.terms() {
        let split = spec.coproduct_word(&k[leg])?;
        for (sk, d) in split.terms() {
            let key = if leg == 0 {
                vec![sk[0].clone(), sk[1].clone(), k[1].clone()]
            } else {
                vec![k[0].clone(), sk[0].clone(), sk[1].clone()]
            };
            out.add_term(key, c * d);
        }
    }
    Ok(out)
}

/// `(ε ⊗ id)` for `leg == 0`, `(id ⊗ ε)` for `leg == 1`.
fn counit_on_leg(spec: &AlgebraSpec, t: &TensorElement, leg: usize) -> Result<NCElement, AlgebraError> {
    let mut out = NCElement::zero(spec.order());
    for (k, c) in t.terms() {
        let e = spec.counit_word(&k[leg])?;
        out.add_term(k[1 - leg].clone(), c * &e);
    }
    Ok(out)
}

/// `m ∘ (γ ⊗ id)` for `leg == 0`, `m ∘ (id ⊗ γ)` for `leg == 1`.
fn antipode_on_leg(spec: &AlgebraSpec, t: &TensorElement, leg: usize) -> Result<NCElement, AlgebraError> {
    let k_ord = spec.order();
    let mut out = NCElement::zero(k_ord);
    for (k, c) in t.terms() {
        let a = NCElement::word(k[0].clone(), k_ord);
        let b = NCElement::word(k[1].clone(), k_ord);
        let prod = if leg == 0 {
            spec.mul(&spec.antipode_word(&k[0])?, &b)?
        } else {
            spec.mul(&a, &spec.antipode_word(&k[1])?)?
        };
        out.add_scaled(&prod, c);
    }
    Ok(out)
}

/// Coassociativity, both counit axioms, both antipode axioms on every
/// generator, and `Δ([X,Y]) = [Δ(X), Δ(Y)]` on every generator pair.
pub fn verify_hopf(spec: &AlgebraSpec) -> Result<VerificationReport, AlgebraError> {
    let k = spec.order();
    let name = spec.name();
    let mut report = VerificationReport::new();
    let entry = |check: &str, what: &str| CheckEntry::new("hopf", format!("{name}/{check}/{what}")).param("k", k);

    for (i, g) in spec.generators().iter().enumerate() {
        let x = NCElement::generator(i as u8, k);
        let delta = spec.coproduct(&x)?;

        let start = Instant::now();
        let res = &coproduct_on_leg(spec, &delta, 0)? - &coproduct_on_leg(spec, &delta, 1)?;
        report.push(entry("coassociativity", g).residual(res.is_zero(), || spec.render_tensor(&res)).since(start));

        for (leg, side) in [(0, "left"), (1, "right")] {
            let start = Instant::now();
            let res = &counit_on_leg(spec, &delta, leg)? - &x;
            report.push(entry(&format!("counit-{side}"), g).residual(res.is_zero(), || spec.render(&res)).since(start));

            let start = Instant::now();
            let unit = NCElement::scalar(spec.counit(&x)?);
            let res = &antipode_on_leg(spec, &delta, leg)? - &unit;
            report
                .push(entry(&format!("antipode-{side}"), g).residual(res.is_zero(), || spec.render(&res)).since(start));
        }
    }

    for (&(x, y), bracket) in spec.relations() {
        let start = Instant::now();
        let dx = spec.coproduct(&NCElement::generator(x, k))?;
        let dy = spec.coproduct(&NCElement::generator(y, k))?;
        let lhs = spec.coproduct(bracket)?;
        let rhs = &spec.tensor_mul(&dx, &dy)? - &spec.tensor_mul(&dy, &dx)?;
        let res = &lhs - &rhs;
        let pair = format!("[{},{}]", spec.generators()[x as usize], spec.generators()[y as usize]);
        report.push(entry("homomorphism", &pair).residual(res.is_zero(), || spec.render_tensor(&res)).since(start));
    }
    Ok(report)
}

/// Quantum Yang–Baxter equation in the tensor cube, `R R⁻¹ = 1`, and the
/// intertwining identity `R Δ(X) = (σ∘Δ)(X) R` for every generator.
pub fn verify_rmatrix(spec: &AlgebraSpec) -> Result<VerificationReport, AlgebraError> {
    let k = spec.order();
    let name = spec.name();
    let mut report = VerificationReport::new();
    let entry = |check: &str| CheckEntry::new("rmatrix", format!("{name}/{check}")).param("k", k);

    let start = Instant::now();
    let r = spec.r_matrix()?;
    let r_inv = spec.r_matrix_inverse()?;
    let res = &spec.tensor_mul(&r, &r_inv)? - &TensorElement::one(2, k);
    report.push(entry("inverse").residual(res.is_zero(), || spec.render_tensor(&res)).since(start));

    let start = Instant::now();
    let r12 = r.embed(3, &[0, 1]);
    let r13 = r.embed(3, &[0, 2]);
    let r23 = r.embed(3, &[1, 2]);
    let lhs = spec.tensor_mul(&spec.tensor_mul(&r12, &r13)?, &r23)?;
    let rhs = spec.tensor_mul(&spec.tensor_mul(&r23, &r13)?, &r12)?;
    let res = &lhs - &rhs;
    report.push(entry("qybe").residual(res.is_zero(), || spec.render_tensor(&res)).since(start));

    for (i, g) in spec.generators().iter().enumerate() {
        let start = Instant::now();
        let delta = spec.coproduct(&NCElement::generator(i as u8, k))?;
        let res = &spec.tensor_mul(&r, &delta)? - &spec.tensor_mul(&delta.flip(), &r)?;
        report.push(
            entry(&format!("intertwining/{g}")).residual(res.is_zero(), || spec.render_tensor(&res)).since(start),
        );
    }
    Ok(report)
}
