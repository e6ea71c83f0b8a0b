use std::time::Instant;

use super::diffop::DiffOperator;
use super::laurent::LaurentPoly;
use super::BosonError;
use crate::nc_hopf::{h6, h6_twophoton, NCElement, H6_GENERATORS};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, Rational};
use crate::series::{Series, TruncatedSeries};

pub type Rep = Vec<DiffOperator<Rational>>;

fn gen_index(name: &str) -> Result<usize, BosonError> {
    H6_GENERATORS.iter().position(|g| *g == name).ok_or_else(|| BosonError::UnknownGenerator(name.to_string()))
}

/// `(α-power, ∂-power, [(p, q, z-power)])`: coefficient `Σ (p/q) z^power`.
type TermSpec<'a> = (u32, u32, &'a [(i64, i64, usize)]);

fn op(order: usize, terms: &[TermSpec]) -> DiffOperator {
    let mut out = DiffOperator::zero(order);
    for (a, d, coef) in terms {
        let mut s = Series::zero(order);
        for &(p, q, zp) in coef.iter() {
            s = &s + &Series::monomial(frac(p, q), zp, order);
        }
        out.add_term(*a, *d, s);
    }
    out
}

/// Images of `B+, N, M, A+, A-, B-` in the undeformed Fock–Bargmann
/// representation, at truncation order `order`.
pub fn classical_rep(order: usize) -> Rep {
    vec![
        op(order, &[(2, 0, &[(1, 1, 0)])]),
        op(order, &[(1, 1, &[(1, 1, 0)])]),
        op(order, &[(0, 0, &[(1, 1, 0)])]),
        op(order, &[(1, 0, &[(1, 1, 0)])]),
        op(order, &[(0, 1, &[(1, 1, 0)])]),
        op(order, &[(0, 2, &[(1, 1, 0)])]),
    ]
}

pub fn classical_generator(name: &str, order: usize) -> Result<DiffOperator, BosonError> {
    Ok(classical_rep(order).swap_remove(gen_index(name)?))
}

/// The first-order operators, as printed.
pub fn first_order_rep() -> Rep {
    vec![
        op(1, &[(2, 0, &[(1, 1, 0)])]),
        op(1, &[(1, 1, &[(1, 1, 0)]), (3, 1, &[(1, 1, 1)])]),
        op(1, &[(0, 0, &[(1, 1, 0)])]),
        op(1, &[(1, 0, &[(1, 1, 0)]), (3, 0, &[(-1, 2, 1)])]),
        op(1, &[(0, 1, &[(1, 1, 0)]), (2, 1, &[(3, 2, 1)])]),
        op(1, &[(0, 2, &[(1, 1, 0)]), (2, 2, &[(1, 1, 1)]), (1, 1, &[(1, 1, 1)])]),
    ]
}

type LSeries = TruncatedSeries<LaurentPoly>;

fn alpha_pow(c: Rational, p: i32) -> LaurentPoly {
    LaurentPoly::monomial(c, p)
}

fn series_err(e: crate::series::SeriesError) -> BosonError {
    BosonError::Series(e.to_string())
}

/// Converts coefficient series in `LaurentPoly` (on `∂^d`) into canonical
/// operator terms, rejecting any surviving negative power of α.
fn lower(gen: &str, order: usize, parts: &[(u32, LSeries)]) -> Result<DiffOperator, BosonError> {
    let mut out = DiffOperator::zero(order);
    for (d, s) in parts {
        for (zp, poly) in s.coeffs().iter().enumerate() {
            for (&p, c) in poly.terms() {
                if p < 0 {
                    return Err(BosonError::NegativeAlphaPower { generator: gen.to_string(), z_power: zp, alpha_power: p });
                }
                out.add_term(p as u32, *d, Series::monomial(c.clone(), zp, order));
            }
        }
    }
    Ok(out)
}

/// The deformed one-boson representation at truncation order `order`,
/// built from the closed forms with `a+ = α`, `a- = d/dα`:
///
/// ```text
/// N  = (e^{2zα²} − 1)/(2zα) ∂
/// A+ = ((1 − e^{−2zα²})/(2z))^{1/2}
/// A- = e^{2zα²}/α · ((1 − e^{−2zα²})/(2z))^{1/2} ∂
/// B- = (e^{2zα²} − 1)/(2zα²) ∂² + (e^{2zα²}/α + (1 − e^{2zα²})/(2zα³)) ∂
/// ```
///
/// Series in `z` are formed with one extra order so the divisions by `z` are
/// exact; every negative power of α must cancel.
pub fn deformed_rep(order: usize) -> Result<Rep, BosonError> {
    let hi = order + 1;
    let l = |c: Rational, p: i32| LSeries::constant(alpha_pow(c, p), order);
    let mut u = LSeries::zero(hi);
    u = &u + &LSeries::monomial(alpha_pow(int(2), 2), 1, hi);
    let e_hi = u.exp().map_err(series_err)?;
    let e = e_hi.truncate(order).map_err(series_err)?;
    // (e^u − 1)/z
    let em1_z = (&e_hi - &LSeries::one(hi)).div_z().map_err(series_err)?;
    // w = (1 − e^{−u})/(2z); A+ = α (w/α²)^{1/2}
    let e_neg = (-&u).exp().map_err(series_err)?;
    let w = &(&LSeries::one(hi) - &e_neg).div_z().map_err(series_err)? * &l(frac(1, 2), 0);
    let ap = &(&w * &l(int(1), -2)).sqrt().map_err(series_err)? * &l(int(1), 1);

    let n = &em1_z * &l(frac(1, 2), -1);
    let am = &(&e * &l(int(1), -1)) * &ap;
    let bm2 = &em1_z * &l(frac(1, 2), -2);
    let bm1 = &(&e * &l(int(1), -1)) - &(&em1_z * &l(frac(1, 2), -3));

    let one = l(int(1), 0);
    Ok(vec![
        lower("B+", order, &[(0, l(int(1), 2))])?,
        lower("N", order, &[(1, n)])?,
        lower("M", order, &[(0, one)])?,
        lower("A+", order, &[(0, ap)])?,
        lower("A-", order, &[(1, am)])?,
        lower("B-", order, &[(2, bm2), (1, bm1)])?,
    ])
}

pub fn deformed_generator(name: &str, order: usize) -> Result<DiffOperator, BosonError> {
    Ok(deformed_rep(order)?.swap_remove(gen_index(name)?))
}

/// The image of an algebra element: words go to composites, coefficients
/// carry over.
pub fn represent(rep: &Rep, x: &NCElement) -> Result<DiffOperator, BosonError> {
    let order = x.order();
    let mut out = DiffOperator::zero(order);
    for (w, c) in x.terms() {
        let mut acc = DiffOperator::one(order);
        for &g in w {
            acc = acc.compose(&rep[g as usize])?;
        }
        out = &out + &acc.scale(c);
    }
    Ok(out)
}

/// Every defining relation `[X,Y] = R` as the operator identity
/// `[ρ(X), ρ(Y)] − ρ(R) = 0`, plus the classical and first-order limits of
/// the deformed operators.
pub fn verify_rep(order: usize) -> Result<VerificationReport, BosonError> {
    let spec = h6_twophoton(order)?;
    let rep = deformed_rep(order)?;
    let mut report = VerificationReport::new();
    for (&(x, y), rhs) in spec.relations() {
        let start = Instant::now();
        let res = &rep[x as usize].commutator(&rep[y as usize])? - &represent(&rep, rhs)?;
        let name = format!("boson/relation/[{},{}]", H6_GENERATORS[x as usize], H6_GENERATORS[y as usize]);
        report.push(CheckEntry::new("rep", name).param("k", order).residual(res.is_zero(), || res.render()).since(start));
    }
    let classical = classical_rep(0);
    for (i, g) in H6_GENERATORS.iter().enumerate() {
        let start = Instant::now();
        let res = &rep[i].truncate(0)? - &classical[i];
        report.push(
            CheckEntry::new("rep", format!("boson/classical-limit/{g}"))
                .param("k", order)
                .residual(res.is_zero(), || res.render())
                .since(start),
        );
    }
    if order >= 1 {
        let first = first_order_rep();
        for (i, g) in H6_GENERATORS.iter().enumerate() {
            let start = Instant::now();
            let res = &rep[i].truncate(1)? - &first[i];
            report.push(
                CheckEntry::new("rep", format!("boson/first-order-table/{g}"))
                    .param("k", order)
                    .residual(res.is_zero(), || res.render())
                    .since(start),
            );
        }
    }
    Ok(report)
}

/// `[ρ(A-), ρ(A+)]`
pub fn oscillator_bracket(rep: &Rep) -> Result<DiffOperator, BosonError> {
    rep[h6::AM as usize].commutator(&rep[h6::AP as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_operators() {
        let rep = deformed_rep(1).unwrap();
        assert_eq!(rep[h6::N as usize].render(), "α ∂ + z*α^3 ∂");
        assert_eq!(rep[h6::AP as usize].render(), "α - 1/2*z*α^3");
        assert_eq!(rep[h6::BM as usize].render(), "∂^2 + z*α ∂ + z*α^2 ∂^2");
    }

    #[test]
    fn classical_images() {
        assert_eq!(classical_generator("B-", 0).unwrap().render(), "∂^2");
        assert_eq!(classical_generator("M", 0).unwrap().render(), "1");
        assert!(matches!(classical_generator("Q", 0), Err(BosonError::UnknownGenerator(_))));
        assert_eq!(oscillator_bracket(&classical_rep(0)).unwrap(), DiffOperator::one(0));
    }

    #[test]
    fn oscillator_relation_deformed() {
        let rep = deformed_rep(3).unwrap();
        assert_eq!(oscillator_bracket(&rep).unwrap(), rep[h6::M as usize]);
    }
}
