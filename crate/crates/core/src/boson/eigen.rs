use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::diffop::{falling, DiffOperator};
use super::rep::{classical_rep, deformed_rep, first_order_rep, Rep};
use super::BosonError;
use crate::nc_hopf::h6;
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, ComplexRational, Rational, Scalar};

/// `(β₁N + β₂B- + β₃B+ + β₄A- + β₅A+) f = λ f`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenProblem {
    pub beta: [ComplexRational; 5],
    pub lambda: ComplexRational,
}

impl EigenProblem {
    pub fn new(beta: [ComplexRational; 5], lambda: ComplexRational) -> Result<Self, BosonError> {
        if beta.iter().all(Zero::is_zero) {
            return Err(BosonError::DegenerateOperator);
        }
        Ok(EigenProblem { beta, lambda })
    }

    pub fn real(beta: [i64; 5], lambda: Rational) -> Result<Self, BosonError> {
        Self::new(beta.map(|b| ComplexRational::real(int(b))), ComplexRational::real(lambda))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenMode {
    Classical,
    FirstOrder,
    Full,
}

/// `Σ βᵢ ρ(Xᵢ) − λ` for the chosen representation. `Classical` and `Full`
/// are at order `k`; `FirstOrder` is always at order 1.
pub fn eigen_operator(p: &EigenProblem, k: usize, mode: EigenMode) -> Result<DiffOperator<ComplexRational>, BosonError> {
    let rep: Rep = match mode {
        EigenMode::Classical => classical_rep(k),
        EigenMode::FirstOrder => first_order_rep(),
        EigenMode::Full => deformed_rep(k)?,
    };
    let order = rep[0].order();
    let gens = [h6::N, h6::BM, h6::BP, h6::AM, h6::AP];
    let mut out = DiffOperator::scalar(-p.lambda.clone(), order);
    for (b, g) in p.beta.iter().zip(gens) {
        let image = rep[g as usize].map(ComplexRational::from_rational);
        out = &out + &image.scale_scalar(b);
    }
    Ok(out)
}

/// A truncated power-series solution `f = Σ_{n≤D} cₙ αⁿ` and the part of
/// `op f` that the truncation leaves behind.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution<C: Scalar> {
    pub coefficients: Vec<C>,
    /// Indices where the recurrence left the coefficient free.
    pub free_indices: Vec<usize>,
    /// Lowest power shift `j − l` over the terms `α^j ∂^l` of the operator.
    pub shift: i64,
    /// Nonzero coefficients of `op f`, keyed by α-power. All keys exceed
    /// `D + shift`.
    pub residual: BTreeMap<i64, C>,
}

/// `op f` for a polynomial `f`, keyed by α-power.
pub fn apply<C: Scalar>(op: &DiffOperator<C>, coeffs: &[C]) -> BTreeMap<i64, C> {
    let mut out: BTreeMap<i64, C> = BTreeMap::new();
    for (n, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (&(j, l), s) in op.terms() {
            let f = falling(n as i64, l);
            if f == 0 {
                continue;
            }
            let slot = out.entry(n as i64 + j as i64 - l as i64).or_insert_with(C::zero);
            *slot = slot.clone() + s.constant_term().clone() * c.clone() * C::from_int(f);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Solves `op f = 0` order by order for the coefficients `c₀..c_D`.
///
/// With `s = j − l` and `s_min` its minimum, the coefficient of `α^{n+s_min}`
/// in `op f` is `L(n) cₙ` plus terms in `c_m`, `m < n`, where
/// `L(n) = Σ_{s = s_min} c_{jl} n(n−1)…(n−l+1)`. When `L(n) ≠ 0` this fixes
/// `cₙ`. When `L(n) = 0` the index is free if the remaining terms vanish
/// (taking the seed, or `1` for the first free index and `0` after) and the
/// recurrence is singular otherwise.
///
/// `op` must not depend on `z`; evaluate it first with [`DiffOperator::at_z`].
pub fn series_solve<C: Scalar>(
    op: &DiffOperator<C>,
    degree: usize,
    seeds: &BTreeMap<usize, C>,
) -> Result<SeriesSolution<C>, BosonError> {
    if op.order() != 0 {
        return Err(BosonError::NotNumeric(op.order()));
    }
    if op.is_zero() {
        return Err(BosonError::DegenerateOperator);
    }
    let terms: Vec<(i64, u32, C)> =
        op.terms().iter().map(|(&(j, l), s)| (j as i64 - l as i64, l, s.constant_term().clone())).collect();
    let s_min = terms.iter().map(|t| t.0).min().expect("nonzero operator");
    if let Some((&n, _)) = seeds.range(degree + 1..).next() {
        return Err(BosonError::SeedNotFree(n));
    }

    let mut c: Vec<C> = Vec::with_capacity(degree + 1);
    let mut free = Vec::new();
    for n in 0..=degree {
        let mut head = C::zero();
        let mut rest = C::zero();
        for (s, l, coef) in &terms {
            if *s == s_min {
                head = head + coef.clone() * C::from_int(falling(n as i64, *l));
            } else {
                let m = n as i64 + s_min - s;
                if m >= 0 {
                    rest = rest + coef.clone() * C::from_int(falling(m, *l)) * c[m as usize].clone();
                }
            }
        }
        let value = if head.is_zero() {
            if !rest.is_zero() {
                return Err(BosonError::SingularRecurrence(n));
            }
            let v = seeds.get(&n).cloned().unwrap_or_else(|| if free.is_empty() { C::one() } else { C::zero() });
            free.push(n);
            v
        } else {
            if seeds.contains_key(&n) {
                return Err(BosonError::SeedNotFree(n));
            }
            let inv = head.try_inv().ok_or(BosonError::SingularRecurrence(n))?;
            -(rest * inv)
        };
        c.push(value);
    }
    let residual = apply(op, &c);
    Ok(SeriesSolution { coefficients: c, free_indices: free, shift: s_min, residual })
}

/// Settings for the eigenstate checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenChecks {
    pub problem: EigenProblem,
    /// Numeric value substituted for `z` in the deformed operator.
    #[serde(with = "crate::scalar::rational_string")]
    pub z: Rational,
    pub degree: usize,
}

impl Default for EigenChecks {
    fn default() -> Self {
        let c = |n: i64| ComplexRational::real(int(n));
        EigenChecks {
            problem: EigenProblem::new([c(1), c(1), c(1), c(1), c(1)], c(1)).expect("nonzero β"),
            z: frac(1, 10),
            degree: 30,
        }
    }
}

/// The three eigenstate certifications: the number operator has `αⁿ` as an
/// exact eigenfunction, the `B-`-only case follows `cₙ₊₂ = λcₙ/((n+1)(n+2))`,
/// and the first-order deformed operator annihilates its series solution
/// through degree `D + s_min`.
pub fn verify_eigen(cfg: &EigenChecks) -> Result<VerificationReport, BosonError> {
    let mut report = VerificationReport::new();
    let cr = |q: Rational| ComplexRational::real(q);

    for n in [0usize, 1, 3, 7] {
        let start = Instant::now();
        let p = EigenProblem::real([1, 0, 0, 0, 0], int(n as i64))?;
        let op = eigen_operator(&p, 0, EigenMode::Classical)?;
        let sol = series_solve(&op, 12, &BTreeMap::new())?;
        let mut expected = vec![ComplexRational::zero(); 13];
        expected[n] = ComplexRational::one();
        let ok = sol.coefficients == expected && sol.residual.is_empty();
        let detail = if ok { "0".to_string() } else { format!("{:?}", sol.coefficients) };
        report.push(
            CheckEntry::new("eigen", format!("boson/number-operator/n={n}")).outcome(ok, detail).since(start),
        );
    }

    let start = Instant::now();
    let lambda = cfg.problem.lambda.clone();
    let p = EigenProblem::new(
        [ComplexRational::zero(), ComplexRational::one(), ComplexRational::zero(), ComplexRational::zero(), ComplexRational::zero()],
        lambda.clone(),
    )?;
    let op = eigen_operator(&p, 0, EigenMode::Classical)?;
    let sol = series_solve(&op, cfg.degree, &BTreeMap::new())?;
    let mut bad = None;
    for n in 0..cfg.degree.saturating_sub(1) {
        let denom = cr(int(((n + 1) * (n + 2)) as i64));
        let expected = lambda.clone() * sol.coefficients[n].clone() * denom.try_inv().expect("nonzero");
        if sol.coefficients[n + 2] != expected {
            bad = Some(n);
            break;
        }
    }
    report.push(
        CheckEntry::new("eigen", "boson/b-minus-recurrence")
            .param("lambda", &lambda)
            .param("degree", cfg.degree)
            .outcome(bad.is_none(), bad.map_or("0".to_string(), |n| format!("recurrence broken at n={n}")))
            .since(start),
    );

    let start = Instant::now();
    let op = eigen_operator(&cfg.problem, 1, EigenMode::FirstOrder)?.at_z(&cr(cfg.z.clone()));
    let entry = CheckEntry::new("eigen", "boson/first-order-series")
        .param("beta", cfg.problem.beta.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","))
        .param("lambda", &cfg.problem.lambda)
        .param("z", &cfg.z)
        .param("degree", cfg.degree);
    let entry = match series_solve(&op, cfg.degree, &BTreeMap::new()) {
        Ok(sol) => {
            let bound = cfg.degree as i64 + sol.shift;
            let low: Vec<_> = sol.residual.iter().filter(|(&m, _)| m <= bound).collect();
            entry.outcome(low.is_empty(), if low.is_empty() { "0".to_string() } else { format!("{low:?}") })
        }
        Err(e) => entry.outcome(false, e.to_string()),
    };
    report.push(entry.since(start));

    let start = Instant::now();
    let first = eigen_operator(&cfg.problem, 1, EigenMode::FirstOrder)?;
    let full = eigen_operator(&cfg.problem, 2, EigenMode::Full)?.truncate(1)?;
    let res = &first - &full;
    report.push(
        CheckEntry::new("eigen", "boson/first-order-equals-full")
            .residual(res.is_zero(), || res.render())
            .since(start),
    );
    Ok(report)
}

/// Series coefficients as a JSON value with exact components.
pub fn solution_json(sol: &SeriesSolution<ComplexRational>) -> serde_json::Value {
    serde_json::json!({
        "coefficients": sol.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "free_indices": sol.free_indices,
        "shift": sol.shift,
        "residual": sol.residual.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn constant<C: Scalar>(c: C) -> TruncatedSeries<C> {
        TruncatedSeries::constant(c, 0)
    }

    fn c(q: Rational) -> ComplexRational {
        ComplexRational::real(q)
    }

    #[test]
    fn classical_operator_shape() {
        let p = EigenProblem::real([2, 3, 5, 7, 11], int(13)).unwrap();
        let op = eigen_operator(&p, 0, EigenMode::Classical).unwrap();
        // β₂∂² + (β₁α + β₄)∂ + (β₃α² + β₅α − λ)
        assert_eq!(op.render(), "-13 + 7*∂ + 3*∂^2 + 11*α + 2*α ∂ + 5*α^2");
    }

    #[test]
    fn first_order_operator_shape() {
        let p = EigenProblem::real([2, 3, 5, 7, 11], int(13)).unwrap();
        let op = eigen_operator(&p, 1, EigenMode::FirstOrder).unwrap();
        // coefficient of ∂ gains z(β₁α³ + β₂α + 3β₄α²/2)
        assert_eq!(op.coefficient(1, 1).to_string(), "2 + 3*z");
        assert_eq!(op.coefficient(3, 1).to_string(), "2*z");
        assert_eq!(op.coefficient(2, 1).to_string(), "21/2*z");
        assert_eq!(op.coefficient(3, 0).to_string(), "-11/2*z");
        assert_eq!(op.coefficient(2, 2).to_string(), "3*z");
    }

    #[test]
    fn number_operator_eigenfunction() {
        let p = EigenProblem::real([1, 0, 0, 0, 0], int(4)).unwrap();
        let op = eigen_operator(&p, 0, EigenMode::Classical).unwrap();
        assert_eq!(op.render(), "-4 + α ∂");
        let sol = series_solve(&op, 8, &BTreeMap::new()).unwrap();
        assert_eq!(sol.free_indices, vec![4]);
        assert_eq!(sol.coefficients[4], ComplexRational::one());
        assert!(sol.residual.is_empty());
    }

    #[test]
    fn seeds_and_errors() {
        let p = EigenProblem::real([0, 1, 0, 0, 0], int(2)).unwrap();
        let op = eigen_operator(&p, 0, EigenMode::Classical).unwrap();
        let seeds: BTreeMap<usize, ComplexRational> = [(1, c(int(3)))].into();
        let sol = series_solve(&op, 6, &seeds).unwrap();
        assert_eq!(sol.free_indices, vec![0, 1]);
        assert_eq!(sol.coefficients[0], c(int(1)));
        assert_eq!(sol.coefficients[1], c(int(3)));
        assert_eq!(sol.coefficients[3], c(int(1)));
        let seeds: BTreeMap<usize, ComplexRational> = [(2, c(int(1)))].into();
        assert_eq!(series_solve(&op, 6, &seeds).unwrap_err(), BosonError::SeedNotFree(2));
        assert_eq!(series_solve(&DiffOperator::<ComplexRational>::zero(0), 3, &BTreeMap::new()).unwrap_err(), BosonError::DegenerateOperator);
        let deformed = eigen_operator(&p, 1, EigenMode::FirstOrder).unwrap();
        assert_eq!(series_solve(&deformed, 3, &BTreeMap::new()).unwrap_err(), BosonError::NotNumeric(1));
        assert!(EigenProblem::real([0; 5], int(1)).is_err());
    }

    #[test]
    fn singular_recurrence_reports_index() {
        // α²∂² − α∂ + α: n(n−2)cₙ + cₙ₋₁ = 0, so c₀ is free, c₁ = 1, and
        // n = 2 would need 0·c₂ = −1.
        let mut op = DiffOperator::<Rational>::zero(0);
        op.add_term(2, 2, constant(int(1)));
        op.add_term(1, 1, constant(int(-1)));
        op.add_term(1, 0, constant(int(1)));
        assert_eq!(series_solve(&op, 4, &BTreeMap::new()).unwrap_err(), BosonError::SingularRecurrence(2));
        assert_eq!(series_solve(&op, 1, &BTreeMap::new()).unwrap().coefficients, vec![int(1), int(1)]);
    }

    #[test]
    fn deformed_solution_residual_vanishes_below_truncation() {
        let p = EigenProblem::real([1, 2, -1, 3, 1], frac(1, 3)).unwrap();
        let op = eigen_operator(&p, 1, EigenMode::FirstOrder).unwrap().at_z(&c(frac(1, 10)));
        let sol = series_solve(&op, 30, &BTreeMap::new()).unwrap();
        assert_eq!(sol.shift, -2);
        assert!(sol.residual.keys().all(|&m| m > 28));
        assert!(!sol.residual.is_empty());
    }
}
