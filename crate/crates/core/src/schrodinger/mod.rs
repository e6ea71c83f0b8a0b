//! The quantum Schrödinger generators realized on functions of `(x, t)`
//! with an exact time shift, the deformed Casimir and the discrete-time
//! Schrödinger equation it defines, its symmetries, and explicit solutions.

mod operator;
mod realization;
mod solutions;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use operator::{Monomial, SchrodingerOperator};
pub use realization::{
    bracket_table, casimir, discrete_derivative, divide_by_casimir, expected_lambda, realize, symmetry_check,
    symmetry_outcome, verify_realization, verify_symmetries, Direction, Lambda, RealizationParams, SymmetryOutcome,
    GENERATORS,
};
pub use solutions::{
    apply_and_recheck, exact_solutions, exponential_solution, heat_polynomial, kappa_label, operator_function_gap,
    sample_csv, verify_solutions, ExpPolyFunction, Family, FnTerm, Solution, SolutionRecord, TermRecord,
};

use crate::nc_hopf::{sch, schrodinger11, AlgebraError, NCElement};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, int, rational_string, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchrodingerError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("z must be positive, got {0}")]
    NonPositiveZ(Rational),
    #[error("mass must be nonzero")]
    ZeroMass,
    #[error("κ = {0} makes 1 − 2zκ²/m vanish")]
    DegenerateKappa(Rational),
    #[error("per-step factor ρ must be nonzero")]
    ZeroStepFactor,
    #[error("operator built for z = {0}, function for z = {1}")]
    ZMismatch(String, String),
    #[error("input is not a solution: E φ = {0}")]
    NotASolution(String),
    #[error("csv output failed: {0}")]
    Csv(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Truncation order used for the closure record; the letters occurring in
/// the relations do not change beyond first order.
pub const GALILEI_ORDER: usize = 3;

/// Closure of `{K, H, P, M}` under the bracket of the quantum algebra: every
/// right-hand side among these generators may only contain their letters.
pub fn galilei_closure(order: usize) -> Result<VerificationReport, SchrodingerError> {
    let spec = schrodinger11(order)?;
    let subset = [sch::K, sch::H, sch::P, sch::M];
    let mut report = VerificationReport::new();
    for (&(x, y), rhs) in spec.relations() {
        if !subset.contains(&x) || !subset.contains(&y) {
            continue;
        }
        let start = Instant::now();
        let mut outside = NCElement::zero(order);
        for (w, c) in rhs.terms() {
            if w.iter().any(|g| !subset.contains(g)) {
                outside.add_term(w.clone(), c.clone());
            }
        }
        let gens = spec.generators();
        let name = format!("galilei-closure/[{},{}]", gens[x as usize], gens[y as usize]);
        let entry = CheckEntry::new("discrete-se", name).param("k", order);
        report.push(entry.residual(outside.is_zero(), || spec.render(&outside)).since(start));
    }
    Ok(report)
}

/// Parameters for the discrete-equation suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteChecks {
    #[serde(with = "rational_string")]
    pub z: Rational,
    #[serde(with = "rational_string")]
    pub m: Rational,
    #[serde(with = "rational_string")]
    pub a: Rational,
    /// Highest heat-polynomial degree.
    pub degree: u32,
    #[serde(with = "rational_list")]
    pub kappas: Vec<Rational>,
}

impl Default for DiscreteChecks {
    fn default() -> Self {
        DiscreteChecks {
            z: frac(1, 10),
            m: int(1),
            a: frac(-1, 2),
            degree: 5,
            kappas: vec![int(1), frac(-1, 2), frac(2, 3)],
        }
    }
}

mod rational_list {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Realization, symmetries and solutions in deformed and classical mode, plus
/// the Galilei closure record.
pub fn verify_discrete(cfg: &DiscreteChecks) -> Result<VerificationReport, SchrodingerError> {
    let mut report = galilei_closure(GALILEI_ORDER)?;
    let deformed = RealizationParams::deformed(cfg.z.clone(), cfg.m.clone(), cfg.a.clone());
    let classical = RealizationParams::classical(cfg.m.clone(), cfg.a.clone());
    for p in [&deformed, &classical] {
        report.merge(verify_realization(p)?);
        report.merge(verify_symmetries(p)?);
        report.merge(verify_solutions(p, cfg.degree, &cfg.kappas)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galilei_generators_close() {
        let r = galilei_closure(2).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.all_passed(), "{}", r.render_text());
    }
}
