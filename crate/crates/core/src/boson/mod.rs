//! Differential operators on the Fock–Bargmann space, the classical and
//! deformed one-boson representations, and the eigenstate equation.

mod diffop;
mod eigen;
mod laurent;
mod rep;

use thiserror::Error;

pub use diffop::{falling, DiffOperator};
pub use eigen::{
    apply, eigen_operator, series_solve, solution_json, verify_eigen, EigenChecks, EigenMode, EigenProblem,
    SeriesSolution,
};
pub use laurent::LaurentPoly;
pub use rep::{
    classical_generator, classical_rep, deformed_generator, deformed_rep, first_order_rep, oscillator_bracket,
    represent, verify_rep, Rep,
};

use crate::nc_hopf::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BosonError {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("α^{alpha_power} survives at z^{z_power} in the image of {generator}")]
    NegativeAlphaPower { generator: String, z_power: usize, alpha_power: i32 },
    #[error("series arithmetic failed: {0}")]
    Series(String),
    #[error("operator is zero")]
    DegenerateOperator,
    #[error("recurrence is singular at n = {0}")]
    SingularRecurrence(usize),
    #[error("a seed was given for c_{0}, which the recurrence determines")]
    SeedNotFree(usize),
    #[error("operator still depends on z (order {0}); substitute a value first")]
    NotNumeric(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
