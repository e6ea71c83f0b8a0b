//! Noncommutative PBW engine for the deformed generator algebras, tensor
//! powers, Hopf-axiom and universal R-matrix verification.

mod builtin;
mod element;
mod spec;
mod transport;
mod verify;

use thiserror::Error;

pub use builtin::{builtin, h6, sch, h6_twophoton, schrodinger11, H6, H6_GENERATORS, SCHRODINGER, SCH_GENERATORS};
pub use element::{is_normal_word, NCElement, TensorElement, Word};
pub use spec::{AlgebraSpec, RawExpr, DEFAULT_FUEL};
pub use transport::{substitute_word, transport_structure, verify_spec_equality, LinearSubstitution};
pub use verify::{verify_hopf, verify_rmatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("normal ordering exceeded {limit} rewrite steps while reducing `{word}`")]
    FuelExhausted { limit: u64, word: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("relation [{0},{1}] is missing")]
    MissingRelation(String, String),
    #[error("relation [{0},{1}] is not in PBW normal form")]
    RelationNotNormal(String, String),
    #[error("relation key ({0},{1}) must list the larger generator first")]
    BadRelationKey(u8, u8),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("algebra `{0}` has no Hopf structure attached")]
    NoHopfStructure(String),
    #[error("tensor exponential needs an exponent without z^0 part")]
    NotNilpotent,
    #[error("transport failed: {0}")]
    Transport(String),
}
