use thiserror::Error;

use crate::roottypes::DynkinType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("type mismatch: {left} vs {right}")]
    TypeMismatch { left: DynkinType, right: DynkinType },

    #[error("not a diagram automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("orbit parameterization for {0} is not in scope (only types A and D)")]
    UnsupportedFamily(DynkinType),

    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),

    #[error("closure of decorated orbits is out of scope: {0}")]
    DecoratedClosure(String),

    #[error("closure is only implemented for type A, got {0}")]
    ClosureUnsupported(DynkinType),

    #[error("partitions must have equal totals ({0} vs {1})")]
    UnequalTotals(usize, usize),

    #[error("invalid weighted Dynkin diagram: {0}")]
    InvalidDiagram(String),

    #[error("not a weighted Dynkin diagram of this root system: {0}")]
    NotIntegral(String),

    #[error("no diagram available for {0}; supply one explicitly")]
    DiagramUnavailable(String),

    #[error("unknown Frobenius morphism {name:?} for {dynkin_type}")]
    UnknownFrobenius { dynkin_type: DynkinType, name: String },

    #[error("characteristic hypothesis violated: {0}")]
    BadCharacteristic(String),

    #[error("enumeration budget exceeded: {required} matrices required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix does not lie in the ambient algebra: {0}")]
    NotInAlgebra(String),
}
