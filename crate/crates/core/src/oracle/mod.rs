//! Brute-force checks independent of the diagram machinery: finite-field
//! enumeration of nilpotent matrices, Jordan types, Frobenius fixed points,
//! and exact centralizer dimensions.

pub mod centralizer;
pub mod enumerate;
pub mod field;
pub mod matrix;

pub use centralizer::{centralizer_dim, orthogonal_representatives, rational_jordan, Ambient};
pub use enumerate::{
    budget_from_env, count_nilpotent, enumerate_nilpotent, find_fixed_point, verify_orbit_stability, MatrixFrobenius,
    VerificationReport, BUDGET_ENV, DEFAULT_BUDGET,
};
pub use field::{FiniteField, FqElement};
pub use matrix::{jordan_type, standard_frobenius, twisted_frobenius_a, FqMatrix, JordanType};
