//! Exact field arithmetic and subspace linear algebra.
//!
//! Everything downstream (laws, pattern spaces, kernels, images) is a
//! [`Subspace`] in canonical reduced row-echelon form, so subspace equality is
//! a plain entry-wise comparison.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::Matrix;
pub use subspace::{image, kernel, rref, solve, Subspace};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unknown field {0:?}")]
    BadField(String),
    #[error("value {value:?} is not reducible modulo {p}")]
    NotReducible { value: String, p: u64 },
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}
