//! Exact field arithmetic (rationals and prime fields) and the dense/sparse
//! elimination routines built on it.

mod linalg;
mod scalar;

pub use linalg::{Matrix, RowEchelon, SparseRow};
pub use scalar::{FieldSpec, PrimeModulus, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range (< 2^32)")]
    ModulusTooLarge(u64),
    #[error("unknown field `{0}` (expected `rationals` or `GF(p)`)")]
    UnknownField(String),
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    RaggedMatrix { row: usize, len: usize, expected: usize },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
}
