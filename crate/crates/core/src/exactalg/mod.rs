//! Exact arithmetic kernel: arbitrary-precision integer matrices, dense
//! matrices over the two-element field, and integer polynomials.

mod f2;
mod matrix;
mod poly;

pub use f2::F2Matrix;
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// JSON view of an integer: a number when it fits in `i64`, otherwise its
/// decimal string.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}

/// Characteristic polynomial `det(ζI − m)`.
pub fn charpoly(m: &IntMatrix) -> Result<IntPolynomial, AlgebraError> {
    m.charpoly()
}

pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// `f(ζ + a)`.
pub fn poly_shift(f: &IntPolynomial, a: i64) -> IntPolynomial {
    f.shift(&a.into())
}

/// Exact divisibility of `f` by `d` in ℤ[ζ].
pub fn poly_divides(d: &IntPolynomial, f: &IntPolynomial) -> Result<bool, AlgebraError> {
    d.divides(f)
}
