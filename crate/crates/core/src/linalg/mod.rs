//! Exact linear algebra over a prime field GF(p), p ≥ 3.

mod field;
mod mat;
mod sparse;
mod subspace;

pub use field::{Fp, Scalar};
pub use mat::{Mat, Rref};
pub use sparse::{normalize_row, SparseRow, SparseSystem};
pub use subspace::{subspace_ops, SpanSolver, Subspace, SubspaceJson, SubspaceOps};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("characteristic {0} rejected: need an odd prime p >= 3")]
    InvalidCharacteristic(u32),
    #[error("mixed characteristics {0} and {1}")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
}

/// `a + c·b` in place.
pub(crate) fn axpy(field: Fp, a: &mut [u32], c: u32, b: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = field.add(*x, field.mul(c, y));
        }
    }
}

pub fn rref(m: &Mat) -> Rref {
    m.rref()
}

pub fn kernel(m: &Mat) -> Subspace {
    m.kernel()
}
