//! Dense and sparse kernels over complex double precision scalars.
//!
//! Everything is complex even when the input matrix is real, so there is a
//! single code path for Hermitian and non-Hermitian problems.

mod dense;
mod eig;
mod lu;
mod sparse;
pub mod vector;

pub use dense::DenseMatrix;
pub use eig::{small_eig, small_svd_min, EigPair};
pub use lu::{lu_solve, LuFactors};
pub use sparse::SparseMatrix;
pub use vector::mgs_orthonormalize;

/// Complex double precision scalar.
pub type Scalar = num_complex::Complex64;

/// Shorthand for a real value as a [`Scalar`].
#[inline]
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}
