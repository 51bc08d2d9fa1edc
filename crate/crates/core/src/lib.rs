//! Jacobi-Davidson eigensolvers for large sparse matrices.
//!
//! Besides the classical correction equation this crate implements the
//! least-squares ("modified") correction equation, in which the expansion
//! vector `t ⊥ u` minimizes `‖(A − θI)(u + (I − uu*)t)‖`. Four correction
//! equations are available (see [`correction::CorrectionVariant`]), solved
//! either by dense Gaussian elimination on the materialized projected system
//! or by a few steps of unrestarted GMRES.
//!
//! The outer iterations live in [`drivers`]: an expanding-subspace method,
//! a simplified method without subspace, and a restarted method. Pair
//! extraction (Rayleigh-Ritz, harmonic Rayleigh-Ritz, refined vectors) is in
//! [`projection`]. Test matrices, Matrix Market / Harwell-Boeing readers and
//! convergence-history writers are in [`matio`].

pub mod cli;
pub mod correction;
pub mod drivers;
mod error;
pub mod linalg;
pub mod matio;
pub mod projection;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Scalar, SparseMatrix};
