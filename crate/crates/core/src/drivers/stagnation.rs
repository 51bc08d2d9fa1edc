use serde::Serialize;

use super::SolveResult;
use crate::linalg::vector::{axpy, check_len, norm};
use crate::linalg::{re, Scalar};
use crate::projection::residual;
use crate::{Error, Result, SparseMatrix};

/// Number of trailing records that must agree for a plateau.
pub const PLATEAU_WINDOW: usize = 10;
const PLATEAU_RTOL: f64 = 1e-3;
const SINGULAR_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StagnationClass {
    Eigenvector,
    InvariantSubspace,
    SingularVectorStagnation,
}

impl StagnationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StagnationClass::Eigenvector => "eigenvector",
            StagnationClass::InvariantSubspace => "invariant-subspace",
            StagnationClass::SingularVectorStagnation => "singular-vector-stagnation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StagnationReport {
    /// Plateau value `α` of the residual norm.
    pub limit_resnorm: f64,
    /// `‖((A − θI)*(A − θI) − α²I)x‖` for the final vector `x`.
    pub singular_check: f64,
    /// Threshold `singular_check` was compared against.
    pub threshold: f64,
    pub classification: StagnationClass,
}

/// Classifies where a run ended up.
///
/// A run that met its tolerance is an eigenvector. Otherwise the last
/// [`PLATEAU_WINDOW`] residual norms must agree to a relative 1e-3, and the
/// final vector is tested for being a right singular vector of `A − θI` with
/// singular value `α`, to `1e-8‖A‖²`.
pub fn classify_stagnation(a: &SparseMatrix, result: &SolveResult) -> Result<StagnationReport> {
    let x = &result.eigenvector;
    check_len(a.n(), x.len())?;
    let last = result.history.last().ok_or(Error::EmptyHistory)?;
    let theta = result.eigenvalue;
    let anorm = a.norm2_estimate();
    let threshold = SINGULAR_RTOL * anorm * anorm;
    if result.final_resnorm <= result.tol {
        let alpha = result.final_resnorm;
        return Ok(StagnationReport {
            limit_resnorm: alpha,
            singular_check: singular_check(a, theta, x, alpha)?,
            threshold,
            classification: StagnationClass::Eigenvector,
        });
    }
    let n = result.history.len();
    if n < PLATEAU_WINDOW {
        return Err(Error::NotStagnant(format!("{n} records, need {PLATEAU_WINDOW}")));
    }
    let tail = &result.history[n - PLATEAU_WINDOW..];
    let hi = tail.iter().map(|h| h.resnorm).fold(f64::MIN, f64::max);
    let lo = tail.iter().map(|h| h.resnorm).fold(f64::MAX, f64::min);
    if !(hi - lo <= PLATEAU_RTOL * hi) {
        return Err(Error::NotStagnant(format!("residual norms span [{lo:e}, {hi:e}]")));
    }
    let alpha = last.resnorm;
    let check = singular_check(a, theta, x, alpha)?;
    let classification = if check <= threshold {
        StagnationClass::SingularVectorStagnation
    } else {
        StagnationClass::InvariantSubspace
    };
    Ok(StagnationReport {
        limit_resnorm: alpha,
        singular_check: check,
        threshold,
        classification,
    })
}

fn singular_check(a: &SparseMatrix, theta: Scalar, x: &[Scalar], alpha: f64) -> Result<f64> {
    let r = residual(a, theta, x)?;
    let mut w = a.spmv_adjoint(&r)?;
    axpy(-theta.conj(), &r, &mut w);
    axpy(re(-alpha * alpha), x, &mut w);
    Ok(norm(&w))
}
