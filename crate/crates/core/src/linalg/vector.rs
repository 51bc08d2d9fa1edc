//! Vector kernels on `[Scalar]` slices.

use super::Scalar;
use crate::{Error, Result};

/// Relative drop tolerance for [`mgs_orthonormalize`].
pub const DROP_TOL: f64 = 1e-12;

/// Conjugated inner product `x* y`.
#[inline]
pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

#[inline]
pub fn norm(x: &[Scalar]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `y ← y + alpha·x`
#[inline]
pub fn axpy(alpha: Scalar, x: &[Scalar], y: &mut [Scalar]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: Scalar, x: &mut [Scalar]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// `x − y`
pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Scales `x` to unit norm and returns the original norm. A zero vector is
/// left untouched.
pub fn normalize(x: &mut [Scalar]) -> f64 {
    let nrm = norm(x);
    if nrm > 0.0 {
        scale(Scalar::new(1.0 / nrm, 0.0), x);
    }
    nrm
}

pub fn normalized(x: &[Scalar]) -> Vec<Scalar> {
    let mut v = x.to_vec();
    normalize(&mut v);
    v
}

/// Applies the orthogonal projector `I − uu*` in place (`u` unit).
pub fn project_out(u: &[Scalar], x: &mut [Scalar]) {
    let c = dot(u, x);
    axpy(-c, u, x);
}

/// Coordinate vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::new(0.0, 0.0); n];
    e[i] = Scalar::new(1.0, 0.0);
    e
}

pub fn from_real(x: &[f64]) -> Vec<Scalar> {
    x.iter().map(|&v| Scalar::new(v, 0.0)).collect()
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Orthonormalizes `t` against the orthonormal columns `basis` with modified
/// Gram-Schmidt followed by one unconditional reorthogonalization pass.
///
/// Returns [`Error::Deflated`] when the projected part of `t` is below
/// `DROP_TOL·‖t‖` (or `t` is zero).
pub fn mgs_orthonormalize(basis: &[Vec<Scalar>], t: &[Scalar]) -> Result<Vec<Scalar>> {
    for v in basis {
        check_len(v.len(), t.len())?;
    }
    let t_norm = norm(t);
    let mut w = t.to_vec();
    for _pass in 0..2 {
        for v in basis {
            let c = dot(v, &w);
            axpy(-c, v, &mut w);
        }
    }
    let w_norm = norm(&w);
    if t_norm == 0.0 || !w_norm.is_finite() || w_norm <= DROP_TOL * t_norm {
        return Err(Error::Deflated(w_norm));
    }
    scale(Scalar::new(1.0 / w_norm, 0.0), &mut w);
    Ok(w)
}
