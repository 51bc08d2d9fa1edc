//! Small dense eigensolver: Householder reduction to Hessenberg form,
//! single-shift complex QR iteration to Schur form, eigenvectors by back
//! substitution on the triangular factor.

use super::vector::{check_len, norm, normalize};
use super::{DenseMatrix, Scalar};
use crate::{Error, Result};

const ZERO: Scalar = Scalar::new(0.0, 0.0);
const ONE: Scalar = Scalar::new(1.0, 0.0);

/// Eigenvalue with a unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigPair {
    pub value: Scalar,
    pub vector: Vec<Scalar>,
}

/// All eigenpairs of a small square matrix, in Schur-diagonal order.
pub fn small_eig(h: &DenseMatrix) -> Result<Vec<EigPair>> {
    check_len(h.rows(), h.cols())?;
    let n = h.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut t = h.clone();
    let mut z = DenseMatrix::identity(n);
    hessenberg(&mut t, &mut z);
    schur(&mut t, &mut z)?;
    Ok(eigvecs_from_schur(&t, &z))
}

/// Smallest singular value of a tall matrix and its right singular vector,
/// via the eigendecomposition of the Gram matrix `M*M`. The returned sigma
/// is recomputed as `‖M v‖`.
pub fn small_svd_min(m: &DenseMatrix) -> Result<(f64, Vec<Scalar>)> {
    if m.rows() < m.cols() || m.cols() == 0 {
        return Err(Error::BadParameter(format!(
            "small_svd_min needs rows >= cols >= 1, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let k = m.cols();
    let mut gram = DenseMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let g: Scalar = (0..m.rows()).map(|r| m[(r, i)].conj() * m[(r, j)]).sum();
            gram[(i, j)] = g;
            gram[(j, i)] = g.conj();
        }
        gram[(i, i)] = Scalar::new(gram[(i, i)].re, 0.0);
    }
    let pairs = small_eig(&gram)?;
    let best = pairs
        .into_iter()
        .min_by(|a, b| a.value.re.total_cmp(&b.value.re))
        .expect("k >= 1");
    let mv = m.matvec(&best.vector)?;
    Ok((norm(&mv), best.vector))
}

fn hessenberg(h: &mut DenseMatrix, z: &mut DenseMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Scalar> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = norm(&v);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 { ONE } else { v[0] / v[0].norm() };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        if normalize(&mut v) == 0.0 {
            continue;
        }
        // H ← (I − 2vv*) H
        for j in 0..n {
            let s: Scalar = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= 2.0 * vr * s;
            }
        }
        // H ← H (I − 2vv*),  Z ← Z (I − 2vv*)
        for m in [&mut *h, &mut *z] {
            for i in 0..n {
                let s: Scalar = v.iter().enumerate().map(|(r, vr)| m[(i, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= 2.0 * s * vr.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [−s̄, c]]` with `G·[a; b] = [ρ; 0]`.
fn givens(a: Scalar, b: Scalar) -> (f64, Scalar) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn wilkinson_shift(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Scalar {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn schur(h: &mut DenseMatrix, z: &mut DenseMatrix) -> Result<()> {
    let n = h.rows();
    let cap = 30 * n;
    let scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let mut rots: Vec<(f64, Scalar)> = Vec::with_capacity(n);
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence(total));
        }
        total += 1;
        its += 1;
        let shift = if its.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Scalar::new(1.5 * h[(hi, hi - 1)].norm(), 0.5 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        rots.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = lo + off;
            for i in 0..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = c * x + s.conj() * y;
                h[(i, k + 1)] = -s * x + c * y;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = c * x + s.conj() * y;
                z[(i, k + 1)] = -s * x + c * y;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(())
}

fn eigvecs_from_schur(t: &DenseMatrix, z: &DenseMatrix) -> Vec<EigPair> {
    let n = t.rows();
    let small = (f64::EPSILON * t.norm_fro()).max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let mut y = vec![ZERO; n];
            y[k] = ONE;
            for i in (0..k).rev() {
                let s: Scalar = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
                let mut d = t[(i, i)] - lambda;
                if d.norm() < small {
                    d = Scalar::new(small, 0.0);
                }
                y[i] = -s / d;
                let big = y[i].norm();
                if big > 1e100 {
                    for v in y.iter_mut() {
                        *v /= big;
                    }
                }
            }
            let mut x = z.matvec(&y).expect("square");
            normalize(&mut x);
            EigPair { value: lambda, vector: x }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::{from_real, unit};

    fn sorted_re(pairs: &[EigPair]) -> Vec<f64> {
        let mut v: Vec<f64> = pairs.iter().map(|p| p.value.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn diagonal_matrix() {
        let h = DenseMatrix::diagonal(&from_real(&[3.0, 1.0, 2.0]));
        let pairs = small_eig(&h).unwrap();
        assert_eq!(sorted_re(&pairs), vec![1.0, 2.0, 3.0]);
        for p in &pairs {
            let idx = [3.0, 1.0, 2.0].iter().position(|&x| x == p.value.re).unwrap();
            let e = unit(3, idx);
            let overlap = crate::linalg::vector::dot(&e, &p.vector).norm();
            assert!((overlap - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn swap_block() {
        let h = DenseMatrix::from_real_rows(&[&[0.0, 2.0], &[2.0, 0.0]]);
        let vals = sorted_re(&small_eig(&h).unwrap());
        assert!((vals[0] + 2.0).abs() < 1e-14 && (vals[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rotation_has_complex_pair() {
        let h = DenseMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let pairs = small_eig(&h).unwrap();
        let mut im: Vec<f64> = pairs.iter().map(|p| p.value.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);
        for p in &pairs {
            assert!(p.value.re.abs() < 1e-14);
        }
    }

    #[test]
    fn repeated_eigenvalues_give_independent_vectors() {
        let pairs = small_eig(&DenseMatrix::identity(3)).unwrap();
        let v = DenseMatrix::from_columns(&pairs.iter().map(|p| p.vector.clone()).collect::<Vec<_>>());
        let g = v.adjoint().matmul(&v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - Scalar::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn svd_min_diagonal() {
        let m = DenseMatrix::diagonal(&from_real(&[3.0, 1.0, 2.0]));
        let (s, v) = small_svd_min(&m).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
        assert!((v[1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_min_tall() {
        let m = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1e-3], &[0.0, 0.0]]);
        let (s, v) = small_svd_min(&m).unwrap();
        assert!((s - 1e-3).abs() < 1e-15);
        assert!((v[1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_rejects_wide() {
        assert!(small_svd_min(&DenseMatrix::zeros(1, 2)).is_err());
    }
}
