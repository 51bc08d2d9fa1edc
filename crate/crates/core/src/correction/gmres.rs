//! Unrestarted GMRES with a fixed step budget.

use crate::linalg::vector::{axpy, dot, norm, scale};
use crate::linalg::Scalar;
use crate::Result;

#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<Scalar>,
    pub iterations: usize,
    /// Residual norm estimate `‖b − Mx‖` from the least-squares problem.
    pub residual: f64,
}

/// Runs at most `steps` Arnoldi steps (modified Gram-Schmidt) from a zero
/// initial guess, stopping early when the residual estimate drops below
/// `rtol·‖b‖` or the Krylov space becomes invariant.
pub fn gmres<F>(apply: F, b: &[Scalar], steps: usize, rtol: f64) -> Result<GmresOutcome>
where
    F: Fn(&[Scalar]) -> Result<Vec<Scalar>>,
{
    let n = b.len();
    let zero = Scalar::new(0.0, 0.0);
    let beta = norm(b);
    if beta == 0.0 {
        return Ok(GmresOutcome {
            x: vec![zero; n],
            iterations: 0,
            residual: 0.0,
        });
    }
    let m = steps.min(n).max(1);
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(m + 1);
    let mut v0 = b.to_vec();
    scale(Scalar::new(1.0 / beta, 0.0), &mut v0);
    basis.push(v0);

    // h[j] is column j of the (rotated) Hessenberg matrix, length j + 2
    let mut h: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut rot: Vec<(f64, Scalar)> = Vec::with_capacity(m);
    let mut g = vec![zero; m + 1];
    g[0] = Scalar::new(beta, 0.0);
    let mut used = 0;

    for j in 0..m {
        let mut w = apply(&basis[j])?;
        let w_in = norm(&w);
        let mut col = vec![zero; j + 2];
        for (i, vi) in basis.iter().enumerate() {
            let c = dot(vi, &w);
            axpy(-c, vi, &mut w);
            col[i] = c;
        }
        let hnext = norm(&w);
        col[j + 1] = Scalar::new(hnext, 0.0);

        for (i, &(c, s)) in rot.iter().enumerate() {
            let (x, y) = (col[i], col[i + 1]);
            col[i] = c * x + s * y;
            col[i + 1] = -s.conj() * x + c * y;
        }
        let (c, s) = givens(col[j], col[j + 1]);
        col[j] = c * col[j] + s * col[j + 1];
        col[j + 1] = zero;
        g[j + 1] = -s.conj() * g[j];
        g[j] *= c;
        rot.push((c, s));
        h.push(col);
        used = j + 1;

        let breakdown = hnext <= 1e-14 * w_in.max(f64::MIN_POSITIVE);
        if g[j + 1].norm() <= rtol * beta || breakdown {
            break;
        }
        if j + 1 < m {
            scale(Scalar::new(1.0 / hnext, 0.0), &mut w);
            basis.push(w);
        }
    }

    let mut y = vec![zero; used];
    for i in (0..used).rev() {
        let mut acc = g[i];
        for k in i + 1..used {
            acc -= h[k][i] * y[k];
        }
        y[i] = if h[i][i] == zero { zero } else { acc / h[i][i] };
    }
    let mut x = vec![zero; n];
    for (vi, yi) in basis.iter().zip(&y) {
        axpy(*yi, vi, &mut x);
    }
    Ok(GmresOutcome {
        x,
        iterations: used,
        residual: g[used].norm(),
    })
}

fn givens(a: Scalar, b: Scalar) -> (f64, Scalar) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Scalar::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::from_real;
    use crate::linalg::{lu_solve, DenseMatrix};

    #[test]
    fn full_dimension_matches_direct_solve() {
        let n = 40;
        // SPD: tridiag(-1, 4, -1) plus a low-rank term
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::new(4.0 + i as f64 / 10.0, 0.0);
            if i + 1 < n {
                m[(i, i + 1)] = Scalar::new(-1.0, 0.0);
                m[(i + 1, i)] = Scalar::new(-1.0, 0.0);
            }
        }
        let b: Vec<Scalar> = (0..n).map(|i| Scalar::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let out = gmres(|x| m.matvec(x), &b, n, 0.0).unwrap();
        let direct = lu_solve(&m, &b).unwrap();
        let diff = norm(&crate::linalg::vector::sub(&out.x, &direct));
        assert!(diff <= 1e-8 * norm(&direct), "diff {diff}");
    }

    #[test]
    fn step_budget_is_respected() {
        let m = DenseMatrix::diagonal(&from_real(&(1..=20).map(f64::from).collect::<Vec<_>>()));
        let b = vec![Scalar::new(1.0, 0.0); 20];
        let out = gmres(|x| m.matvec(x), &b, 5, 1e-13).unwrap();
        assert_eq!(out.iterations, 5);
        assert!(out.residual > 0.0);
        let r = crate::linalg::vector::sub(&b, &m.matvec(&out.x).unwrap());
        assert!((norm(&r) - out.residual).abs() < 1e-10);
    }

    #[test]
    fn lucky_breakdown_returns_iterate() {
        let m = DenseMatrix::identity(6);
        let b = from_real(&[1.0, 2.0, 0.0, 0.0, 0.0, 3.0]);
        let out = gmres(|x| m.matvec(x), &b, 6, 0.0).unwrap();
        assert_eq!(out.iterations, 1);
        assert!(norm(&crate::linalg::vector::sub(&out.x, &b)) < 1e-15);
    }

    #[test]
    fn zero_rhs() {
        let m = DenseMatrix::identity(3);
        let out = gmres(|x| m.matvec(x), &[Scalar::new(0.0, 0.0); 3], 3, 0.0).unwrap();
        assert_eq!(out.iterations, 0);
        assert!(out.x.iter().all(|z| z.norm() == 0.0));
    }
}
