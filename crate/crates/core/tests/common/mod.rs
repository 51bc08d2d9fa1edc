#![allow(dead_code)]

use jdx::linalg::vector::{dot, from_real, norm, normalized};
use jdx::{DenseMatrix, Scalar, SparseMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(x: f64) -> Scalar {
    Complex64::new(x, 0.0)
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    normalized(&from_real(&random_vec(rng, n)))
}

/// Random unit vector orthogonal to `u`.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, u: &[Scalar]) -> Vec<Scalar> {
    let mut x = from_real(&random_vec(rng, u.len()));
    let cu = dot(u, &x);
    for (xi, ui) in x.iter_mut().zip(u) {
        *xi -= cu * ui;
    }
    normalized(&x)
}

pub fn random_general(rng: &mut ChaCha8Rng, n: usize) -> SparseMatrix {
    let rows: Vec<Vec<Scalar>> = (0..n).map(|_| from_real(&random_vec(rng, n))).collect();
    SparseMatrix::from_dense(&DenseMatrix::from_rows(&rows)).unwrap()
}

/// Symmetric `Q·diag(d)·Qᵀ` with `Q` a product of three random reflectors.
/// Returns the matrix, `Q` by columns and `d`.
pub struct Spectral {
    pub a: SparseMatrix,
    pub q: Vec<Vec<f64>>,
    pub d: Vec<f64>,
}

pub fn random_spectral(rng: &mut ChaCha8Rng, n: usize) -> Spectral {
    let mut q: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| f64::from(u8::from(i == j))).collect()).collect();
    for _ in 0..3 {
        let h = random_vec(rng, n);
        let hh: f64 = h.iter().map(|x| x * x).sum();
        for col in q.iter_mut() {
            let p: f64 = h.iter().zip(col.iter()).map(|(a, b)| a * b).sum();
            for (ci, hi) in col.iter_mut().zip(&h) {
                *ci -= 2.0 * p / hh * hi;
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    d.sort_by(f64::total_cmp);
    let mut m = vec![vec![0.0; n]; n];
    for (k, col) in q.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += col[i] * d[k] * col[j];
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = s;
            m[j][i] = s;
        }
    }
    let rows: Vec<Vec<Scalar>> = m.iter().map(|r| from_real(r)).collect();
    Spectral {
        a: SparseMatrix::from_dense(&DenseMatrix::from_rows(&rows)).unwrap(),
        q,
        d,
    }
}

impl Spectral {
    /// `(A − θI)^{-2}u` through the eigendecomposition.
    pub fn inverse_square(&self, theta: f64, u: &[Scalar]) -> Vec<Scalar> {
        let n = u.len();
        let mut out = vec![c(0.0); n];
        for (col, &lam) in self.q.iter().zip(&self.d) {
            let coef: Scalar = col.iter().zip(u).map(|(q, x)| x * q).sum::<Scalar>() / (lam - theta).powi(2);
            for (o, q) in out.iter_mut().zip(col) {
                *o += coef * q;
            }
        }
        out
    }

    pub fn norm2(&self) -> f64 {
        self.d.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `d` and off-diagonal `e`, by Sturm-count bisection.
pub fn tridiag_max_eig(d: &[f64], e: &[f64]) -> f64 {
    let count_below = |x: f64| {
        let mut cnt = 0;
        let mut q = d[0] - x;
        if q < 0.0 {
            cnt += 1;
        }
        for i in 1..d.len() {
            let qq = if q == 0.0 { f64::EPSILON } else { q };
            q = d[i] - x - e[i - 1] * e[i - 1] / qq;
            if q < 0.0 {
                cnt += 1;
            }
        }
        cnt
    };
    let bound = d.iter().map(|x| x.abs()).fold(0.0, f64::max) + 2.0 * e.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) < d.len() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn cosine(x: &[Scalar], y: &[Scalar]) -> f64 {
    dot(x, y).norm() / (norm(x) * norm(y))
}
