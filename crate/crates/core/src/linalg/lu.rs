use super::vector::check_len;
use super::{DenseMatrix, Scalar};
use crate::{Error, Result};

/// Partial-pivoting LU factors `P·M = L·U` of a square matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factors `m`, failing with [`Error::Singular`] when a pivot magnitude
    /// falls below `n·ε·max|M|`.
    pub fn new(m: &DenseMatrix) -> Result<Self> {
        check_len(m.rows(), m.cols())?;
        let n = m.rows();
        let threshold = n as f64 * f64::EPSILON * m.max_abs();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= threshold {
                return Err(Error::Singular {
                    col: k,
                    pivot,
                    threshold,
                });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let inv = Scalar::new(1.0, 0.0) / lu[(k, k)];
            let (top, below) = lu.as_mut_slice().split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n + k + 1..(k + 1) * n];
            for row in below.chunks_exact_mut(n) {
                let l = row[k] * inv;
                row[k] = l;
                if l == Scalar::new(0.0, 0.0) {
                    continue;
                }
                for (x, &ukj) in row[k + 1..].iter_mut().zip(pivot_row) {
                    *x -= l * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.order();
        check_len(n, b.len())?;
        let mut x: Vec<Scalar> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
pub fn lu_solve(m: &DenseMatrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    check_len(m.rows(), b.len())?;
    LuFactors::new(m)?.solve(b)
}
