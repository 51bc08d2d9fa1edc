use super::vector::{check_len, normalize};
use super::{DenseMatrix, Scalar};
use crate::{Error, Result};

/// Square compressed sparse row matrix.
///
/// Column indices are strictly increasing within each row and all stored
/// values are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Scalar>,
}

impl SparseMatrix {
    /// Builds a matrix from raw CSR arrays, validating every invariant.
    pub fn from_csr(
        n: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<Scalar>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidMatrix(msg));
        if row_ptr.len() != n + 1 {
            return bad(format!("row_ptr has length {}, expected {}", row_ptr.len(), n + 1));
        }
        if row_ptr[0] != 0 || row_ptr[n] != col_idx.len() || col_idx.len() != values.len() {
            return bad("row_ptr does not span col_idx/values".into());
        }
        for i in 0..n {
            if row_ptr[i] > row_ptr[i + 1] {
                return bad(format!("row_ptr decreases at row {i}"));
            }
            let cols = &col_idx[row_ptr[i]..row_ptr[i + 1]];
            if cols.iter().any(|&j| j >= n) {
                return bad(format!("column index out of range in row {i}"));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("column indices not strictly increasing in row {i}"));
            }
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return bad("non-finite value".into());
        }
        Ok(Self {
            n,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Assembles from `(row, col, value)` triplets. Duplicates are summed;
    /// explicit entries are kept even when zero.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let mut entries: Vec<(usize, usize, Scalar)> = triplets.into_iter().collect();
        if let Some(&(i, j, _)) = entries.iter().find(|&&(i, j, _)| i >= n || j >= n) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({i},{j}) outside a matrix of order {n}"
            )));
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(entries.len());
        let mut values: Vec<Scalar> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
            last = Some((i, j));
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self::from_csr(n, row_ptr, col_idx, values)
    }

    /// Sparse copy of a square dense matrix, dropping exact zeros.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        check_len(m.rows(), m.cols())?;
        let n = m.rows();
        let trip = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let v = m[(i, j)];
            (v != Scalar::new(0.0, 0.0)).then_some((i, j, v))
        });
        Self::from_triplets(n, trip)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Scalar::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        Self {
            n: d.len(),
            row_ptr: (0..=d.len()).collect(),
            col_idx: (0..d.len()).collect(),
            values: d.to_vec(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Entry `(i, j)`, zero when not stored.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => Scalar::new(0.0, 0.0),
        }
    }

    /// Iterates stored entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.n).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, self.col_idx[k], self.values[k]))
        })
    }

    /// `A·x`
    pub fn spmv(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        check_len(self.n, x.len())?;
        let mut y = vec![Scalar::new(0.0, 0.0); self.n];
        self.spmv_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn spmv_into(&self, x: &[Scalar], y: &mut [Scalar]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = Scalar::new(0.0, 0.0);
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *yi = acc;
        }
    }

    /// `A*·x` (conjugate transpose).
    pub fn spmv_adjoint(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        check_len(self.n, x.len())?;
        let mut y = vec![Scalar::new(0.0, 0.0); self.n];
        for (i, xi) in x.iter().enumerate() {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                y[self.col_idx[k]] += self.values[k].conj() * xi;
            }
        }
        Ok(y)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn norm_fro(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Lower estimate of the spectral norm by power iteration on `A*A`
    /// started from the all-ones vector.
    pub fn norm2_estimate(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let mut x = vec![Scalar::new(1.0, 0.0); self.n];
        normalize(&mut x);
        let mut sigma = 0.0;
        for _ in 0..50 {
            let ax = self.spmv(&x).expect("length matches");
            let mut y = self.spmv_adjoint(&ax).expect("length matches");
            let s = normalize(&mut y).sqrt();
            if s == 0.0 {
                break;
            }
            let done = (s - sigma).abs() <= 1e-12 * s;
            sigma = s;
            x = y;
            if done {
                break;
            }
        }
        // ‖A‖₂ ≥ max|a_ij| always; guards against a start vector in the null space.
        sigma.max(self.max_abs())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.triplets().all(|(i, j, v)| (v - self.get(j, i).conj()).norm() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector::unit;

    fn r(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    #[test]
    fn identity_spmv() {
        let a = SparseMatrix::identity(4);
        let x: Vec<Scalar> = [1.0, 2.0, 3.0, 4.0].iter().map(|&v| r(v)).collect();
        assert_eq!(a.spmv(&x).unwrap(), x);
    }

    #[test]
    fn rejects_bad_csr() {
        assert!(SparseMatrix::from_csr(2, vec![0, 1, 2], vec![1, 1], vec![r(1.0); 2]).is_ok());
        assert!(SparseMatrix::from_csr(2, vec![1, 1, 2], vec![1, 1], vec![r(1.0); 2]).is_err());
        assert!(SparseMatrix::from_csr(2, vec![0, 2, 2], vec![1, 0], vec![r(1.0); 2]).is_err());
        assert!(SparseMatrix::from_csr(2, vec![0, 1, 2], vec![0, 2], vec![r(1.0); 2]).is_err());
        assert!(SparseMatrix::from_csr(1, vec![0, 1], vec![0], vec![r(f64::NAN)]).is_err());
    }

    #[test]
    fn triplets_sum_duplicates() {
        let a = SparseMatrix::from_triplets(2, [(1, 0, r(1.0)), (0, 1, r(2.0)), (1, 0, r(3.0))]).unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(1, 0), r(4.0));
        assert_eq!(a.get(1, 1), r(0.0));
    }

    #[test]
    fn adjoint_product() {
        let a = SparseMatrix::from_triplets(2, [(0, 1, Scalar::new(0.0, 2.0))]).unwrap();
        // A* e0 = conj(a_01) e1
        assert_eq!(a.spmv_adjoint(&unit(2, 0)).unwrap(), vec![r(0.0), Scalar::new(0.0, -2.0)]);
    }

    #[test]
    fn spmv_dimension_mismatch() {
        assert!(matches!(
            SparseMatrix::identity(3).spmv(&unit(2, 0)),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }
}
