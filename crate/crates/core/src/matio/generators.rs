use super::MatrixSource;
use crate::linalg::{re, DenseMatrix, Scalar};
use crate::{Error, Result, SparseMatrix};

/// Names accepted by [`gen_matrix`].
pub const GENERATORS: [&str; 5] = ["example1", "diag100", "blockdiag-complex", "tridiag200", "qtq100"];

/// Builds one of the built-in test matrices.
///
/// * `example1`: the 4×4 matrix whose projected correction operator is singular.
/// * `diag100`: `diag((j/n)² − 0.8)`, `j = 1..n`, default `n = 100`.
/// * `blockdiag-complex`: `diag{[0.8+0.1i, 0; 0, 0.8−0.1i], diag100}`, order 102.
/// * `tridiag200`: `tridiag(1, 2.4 + i/2, 1)` with last diagonal entry `2.4 + n/1.5`.
/// * `qtq100`: `Q·T·Q` with `T = tridiag(−1, 2, −1)` and `Q` the Householder
///   reflector of `h_i = √(i + 0.45)`. The diagonal 2 gives the largest
///   eigenvalue `2 + 2cos(π/101) ≈ 3.99903256`.
pub fn gen_matrix(source: &MatrixSource) -> Result<SparseMatrix> {
    let (name, order) = match source {
        MatrixSource::Generator { name, order } => (name.as_str(), *order),
        MatrixSource::File { .. } => return Err(Error::BadParameter("not a generator source".into())),
    };
    let sized = |default: usize| -> Result<usize> {
        match order {
            None => Ok(default),
            Some(n) if n >= 2 => Ok(n),
            Some(n) => Err(Error::BadParameter(format!("order {n} too small for {name}"))),
        }
    };
    let fixed = || -> Result<()> {
        match order {
            None => Ok(()),
            Some(_) => Err(Error::BadParameter(format!("{name} has a fixed order"))),
        }
    };
    match name {
        "example1" => {
            fixed()?;
            SparseMatrix::from_triplets(4, [(0, 0, re(1.0)), (1, 2, re(2.0)), (2, 1, re(2.0)), (3, 3, re(1.0))])
        }
        "diag100" => Ok(SparseMatrix::diagonal(&diag_entries(sized(100)?))),
        "blockdiag-complex" => {
            fixed()?;
            let mut d = vec![Scalar::new(0.8, 0.1), Scalar::new(0.8, -0.1)];
            d.extend(diag_entries(100));
            Ok(SparseMatrix::diagonal(&d))
        }
        "tridiag200" => tridiag(sized(200)?),
        "qtq100" => qtq(sized(100)?),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

fn diag_entries(n: usize) -> Vec<Scalar> {
    (1..=n).map(|j| re((j as f64 / n as f64).powi(2) - 0.8)).collect()
}

fn tridiag(n: usize) -> Result<SparseMatrix> {
    let mut trip = Vec::with_capacity(3 * n);
    for i in 0..n {
        let idx = (i + 1) as f64;
        let d = if i + 1 == n { 2.4 + idx / 1.5 } else { 2.4 + idx / 2.0 };
        if i > 0 {
            trip.push((i, i - 1, re(1.0)));
        }
        trip.push((i, i, re(d)));
        if i + 1 < n {
            trip.push((i, i + 1, re(1.0)));
        }
    }
    SparseMatrix::from_triplets(n, trip)
}

/// Householder reflector `I − 2hh*/‖h‖²`.
pub fn householder_reflector(h: &[Scalar]) -> DenseMatrix {
    let n = h.len();
    let hh: f64 = h.iter().map(|x| x.norm_sqr()).sum();
    let mut q = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] -= 2.0 * h[i] * h[j].conj() / hh;
        }
    }
    q
}

fn qtq(n: usize) -> Result<SparseMatrix> {
    let h: Vec<Scalar> = (1..=n).map(|i| re((i as f64 + 0.45).sqrt())).collect();
    let q = householder_reflector(&h);
    let mut t = DenseMatrix::zeros(n, n);
    for i in 0..n {
        t[(i, i)] = re(2.0);
        if i + 1 < n {
            t[(i, i + 1)] = re(-1.0);
            t[(i + 1, i)] = re(-1.0);
        }
    }
    let a = q.matmul(&t)?.matmul(&q)?;
    SparseMatrix::from_dense(&a)
}
