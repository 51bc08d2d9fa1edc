use std::fmt::Write as _;

use crate::linalg::Scalar;
use crate::{Error, Result, SparseMatrix};

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Complex,
    Integer,
    Pattern,
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Parses a square Matrix Market `coordinate` matrix.
pub fn read_matrix_market(text: &str) -> Result<SparseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = match lines.next() {
        Some(h) => h,
        None => return perr(1, "empty file"),
    };
    let toks: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if toks.len() != 5 || toks[0] != "%%matrixmarket" || toks[1] != "matrix" {
        return perr(1, "header must be `%%MatrixMarket matrix <format> <field> <symmetry>`");
    }
    if toks[2] != "coordinate" {
        return Err(Error::Unsupported(format!("Matrix Market format `{}`", toks[2])));
    }
    let field = match toks[3].as_str() {
        "real" | "double" => Field::Real,
        "complex" => Field::Complex,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(Error::Unsupported(format!("Matrix Market field `{other}`"))),
    };
    let symmetry = match toks[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(Error::Unsupported(format!("Matrix Market symmetry `{other}`"))),
    };

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = match data.next() {
        Some(s) => s,
        None => return perr(1, "missing size line"),
    };
    let dims: Vec<usize> = match size.split_whitespace().map(str::parse).collect() {
        Ok(d) => d,
        Err(_) => return perr(size_line, "size line must be `rows cols nnz`"),
    };
    if dims.len() != 3 {
        return perr(size_line, "size line must be `rows cols nnz`");
    }
    let (m, n, nnz) = (dims[0], dims[1], dims[2]);
    if m != n {
        return perr(size_line, format!("matrix is {m}x{n}, only square matrices are supported"));
    }

    let mut trip = Vec::with_capacity(if symmetry == Symmetry::General { nnz } else { 2 * nnz });
    let mut count = 0usize;
    for (lineno, line) in data {
        let t: Vec<&str> = line.split_whitespace().collect();
        let want = match field {
            Field::Pattern => 2,
            Field::Complex => 4,
            _ => 3,
        };
        if t.len() < want {
            return perr(lineno, format!("expected {want} fields, found {}", t.len()));
        }
        let idx = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(v) if v >= 1 && v <= n => Ok(v - 1),
                _ => perr(lineno, format!("bad index `{s}`")),
            }
        };
        let num = |s: &str| -> Result<f64> {
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => perr(lineno, format!("bad value `{s}`")),
            }
        };
        let (i, j) = (idx(t[0])?, idx(t[1])?);
        let v = match field {
            Field::Pattern => Scalar::new(1.0, 0.0),
            Field::Complex => Scalar::new(num(t[2])?, num(t[3])?),
            _ => Scalar::new(num(t[2])?, 0.0),
        };
        trip.push((i, j, v));
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => trip.push((j, i, v)),
                Symmetry::Hermitian => trip.push((j, i, v.conj())),
                Symmetry::SkewSymmetric => trip.push((j, i, -v)),
            }
        }
        count += 1;
    }
    if count != nnz {
        return perr(size_line, format!("header declares {nnz} entries, found {count}"));
    }
    SparseMatrix::from_triplets(n, trip)
}

/// Writes a general coordinate file, `real` when every entry is real.
pub fn write_matrix_market(a: &SparseMatrix) -> String {
    let complex = a.values().iter().any(|z| z.im != 0.0);
    let mut out = format!(
        "%%MatrixMarket matrix coordinate {} general\n{} {} {}\n",
        if complex { "complex" } else { "real" },
        a.n(),
        a.n(),
        a.nnz()
    );
    for (i, j, v) in a.triplets() {
        if complex {
            let _ = writeln!(out, "{} {} {:e} {:e}", i + 1, j + 1, v.re, v.im);
        } else {
            let _ = writeln!(out, "{} {} {:e}", i + 1, j + 1, v.re);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;

    #[test]
    fn two_by_two_diagonal() {
        let a = read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 2 2.0\n").unwrap();
        assert_eq!(a.to_dense(), crate::DenseMatrix::diagonal(&[re(1.0), re(2.0)]));
    }

    #[test]
    fn symmetric_and_complex() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n% c\n2 2 2\n1 1 1 0\n2 1 0 1\n";
        let a = read_matrix_market(text).unwrap();
        assert_eq!(a.get(1, 0), Scalar::new(0.0, 1.0));
        assert_eq!(a.get(0, 1), Scalar::new(0.0, -1.0));
        let s = read_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n3 3 1\n3 1 5\n").unwrap();
        assert_eq!(s.get(0, 2), re(5.0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n3 1 2.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_matrix_market("%%MatrixMarket matrix array real general\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn writer_round_trip_is_exact() {
        let a = SparseMatrix::from_triplets(
            3,
            [(0, 0, re(0.1)), (0, 2, re(-1e-300)), (2, 1, re(123456789.123)), (1, 1, re(1.0 / 3.0))],
        )
        .unwrap();
        assert_eq!(read_matrix_market(&write_matrix_market(&a)).unwrap(), a);
        let c = SparseMatrix::diagonal(&[Scalar::new(0.8, 0.1), Scalar::new(0.8, -0.1)]);
        assert_eq!(read_matrix_market(&write_matrix_market(&c)).unwrap(), c);
    }
}
