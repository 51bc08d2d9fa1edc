//! Eigenpair extraction from a search subspace.

use crate::linalg::vector::{axpy, check_len, dot, mgs_orthonormalize, norm, normalize};
use crate::linalg::{small_eig, small_svd_min, DenseMatrix, LuFactors, Scalar};
use crate::{Error, Result, SparseMatrix};

/// Column-orthonormal basis `V` of the search space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    n: usize,
    cols: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn empty(n: usize) -> Self {
        Self { n, cols: Vec::new() }
    }

    /// One-dimensional basis spanned by `v` (normalized here).
    pub fn from_vector(v: &[Scalar]) -> Result<Self> {
        let mut b = Self::empty(v.len());
        b.expand(v)?;
        Ok(b)
    }

    /// Orthonormalizes a set of vectors in order; fails if any deflates.
    pub fn from_vectors(vs: &[Vec<Scalar>]) -> Result<Self> {
        let n = vs.first().map_or(0, Vec::len);
        let mut b = Self::empty(n);
        for v in vs {
            b.expand(v)?;
        }
        Ok(b)
    }

    /// Appends the normalized part of `t` orthogonal to the current span.
    pub fn expand(&mut self, t: &[Scalar]) -> Result<()> {
        check_len(self.n, t.len())?;
        let v = mgs_orthonormalize(&self.cols, t)?;
        self.cols.push(v);
        Ok(())
    }

    /// Replaces the basis by the single unit vector `u`.
    pub fn collapse_to(&mut self, u: &[Scalar]) -> Result<()> {
        check_len(self.n, u.len())?;
        self.cols.clear();
        self.expand(u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[Vec<Scalar>] {
        &self.cols
    }

    /// `V·y`
    pub fn lift(&self, y: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(y.len(), self.dim());
        let mut u = vec![Scalar::new(0.0, 0.0); self.n];
        for (c, &yi) in self.cols.iter().zip(y) {
            axpy(yi, c, &mut u);
        }
        u
    }

    /// `V*·x`
    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.cols.iter().map(|c| dot(c, x)).collect()
    }

    /// Largest deviation of `V*V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.cols.iter().enumerate() {
            for (j, b) in self.cols.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - Scalar::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Which eigenvalue the extraction prefers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    LargestReal,
    /// Treated as `Nearest(0)`.
    SmallestMagnitude,
    Nearest(Scalar),
}

impl Target {
    /// Sort key, smaller is better.
    fn key(&self, theta: Scalar) -> f64 {
        match *self {
            Target::LargestReal => -theta.re,
            Target::SmallestMagnitude => theta.norm(),
            Target::Nearest(s) => (theta - s).norm(),
        }
    }

    /// Stable best-first ordering; ties keep their input order.
    pub fn sort<T>(&self, items: &mut [T], value: impl Fn(&T) -> Scalar) {
        items.sort_by(|a, b| self.key(value(a)).total_cmp(&self.key(value(b))));
    }
}

/// An extracted approximate eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct RitzPair {
    /// Ritz value, or harmonic Ritz value for harmonic extraction.
    pub theta: Scalar,
    /// Rayleigh quotient `u*Au`; the value the residual is formed with.
    pub rayleigh: Scalar,
    /// Coordinates in the basis.
    pub y: Vec<Scalar>,
    /// Unit vector `V·y`.
    pub u: Vec<Scalar>,
    /// `A·u − rayleigh·u`
    pub r: Vec<Scalar>,
    pub resnorm: f64,
}

/// `u*Au`
pub fn rayleigh_quotient(a: &SparseMatrix, u: &[Scalar]) -> Result<Scalar> {
    let au = a.spmv(u)?;
    Ok(dot(u, &au))
}

/// `A·u − θ·u`
pub fn residual(a: &SparseMatrix, theta: Scalar, u: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut r = a.spmv(u)?;
    axpy(-theta, u, &mut r);
    Ok(r)
}

fn apply_to_basis(a: &SparseMatrix, v: &SubspaceBasis) -> Result<Vec<Vec<Scalar>>> {
    check_len(a.n(), v.n())?;
    v.cols().iter().map(|c| a.spmv(c)).collect()
}

fn gram(left: &[Vec<Scalar>], right: &[Vec<Scalar>]) -> DenseMatrix {
    let mut g = DenseMatrix::zeros(left.len(), right.len());
    for (i, l) in left.iter().enumerate() {
        for (j, r) in right.iter().enumerate() {
            g[(i, j)] = dot(l, r);
        }
    }
    g
}

fn make_pair(a: &SparseMatrix, v: &SubspaceBasis, theta: Scalar, y: Vec<Scalar>, harmonic: bool) -> Result<RitzPair> {
    let mut u = v.lift(&y);
    normalize(&mut u);
    let au = a.spmv(&u)?;
    let rayleigh = if harmonic { dot(&u, &au) } else { theta };
    let mut r = au;
    axpy(-rayleigh, &u, &mut r);
    let resnorm = norm(&r);
    Ok(RitzPair {
        theta,
        rayleigh,
        y,
        u,
        r,
        resnorm,
    })
}

/// Standard Rayleigh-Ritz: eigenpairs of `H = V*AV`, lifted and sorted by
/// `target`.
pub fn rayleigh_ritz(a: &SparseMatrix, v: &SubspaceBasis, target: Target) -> Result<Vec<RitzPair>> {
    let av = apply_to_basis(a, v)?;
    let h = gram(v.cols(), &av);
    let mut pairs = small_eig(&h)?
        .into_iter()
        .map(|p| make_pair(a, v, p.value, p.vector, false))
        .collect::<Result<Vec<_>>>()?;
    target.sort(&mut pairs, |p| p.theta);
    Ok(pairs)
}

/// Harmonic Rayleigh-Ritz relative to `shift`: solves
/// `(W*W) z = (θ̃ − shift)(W*V) z` with `W = (A − shift·I)V`.
///
/// Residuals are formed with the Rayleigh quotient of each lifted vector.
/// Fails with [`Error::Singular`] when `W*V` is numerically singular.
pub fn harmonic_ritz(a: &SparseMatrix, v: &SubspaceBasis, shift: Scalar, target: Target) -> Result<Vec<RitzPair>> {
    let mut w = apply_to_basis(a, v)?;
    for (wc, vc) in w.iter_mut().zip(v.cols()) {
        axpy(-shift, vc, wc);
    }
    let ww = gram(&w, &w);
    let wv = gram(&w, v.cols());
    let lu = LuFactors::new(&wv)?;
    let k = v.dim();
    let mut m = DenseMatrix::zeros(k, k);
    for j in 0..k {
        m.set_column(j, &lu.solve(&ww.column(j))?);
    }
    let mut pairs = small_eig(&m)?
        .into_iter()
        .map(|p| make_pair(a, v, shift + p.value, p.vector, true))
        .collect::<Result<Vec<_>>>()?;
    target.sort(&mut pairs, |p| p.theta);
    Ok(pairs)
}

/// Refined vector for `theta`: the unit `u = V·z` minimizing
/// `‖(A − θI)u‖`. Returns `u` and that minimal residual norm.
pub fn refined_vector(a: &SparseMatrix, theta: Scalar, v: &SubspaceBasis) -> Result<(Vec<Scalar>, f64)> {
    if v.dim() == 0 {
        return Err(Error::BadParameter("empty subspace".into()));
    }
    let mut cols = apply_to_basis(a, v)?;
    for (c, vc) in cols.iter_mut().zip(v.cols()) {
        axpy(-theta, vc, c);
    }
    let m = DenseMatrix::from_columns(&cols);
    let (_, z) = small_svd_min(&m)?;
    let mut u = v.lift(&z);
    normalize(&mut u);
    let resnorm = norm(&residual(a, theta, &u)?);
    Ok((u, resnorm))
}
