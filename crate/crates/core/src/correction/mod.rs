//! Correction equations and their inner solvers.
//!
//! With `P = I − uu*` and a unit approximation `u` with value `θ`:
//!
//! | variant | operator                                         | right-hand side        |
//! |---------|--------------------------------------------------|------------------------|
//! | OJD     | `P(A − θI)P`                                     | `−(A − θI)u`           |
//! | MJD     | `P(A − θI)*(A − θI)P`                            | `−P(A − θI)*(A − θI)u` |
//! | JDS     | `PAP − θI`                                       | `−(A − θI)u`           |
//! | MDS     | `PA*AP − θPA*P − θ̄PAP + |θ|²I`                   | `−P(A − θI)*(A − θI)u` |
//!
//! MJD is the normal equation of `min_t ‖(A − θI)(u + Pt)‖`. JDS and MDS
//! agree with OJD and MJD on the orthogonal complement of `u`.

mod gmres;

use std::fmt;
use std::str::FromStr;

pub use gmres::{gmres, GmresOutcome};

use crate::linalg::vector::{axpy, check_len, dot, norm, project_out, unit};
use crate::linalg::{DenseMatrix, LuFactors, Scalar};
use crate::{Error, Result, SparseMatrix};

/// Default upper bound on the order of a materialized dense system.
pub const DEFAULT_DENSE_CAP: usize = 2000;

/// Default relative residual at which GMRES stops before its step budget.
pub const DEFAULT_GMRES_RTOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionVariant {
    Ojd,
    Mjd,
    Jds,
    Mds,
}

impl CorrectionVariant {
    pub const ALL: [CorrectionVariant; 4] = [Self::Ojd, Self::Mjd, Self::Jds, Self::Mds];

    /// True for the least-squares variants (MJD, MDS).
    pub fn is_least_squares(self) -> bool {
        matches!(self, Self::Mjd | Self::Mds)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ojd => "ojd",
            Self::Mjd => "mjd",
            Self::Jds => "jds",
            Self::Mds => "mds",
        }
    }
}

impl fmt::Display for CorrectionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorrectionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ojd" => Ok(Self::Ojd),
            "mjd" => Ok(Self::Mjd),
            "jds" => Ok(Self::Jds),
            "mds" => Ok(Self::Mds),
            other => Err(Error::BadParameter(format!("correction variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerSolver {
    GaussianElimination,
    Gmres { steps: usize, rtol: f64 },
}

impl InnerSolver {
    pub fn gmres(steps: usize) -> Self {
        InnerSolver::Gmres {
            steps,
            rtol: DEFAULT_GMRES_RTOL,
        }
    }
}

fn check_unit(u: &[Scalar]) -> Result<()> {
    let nrm = norm(u);
    if (nrm - 1.0).abs() > 1e-10 {
        return Err(Error::BadParameter(format!("approximation vector has norm {nrm}, expected 1")));
    }
    Ok(())
}

/// Left-hand side of a correction equation, applied matrix-free.
#[derive(Debug, Clone, Copy)]
pub struct ProjectedOperator<'a> {
    variant: CorrectionVariant,
    a: &'a SparseMatrix,
    theta: Scalar,
    u: &'a [Scalar],
}

impl<'a> ProjectedOperator<'a> {
    pub fn new(variant: CorrectionVariant, a: &'a SparseMatrix, theta: Scalar, u: &'a [Scalar]) -> Result<Self> {
        check_len(a.n(), u.len())?;
        check_unit(u)?;
        Ok(Self { variant, a, theta, u })
    }

    pub fn variant(&self) -> CorrectionVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    fn proj(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut y = x.to_vec();
        project_out(self.u, &mut y);
        y
    }

    /// `(A − θI)x`
    fn shifted(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut y = self.a.spmv(x)?;
        axpy(-self.theta, x, &mut y);
        Ok(y)
    }

    /// `(A − θI)*x`
    fn shifted_adjoint(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut y = self.a.spmv_adjoint(x)?;
        axpy(-self.theta.conj(), x, &mut y);
        Ok(y)
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        check_len(self.n(), x.len())?;
        let theta = self.theta;
        let px = self.proj(x);
        let mut out = match self.variant {
            CorrectionVariant::Ojd => self.shifted(&px)?,
            CorrectionVariant::Mjd => self.shifted_adjoint(&self.shifted(&px)?)?,
            CorrectionVariant::Jds => self.a.spmv(&px)?,
            CorrectionVariant::Mds => {
                let apx = self.a.spmv(&px)?;
                let mut y = self.a.spmv_adjoint(&apx)?;
                let ahpx = self.a.spmv_adjoint(&px)?;
                axpy(-theta, &ahpx, &mut y);
                axpy(-theta.conj(), &apx, &mut y);
                y
            }
        };
        project_out(self.u, &mut out);
        match self.variant {
            CorrectionVariant::Jds => axpy(-theta, x, &mut out),
            CorrectionVariant::Mds => axpy(Scalar::new(theta.norm_sqr(), 0.0), x, &mut out),
            _ => {}
        }
        Ok(out)
    }

    /// Dense matrix whose column `j` is `apply(e_j)`.
    pub fn materialize(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.n();
        if n > cap {
            return Err(Error::DenseCapExceeded { n, cap });
        }
        let mut m = DenseMatrix::zeros(n, n);
        for j in 0..n {
            m.set_column(j, &self.apply(&unit(n, j))?);
        }
        Ok(m)
    }
}

/// Right-hand side of the correction equation. `r` must be the residual
/// `(A − θI)u` when given; it is recomputed otherwise.
pub fn rhs(
    variant: CorrectionVariant,
    a: &SparseMatrix,
    theta: Scalar,
    u: &[Scalar],
    r: Option<&[Scalar]>,
) -> Result<Vec<Scalar>> {
    check_len(a.n(), u.len())?;
    let r = match r {
        Some(r) => {
            check_len(a.n(), r.len())?;
            r.to_vec()
        }
        None => crate::projection::residual(a, theta, u)?,
    };
    let mut b = if variant.is_least_squares() {
        let mut y = a.spmv_adjoint(&r)?;
        axpy(-theta.conj(), &r, &mut y);
        project_out(u, &mut y);
        y
    } else {
        r
    };
    for z in b.iter_mut() {
        *z = -*z;
    }
    Ok(b)
}

/// Solves a correction equation for `t ⊥ u`.
///
/// The direct path factors the materialized operator. OJD and MJD annihilate
/// `u`, so `uu*` is added before factoring; this leaves the `u`-orthogonal
/// solution unchanged. Any further rank deficiency is reported as
/// [`Error::Singular`]. The GMRES path runs the configured number of steps
/// from a zero guess. Either way the result is projected onto `u⊥`.
pub fn solve_correction(
    variant: CorrectionVariant,
    inner: InnerSolver,
    a: &SparseMatrix,
    theta: Scalar,
    u: &[Scalar],
    r: &[Scalar],
) -> Result<Vec<Scalar>> {
    let op = ProjectedOperator::new(variant, a, theta, u)?;
    let b = rhs(variant, a, theta, u, Some(r))?;
    if b.iter().all(|z| *z == Scalar::new(0.0, 0.0)) {
        return Ok(b);
    }
    let mut t = match inner {
        InnerSolver::GaussianElimination => {
            let mut m = op.materialize(DEFAULT_DENSE_CAP)?;
            if matches!(variant, CorrectionVariant::Ojd | CorrectionVariant::Mjd) {
                add_rank_one(&mut m, u);
            }
            LuFactors::new(&m)?.solve(&b)?
        }
        InnerSolver::Gmres { steps, rtol } => gmres(|x| op.apply(x), &b, steps, rtol)?.x,
    };
    project_out(u, &mut t);
    Ok(t)
}

fn add_rank_one(m: &mut DenseMatrix, u: &[Scalar]) {
    for (i, ui) in u.iter().enumerate() {
        for (j, uj) in u.iter().enumerate() {
            m[(i, j)] += ui * uj.conj();
        }
    }
}

/// Tikhonov-regularized least-squares correction:
/// `(P(A − θI)*(A − θI)P + h²I)t = −P(A − θI)*(A − θI)u`.
///
/// The `u` direction carries eigenvalue `h²` only, so it is lifted by `uu*`
/// like the unregularized direct solve.
pub fn tikhonov_solve(a: &SparseMatrix, theta: Scalar, u: &[Scalar], h: f64) -> Result<Vec<Scalar>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::BadParameter(format!("regularization parameter h = {h}")));
    }
    let op = ProjectedOperator::new(CorrectionVariant::Mjd, a, theta, u)?;
    let b = rhs(CorrectionVariant::Mjd, a, theta, u, None)?;
    let mut m = op.materialize(DEFAULT_DENSE_CAP)?;
    m.shift_diagonal(Scalar::new(h * h, 0.0));
    add_rank_one(&mut m, u);
    let mut t = LuFactors::new(&m)?.solve(&b)?;
    project_out(u, &mut t);
    Ok(t)
}

/// `((A − θI)*(A − θI) − ‖(A − θI)u‖²I)u`, the direction of the
/// `u`-orthogonal part of a rank-one perturbation `kuw*` that keeps the
/// least-squares solution unchanged.
pub fn perturbation_direction(a: &SparseMatrix, theta: Scalar, u: &[Scalar]) -> Result<Vec<Scalar>> {
    check_len(a.n(), u.len())?;
    check_unit(u)?;
    let r = crate::projection::residual(a, theta, u)?;
    let rr = dot(&r, &r).re;
    let mut w = a.spmv_adjoint(&r)?;
    axpy(-theta.conj(), &r, &mut w);
    axpy(Scalar::new(-rr, 0.0), u, &mut w);
    Ok(w)
}
