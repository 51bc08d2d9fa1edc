//! Outer iterations: expanding subspace, simplified (single vector) and
//! restarted, plus stagnation diagnostics.

mod stagnation;

use std::fmt;
use std::str::FromStr;

pub use stagnation::{classify_stagnation, StagnationClass, StagnationReport, PLATEAU_WINDOW};

use crate::correction::{solve_correction, CorrectionVariant, InnerSolver};
use crate::linalg::vector::{axpy, check_len, dot, norm, normalize, normalized};
use crate::linalg::{re, LuFactors, Scalar};
use crate::matio::ConvergenceRecord;
use crate::projection::{harmonic_ritz, rayleigh_quotient, rayleigh_ritz, refined_vector, residual, RitzPair, SubspaceBasis, Target};
use crate::{Error, Result, SparseMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_OUTER: usize = 500;
pub const DEFAULT_MAX_SUBSPACE: usize = 64;
pub const DEFAULT_RESTART_SIZE: usize = 3;
/// Hard upper bound on `max_subspace`.
pub const SUBSPACE_LIMIT: usize = 64;
/// With harmonic extraction the correction operator uses the harmonic shift
/// until the residual drops below this fraction of `‖A‖`.
pub const HARMONIC_TRACK_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Expanding,
    Simplified,
    Restarted,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Expanding => "expanding",
            Method::Simplified => "simplified",
            Method::Restarted => "restarted",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expanding" => Ok(Method::Expanding),
            "simplified" => Ok(Method::Simplified),
            "restarted" => Ok(Method::Restarted),
            other => Err(Error::BadParameter(format!("method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extraction {
    RayleighRitz,
    Harmonic(Scalar),
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialVector {
    Ones,
    Explicit(Vec<Scalar>),
}

impl InitialVector {
    fn build(&self, n: usize) -> Result<Vec<Scalar>> {
        let mut v = match self {
            InitialVector::Ones => vec![re(1.0); n],
            InitialVector::Explicit(v) => {
                check_len(n, v.len())?;
                v.clone()
            }
        };
        if normalize(&mut v) == 0.0 {
            return Err(Error::BadParameter("initial vector is zero".into()));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub method: Method,
    pub variant: CorrectionVariant,
    pub inner: InnerSolver,
    pub extraction: Extraction,
    pub refined: bool,
    pub target: Target,
    pub tol: f64,
    pub max_outer: usize,
    pub max_subspace: usize,
    pub restart_size: usize,
    pub initial: InitialVector,
    pub reference_vector: Option<Vec<Scalar>>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            method: Method::Expanding,
            variant: CorrectionVariant::Ojd,
            inner: InnerSolver::GaussianElimination,
            extraction: Extraction::RayleighRitz,
            refined: false,
            target: Target::LargestReal,
            tol: DEFAULT_TOL,
            max_outer: DEFAULT_MAX_OUTER,
            max_subspace: DEFAULT_MAX_SUBSPACE,
            restart_size: DEFAULT_RESTART_SIZE,
            initial: InitialVector::Ones,
            reference_vector: None,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadParameter(m));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_outer == 0 {
            return bad("max_outer must be at least 1".into());
        }
        if self.max_subspace == 0 || self.max_subspace > SUBSPACE_LIMIT {
            return bad(format!("max_subspace must be in 1..={SUBSPACE_LIMIT}, got {}", self.max_subspace));
        }
        if self.method == Method::Restarted {
            if self.restart_size < 2 {
                return bad(format!("restart_size must be at least 2, got {}", self.restart_size));
            }
            if self.restart_size > self.max_subspace {
                return bad(format!(
                    "restart_size {} exceeds max_subspace {}",
                    self.restart_size, self.max_subspace
                ));
            }
        }
        if let InnerSolver::Gmres { steps, rtol } = self.inner {
            if steps == 0 || rtol.is_nan() || rtol < 0.0 {
                return bad(format!("gmres steps {steps}, rtol {rtol}"));
            }
        }
        Ok(())
    }
}

/// Why an outer loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIter,
    /// The correction added nothing new to the search space.
    DeflationStall,
    /// The search space reached `max_subspace` without convergence.
    SubspaceCap,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::MaxIter => "max-iter",
            StopReason::DeflationStall => "deflation-stall",
            StopReason::SubspaceCap => "subspace-cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub converged: bool,
    pub stop: StopReason,
    pub eigenvalue: Scalar,
    pub eigenvector: Vec<Scalar>,
    pub final_resnorm: f64,
    pub tol: f64,
    pub history: Vec<ConvergenceRecord>,
    pub stagnation: Option<StagnationReport>,
}

impl SolveResult {
    pub fn outer_iterations(&self) -> usize {
        self.history.last().map_or(0, |h| h.outer_iter)
    }

    pub fn restarts(&self) -> usize {
        self.history.last().map_or(0, |h| h.restart_index)
    }
}

/// Runs the method selected in `opts`.
pub fn solve(a: &SparseMatrix, opts: &SolverOptions) -> Result<SolveResult> {
    match opts.method {
        Method::Expanding => expanding_solve(a, opts),
        Method::Simplified => simplified_solve(a, opts),
        Method::Restarted => restarted_solve(a, opts),
    }
}

pub fn expanding_solve(a: &SparseMatrix, opts: &SolverOptions) -> Result<SolveResult> {
    require_method(opts, Method::Expanding)?;
    subspace_loop(a, opts, None)
}

pub fn restarted_solve(a: &SparseMatrix, opts: &SolverOptions) -> Result<SolveResult> {
    require_method(opts, Method::Restarted)?;
    let restart = (opts.restart_size < opts.max_subspace).then_some(opts.restart_size);
    subspace_loop(a, opts, restart)
}

/// Single-vector iteration: `u ← (u + Pt)/‖u + Pt‖` with `θ = ρ(u)`.
pub fn simplified_solve(a: &SparseMatrix, opts: &SolverOptions) -> Result<SolveResult> {
    require_method(opts, Method::Simplified)?;
    let n = a.n();
    let reference = reference(opts, n)?;
    let mut u = opts.initial.build(n)?;
    let mut history = Vec::new();
    for outer in 1..=opts.max_outer {
        let theta = rayleigh_quotient(a, &u)?;
        let r = residual(a, theta, &u)?;
        let resnorm = norm(&r);
        history.push(ConvergenceRecord {
            outer_iter: outer,
            restart_index: 0,
            ritz: theta,
            resnorm,
            subspace_dim: 1,
            angle_to_ref: reference.as_deref().map(|x| angle(x, &u)),
        });
        let stop = if resnorm <= opts.tol {
            Some(StopReason::Converged)
        } else if outer == opts.max_outer {
            Some(StopReason::MaxIter)
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(finish(a, opts, stop, theta, u, resnorm, history));
        }
        let t = solve_correction(opts.variant, opts.inner, a, theta, &u, &r)?;
        axpy(re(1.0), &t, &mut u);
        normalize(&mut u);
    }
    unreachable!("loop returns on its final iteration")
}

struct Selected {
    /// Value recorded in the history.
    ritz: Scalar,
    /// Value paired with `resnorm`.
    eigenvalue: Scalar,
    u: Vec<Scalar>,
    resnorm: f64,
    /// Shift and residual for the correction equation.
    theta: Scalar,
    r: Vec<Scalar>,
}

fn subspace_loop(a: &SparseMatrix, opts: &SolverOptions, restart: Option<usize>) -> Result<SolveResult> {
    opts.validate()?;
    let n = a.n();
    if let InnerSolver::Gmres { steps, .. } = opts.inner {
        if steps > n {
            return Err(Error::BadParameter(format!("gmres steps {steps} exceed the order {n}")));
        }
    }
    let reference = reference(opts, n)?;
    let mut v = SubspaceBasis::from_vector(&opts.initial.build(n)?)?;
    let mut anorm = None;
    let mut restart_index = 0;
    let mut history = Vec::new();
    for outer in 1..=opts.max_outer {
        let best = extract(a, &v, opts, &mut anorm)?;
        let sel = select(a, &v, opts, best)?;
        history.push(ConvergenceRecord {
            outer_iter: outer,
            restart_index,
            ritz: sel.ritz,
            resnorm: sel.resnorm,
            subspace_dim: v.dim(),
            angle_to_ref: reference.as_deref().map(|x| angle(x, &sel.u)),
        });
        let stop = if sel.resnorm <= opts.tol {
            Some(StopReason::Converged)
        } else if outer == opts.max_outer {
            Some(StopReason::MaxIter)
        } else if restart.is_none() && v.dim() >= opts.max_subspace {
            Some(StopReason::SubspaceCap)
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(finish(a, opts, stop, sel.eigenvalue, sel.u, sel.resnorm, history));
        }
        if restart.is_some_and(|k| v.dim() >= k) {
            v.collapse_to(&sel.u)?;
            restart_index += 1;
        }
        let theta = match opts.extraction {
            Extraction::Harmonic(shift) if sel.resnorm > HARMONIC_TRACK_TOL * *anorm.get_or_insert_with(|| a.norm2_estimate()) => shift,
            _ => sel.theta,
        };
        let t = solve_correction(opts.variant, opts.inner, a, theta, &sel.u, &sel.r)?;
        match v.expand(&t) {
            Ok(()) => {}
            Err(Error::Deflated(_)) => {
                return Ok(finish(a, opts, StopReason::DeflationStall, sel.eigenvalue, sel.u, sel.resnorm, history));
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("loop returns on its final iteration")
}

/// Best pair for the configured extraction. A singular harmonic projection
/// is retried once with the shift moved by `1e-12‖A‖`.
fn extract(a: &SparseMatrix, v: &SubspaceBasis, opts: &SolverOptions, anorm: &mut Option<f64>) -> Result<RitzPair> {
    let pairs = match opts.extraction {
        Extraction::RayleighRitz => rayleigh_ritz(a, v, opts.target)?,
        Extraction::Harmonic(shift) => match harmonic_ritz(a, v, shift, opts.target) {
            Err(Error::Singular { .. }) => {
                let nrm = *anorm.get_or_insert_with(|| a.norm2_estimate());
                harmonic_ritz(a, v, shift + re(1e-12 * nrm.max(1.0)), opts.target)?
            }
            other => other?,
        },
    };
    pairs.into_iter().next().ok_or_else(|| Error::BadParameter("empty subspace".into()))
}

fn select(a: &SparseMatrix, v: &SubspaceBasis, opts: &SolverOptions, best: RitzPair) -> Result<Selected> {
    if !opts.refined {
        return Ok(Selected {
            ritz: best.theta,
            eigenvalue: best.rayleigh,
            u: best.u,
            resnorm: best.resnorm,
            theta: best.rayleigh,
            r: best.r,
        });
    }
    let (u, resnorm) = refined_vector(a, best.rayleigh, v)?;
    let theta = rayleigh_quotient(a, &u)?;
    let r = residual(a, theta, &u)?;
    Ok(Selected {
        ritz: best.theta,
        eigenvalue: best.rayleigh,
        u,
        resnorm,
        theta,
        r,
    })
}

fn finish(
    a: &SparseMatrix,
    opts: &SolverOptions,
    stop: StopReason,
    eigenvalue: Scalar,
    eigenvector: Vec<Scalar>,
    final_resnorm: f64,
    history: Vec<ConvergenceRecord>,
) -> SolveResult {
    let mut result = SolveResult {
        converged: stop == StopReason::Converged,
        stop,
        eigenvalue,
        eigenvector,
        final_resnorm,
        tol: opts.tol,
        history,
        stagnation: None,
    };
    if !result.converged {
        result.stagnation = classify_stagnation(a, &result).ok();
    }
    result
}

fn require_method(opts: &SolverOptions, m: Method) -> Result<()> {
    opts.validate()?;
    if opts.method != m {
        return Err(Error::BadParameter(format!("options select {}, expected {m}", opts.method)));
    }
    Ok(())
}

fn reference(opts: &SolverOptions, n: usize) -> Result<Option<Vec<Scalar>>> {
    match &opts.reference_vector {
        None => Ok(None),
        Some(x) => {
            check_len(n, x.len())?;
            if norm(x) == 0.0 {
                return Err(Error::BadParameter("reference vector is zero".into()));
            }
            Ok(Some(normalized(x)))
        }
    }
}

/// Angle between the lines spanned by unit vectors `x` and `u`.
pub fn angle(x: &[Scalar], u: &[Scalar]) -> f64 {
    let c = dot(x, u);
    let mut perp = u.to_vec();
    axpy(-c, x, &mut perp);
    norm(&perp).atan2(c.norm())
}

/// `(A − θI)⁻²u / ‖(A − θI)⁻²u‖` for Hermitian `A`, by dense LU.
pub fn msjd_symmetric_step(a: &SparseMatrix, theta: Scalar, u: &[Scalar]) -> Result<Vec<Scalar>> {
    check_len(a.n(), u.len())?;
    if !a.is_hermitian(1e-12 * a.max_abs().max(1.0)) {
        return Err(Error::BadParameter("matrix is not Hermitian".into()));
    }
    let mut m = a.to_dense();
    m.shift_diagonal(-theta);
    let lu = LuFactors::new(&m)?;
    let mut w = lu.solve(&lu.solve(u)?)?;
    if normalize(&mut w) == 0.0 || !w.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::BadParameter("shifted matrix is numerically singular".into()));
    }
    Ok(w)
}
