use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;

use crate::correction::{CorrectionVariant, InnerSolver};
use crate::drivers::{
    Extraction, Method, SolverOptions, DEFAULT_MAX_OUTER, DEFAULT_MAX_SUBSPACE, DEFAULT_RESTART_SIZE,
};
use crate::linalg::Scalar;
use crate::matio::{HistoryFormat, MatrixSource};
use crate::projection::Target;
use crate::{Error, Result};

/// `<re>[,<im>]`
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::BadParameter(format!("complex value `{s}`, expected <re>[,<im>]"));
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Scalar::new(re, im))
}

fn fmt_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{},{}", z.re, z.im)
    }
}

/// `ge` or `gmres:<steps>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerArg(pub InnerSolver);

impl FromStr for InnerArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ge" {
            return Ok(InnerArg(InnerSolver::GaussianElimination));
        }
        if let Some(steps) = s.strip_prefix("gmres:") {
            return match steps.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(InnerArg(InnerSolver::gmres(k))),
                _ => Err(Error::BadParameter(format!("gmres steps `{steps}`"))),
            };
        }
        Err(Error::BadParameter(format!("inner solver `{s}`, expected ge or gmres:<steps>")))
    }
}

impl fmt::Display for InnerArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            InnerSolver::GaussianElimination => f.write_str("ge"),
            InnerSolver::Gmres { steps, .. } => write!(f, "gmres:{steps}"),
        }
    }
}

/// `rr` or `harmonic:<re>[,<im>]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractArg(pub Extraction);

impl FromStr for ExtractArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rr" {
            return Ok(ExtractArg(Extraction::RayleighRitz));
        }
        if let Some(shift) = s.strip_prefix("harmonic:") {
            return Ok(ExtractArg(Extraction::Harmonic(parse_scalar(shift)?)));
        }
        Err(Error::BadParameter(format!("extraction `{s}`, expected rr or harmonic:<re>[,<im>]")))
    }
}

impl fmt::Display for ExtractArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Extraction::RayleighRitz => f.write_str("rr"),
            Extraction::Harmonic(s) => write!(f, "harmonic:{}", fmt_scalar(s)),
        }
    }
}

/// `largest`, `smallest-mag` or `nearest:<re>[,<im>]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetArg(pub Target);

impl FromStr for TargetArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "largest" => Ok(TargetArg(Target::LargestReal)),
            "smallest-mag" => Ok(TargetArg(Target::SmallestMagnitude)),
            _ => match s.strip_prefix("nearest:") {
                Some(z) => Ok(TargetArg(Target::Nearest(parse_scalar(z)?))),
                None => Err(Error::BadParameter(format!(
                    "target `{s}`, expected largest, smallest-mag or nearest:<re>[,<im>]"
                ))),
            },
        }
    }
}

impl fmt::Display for TargetArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Target::LargestReal => f.write_str("largest"),
            Target::SmallestMagnitude => f.write_str("smallest-mag"),
            Target::Nearest(z) => write!(f, "nearest:{}", fmt_scalar(z)),
        }
    }
}

/// `ones` or `file:<path>`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialArg {
    Ones,
    File(PathBuf),
}

impl FromStr for InitialArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ones" {
            return Ok(InitialArg::Ones);
        }
        match s.strip_prefix("file:") {
            Some(p) if !p.is_empty() => Ok(InitialArg::File(PathBuf::from(p))),
            _ => Err(Error::BadParameter(format!("initial vector `{s}`, expected ones or file:<path>"))),
        }
    }
}

impl fmt::Display for InitialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialArg::Ones => f.write_str("ones"),
            InitialArg::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn value<T: FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Flags of a single solve.
#[derive(Debug, Clone, PartialEq, Args)]
pub struct RunConfig {
    /// gen:<name>[:<order>] or file:<path>[:mm|hb]
    #[arg(long, value_parser = value::<MatrixSource>)]
    pub matrix: MatrixSource,
    /// expanding, simplified or restarted
    #[arg(long, default_value = "expanding", value_parser = value::<Method>)]
    pub method: Method,
    /// ojd, mjd, jds or mds
    #[arg(long, default_value = "ojd", value_parser = value::<CorrectionVariant>)]
    pub variant: CorrectionVariant,
    /// ge or gmres:<steps>
    #[arg(long, default_value = "ge", value_parser = value::<InnerArg>)]
    pub inner: InnerArg,
    /// rr or harmonic:<re>[,<im>]
    #[arg(long, default_value = "rr", value_parser = value::<ExtractArg>)]
    pub extract: ExtractArg,
    /// Use refined Ritz vectors
    #[arg(long)]
    pub refined: bool,
    /// largest, smallest-mag or nearest:<re>[,<im>] [default: nearest the
    /// harmonic shift, else largest]
    #[arg(long, value_parser = value::<TargetArg>)]
    pub target: Option<TargetArg>,
    /// Residual norm at which a pair counts as converged
    #[arg(long, default_value = "1e-10")]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_OUTER)]
    pub max_outer: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSPACE)]
    pub max_subspace: usize,
    /// Subspace size that triggers a restart (restarted method)
    #[arg(long, default_value_t = DEFAULT_RESTART_SIZE)]
    pub restart_size: usize,
    /// ones or file:<path>
    #[arg(long, default_value = "ones", value_parser = value::<InitialArg>)]
    pub initial: InitialArg,
    /// Write the convergence history here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json
    #[arg(long, default_value = "csv", value_parser = value::<HistoryFormat>)]
    pub format: HistoryFormat,
    /// Eigenvector file for angle tracking
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Expected eigenvalue <re>[,<im>]; the result is compared to 1e-9 relative
    #[arg(long, value_parser = value_scalar, allow_hyphen_values = true)]
    pub expect: Option<Scalar>,
}

fn value_scalar(s: &str) -> std::result::Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

impl RunConfig {
    /// A configuration with every setting at its default.
    pub fn new(matrix: MatrixSource) -> Self {
        let d = SolverOptions::default();
        Self {
            matrix,
            method: d.method,
            variant: d.variant,
            inner: InnerArg(d.inner),
            extract: ExtractArg(d.extraction),
            refined: d.refined,
            target: None,
            tol: d.tol,
            max_outer: d.max_outer,
            max_subspace: d.max_subspace,
            restart_size: d.restart_size,
            initial: InitialArg::Ones,
            out: None,
            format: HistoryFormat::Csv,
            reference: None,
            expect: None,
        }
    }

    /// Flags that reproduce this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec![
            "--matrix".to_string(),
            self.matrix.to_string(),
            "--method".into(),
            self.method.to_string(),
            "--variant".into(),
            self.variant.to_string(),
            "--inner".into(),
            self.inner.to_string(),
            "--extract".into(),
            self.extract.to_string(),
            "--tol".into(),
            self.tol.to_string(),
            "--max-outer".into(),
            self.max_outer.to_string(),
            "--max-subspace".into(),
            self.max_subspace.to_string(),
            "--restart-size".into(),
            self.restart_size.to_string(),
            "--initial".into(),
            self.initial.to_string(),
            "--format".into(),
            self.format.as_str().to_string(),
        ];
        if let Some(t) = self.target {
            a.extend(["--target".to_string(), t.to_string()]);
        }
        if self.refined {
            a.push("--refined".into());
        }
        if let Some(p) = &self.out {
            a.extend(["--out".to_string(), p.display().to_string()]);
        }
        if let Some(p) = &self.reference {
            a.extend(["--reference".to_string(), p.display().to_string()]);
        }
        if let Some(z) = self.expect {
            a.extend(["--expect".to_string(), fmt_scalar(z)]);
        }
        a
    }

    /// Explicit target, or the one implied by the extraction.
    pub fn target(&self) -> Target {
        match (self.target, self.extract.0) {
            (Some(t), _) => t.0,
            (None, Extraction::Harmonic(s)) => Target::Nearest(s),
            (None, Extraction::RayleighRitz) => Target::LargestReal,
        }
    }

    /// Solver options; vectors named by file are read here.
    pub fn solver_options(&self) -> Result<SolverOptions> {
        let initial = match &self.initial {
            InitialArg::Ones => crate::drivers::InitialVector::Ones,
            InitialArg::File(p) => crate::drivers::InitialVector::Explicit(crate::matio::read_vector(p)?),
        };
        let reference_vector = match &self.reference {
            Some(p) => Some(crate::matio::read_vector(p)?),
            None => None,
        };
        Ok(SolverOptions {
            method: self.method,
            variant: self.variant,
            inner: self.inner.0,
            extraction: self.extract.0,
            refined: self.refined,
            target: self.target(),
            tol: self.tol,
            max_outer: self.max_outer,
            max_subspace: self.max_subspace,
            restart_size: self.restart_size,
            initial,
            reference_vector,
        })
    }
}
