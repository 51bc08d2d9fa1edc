//! Test-matrix generators, sparse matrix file readers and convergence
//! history output.

mod generators;
mod harwell_boeing;
mod history;
mod matrix_market;

use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use generators::{gen_matrix, householder_reflector, GENERATORS};
pub use harwell_boeing::read_harwell_boeing;
pub(crate) use history::fmt_f64;
pub use history::{read_history, write_history, ConvergenceRecord, HistoryFormat};
pub use matrix_market::{read_matrix_market, write_matrix_market};

use crate::{Error, Result, SparseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    MatrixMarket,
    HarwellBoeing,
}

impl FileFormat {
    /// Guesses the format from the file extension; Matrix Market otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("rua" | "rsa" | "hb" | "rb") => FileFormat::HarwellBoeing,
            _ => FileFormat::MatrixMarket,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FileFormat::MatrixMarket => "mm",
            FileFormat::HarwellBoeing => "hb",
        }
    }
}

impl FromStr for FileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mm" | "mtx" | "matrix-market" => Ok(FileFormat::MatrixMarket),
            "hb" | "harwell-boeing" => Ok(FileFormat::HarwellBoeing),
            other => Err(Error::Unsupported(format!("matrix file format `{other}`"))),
        }
    }
}

/// Where an operator comes from: a built-in generator or a file.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    /// One of [`GENERATORS`], with an optional order override.
    Generator { name: String, order: Option<usize> },
    File { path: PathBuf, format: FileFormat },
}

impl MatrixSource {
    pub fn generator(name: &str) -> Self {
        MatrixSource::Generator {
            name: name.to_string(),
            order: None,
        }
    }

    pub fn load(&self) -> Result<SparseMatrix> {
        match self {
            MatrixSource::Generator { .. } => gen_matrix(self),
            MatrixSource::File { path, format } => load_matrix(path, *format),
        }
    }
}

/// Parses `gen:<name>[:<order>]` or `file:<path>[:<format>]`.
impl FromStr for MatrixSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("gen:") {
            let (name, order) = match rest.split_once(':') {
                Some((name, order)) => {
                    let order = order
                        .parse::<usize>()
                        .map_err(|_| Error::BadParameter(format!("generator order `{order}`")))?;
                    (name, Some(order))
                }
                None => (rest, None),
            };
            if !GENERATORS.contains(&name) {
                return Err(Error::UnknownGenerator(name.to_string()));
            }
            return Ok(MatrixSource::Generator {
                name: name.to_string(),
                order,
            });
        }
        if let Some(rest) = s.strip_prefix("file:") {
            if let Some((path, fmt)) = rest.rsplit_once(':') {
                if let Ok(format) = fmt.parse::<FileFormat>() {
                    return Ok(MatrixSource::File {
                        path: PathBuf::from(path),
                        format,
                    });
                }
            }
            let path = PathBuf::from(rest);
            let format = FileFormat::from_path(&path);
            return Ok(MatrixSource::File { path, format });
        }
        Err(Error::BadParameter(format!(
            "matrix source `{s}` must start with gen: or file:"
        )))
    }
}

impl std::fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixSource::Generator { name, order: None } => write!(f, "gen:{name}"),
            MatrixSource::Generator { name, order: Some(n) } => write!(f, "gen:{name}:{n}"),
            MatrixSource::File { path, format } => write!(f, "file:{}:{}", path.display(), format.as_str()),
        }
    }
}

pub fn load_matrix(path: &Path, format: FileFormat) -> Result<SparseMatrix> {
    let text = std::fs::read_to_string(path)?;
    match format {
        FileFormat::MatrixMarket => read_matrix_market(&text),
        FileFormat::HarwellBoeing => read_harwell_boeing(&text),
    }
}

/// Reads a vector file: one entry per line, `re` or `re im`; `%`/`#` lines
/// are comments.
pub fn read_vector(path: &Path) -> Result<Vec<crate::Scalar>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("bad number `{tok}`"),
            })
        };
        let mut toks = line.split_whitespace();
        let re = parse(toks.next().unwrap())?;
        let im = toks.next().map(parse).transpose()?.unwrap_or(0.0);
        out.push(crate::Scalar::new(re, im));
    }
    Ok(out)
}
