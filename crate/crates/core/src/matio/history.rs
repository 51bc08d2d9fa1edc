use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::Scalar;
use crate::{Error, Result};

/// One outer iteration of a solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    pub outer_iter: usize,
    pub restart_index: usize,
    /// Ritz (or harmonic Ritz) value selected in this iteration.
    pub ritz: Scalar,
    /// Residual 2-norm used for the convergence test.
    pub resnorm: f64,
    pub subspace_dim: usize,
    /// Angle to a reference eigenvector, when one was supplied.
    pub angle_to_ref: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistoryFormat {
    Csv,
    Json,
}

impl FromStr for HistoryFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(HistoryFormat::Csv),
            "json" => Ok(HistoryFormat::Json),
            other => Err(Error::Unsupported(format!("history format `{other}`"))),
        }
    }
}

impl HistoryFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            HistoryFormat::Csv => "csv",
            HistoryFormat::Json => "json",
        }
    }
}

pub const CSV_HEADER: &str = "iter,restart,ritz_re,ritz_im,resnorm,subspace_dim,angle";

#[derive(Serialize, Deserialize)]
struct JsonRow {
    iter: usize,
    restart: usize,
    ritz_re: f64,
    ritz_im: f64,
    resnorm: f64,
    subspace_dim: usize,
    angle: Option<f64>,
}

/// Shortest representation that parses back to the same bits.
pub(crate) fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        if x.is_sign_negative() { "-0" } else { "0" }.to_string()
    } else {
        format!("{x:e}")
    }
}

pub fn history_csv(records: &[ConvergenceRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.outer_iter,
            r.restart_index,
            fmt_f64(r.ritz.re),
            fmt_f64(r.ritz.im),
            fmt_f64(r.resnorm),
            r.subspace_dim,
            r.angle_to_ref.map(fmt_f64).unwrap_or_default()
        );
    }
    out
}

fn history_json(records: &[ConvergenceRecord]) -> Result<String> {
    let rows: Vec<JsonRow> = records
        .iter()
        .map(|r| JsonRow {
            iter: r.outer_iter,
            restart: r.restart_index,
            ritz_re: r.ritz.re,
            ritz_im: r.ritz.im,
            resnorm: r.resnorm,
            subspace_dim: r.subspace_dim,
            angle: r.angle_to_ref,
        })
        .collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

/// Writes a convergence history; the record list must be nonempty.
pub fn write_history(records: &[ConvergenceRecord], path: &Path, format: HistoryFormat) -> Result<()> {
    if records.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let text = match format {
        HistoryFormat::Csv => history_csv(records),
        HistoryFormat::Json => history_json(records)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_history(path: &Path, format: HistoryFormat) -> Result<Vec<ConvergenceRecord>> {
    let text = std::fs::read_to_string(path)?;
    match format {
        HistoryFormat::Json => {
            let rows: Vec<JsonRow> = serde_json::from_str(&text)?;
            Ok(rows
                .into_iter()
                .map(|r| ConvergenceRecord {
                    outer_iter: r.iter,
                    restart_index: r.restart,
                    ritz: Scalar::new(r.ritz_re, r.ritz_im),
                    resnorm: r.resnorm,
                    subspace_dim: r.subspace_dim,
                    angle_to_ref: r.angle,
                })
                .collect())
        }
        HistoryFormat::Csv => {
            let mut lines = text.lines().enumerate();
            match lines.next() {
                Some((_, h)) if h.trim() == CSV_HEADER => {}
                _ => return Err(Error::Parse { line: 1, msg: "missing history header".into() }),
            }
            lines
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| parse_csv_row(l).ok_or_else(|| Error::Parse { line: i + 1, msg: format!("bad row `{l}`") }))
                .collect()
        }
    }
}

fn parse_csv_row(line: &str) -> Option<ConvergenceRecord> {
    let f: Vec<&str> = line.split(',').collect();
    if f.len() != 7 {
        return None;
    }
    Some(ConvergenceRecord {
        outer_iter: f[0].parse().ok()?,
        restart_index: f[1].parse().ok()?,
        ritz: Scalar::new(f[2].parse().ok()?, f[3].parse().ok()?),
        resnorm: f[4].parse().ok()?,
        subspace_dim: f[5].parse().ok()?,
        angle_to_ref: if f[6].is_empty() { None } else { Some(f[6].parse().ok()?) },
    })
}
