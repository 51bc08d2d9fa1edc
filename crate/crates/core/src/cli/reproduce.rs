use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::correction::{CorrectionVariant, InnerSolver};
use crate::drivers::{solve, Extraction, InitialVector, Method, SolveResult, SolverOptions};
use crate::linalg::{re, Scalar};
use crate::matio::{fmt_f64, load_matrix, write_history, FileFormat, HistoryFormat, MatrixSource};
use crate::projection::Target;
use crate::{Error, Result, SparseMatrix};

/// Environment variable naming the directory that holds SHERMAN4.
pub const DATA_DIR_VAR: &str = "JDX_DATA_DIR";

const SHERMAN4_NAMES: [&str; 4] = ["sherman4.rua", "SHERMAN4.RUA", "sherman4.mtx", "sherman4/sherman4.mtx"];

pub const FETCH_HINT: &str = "SHERMAN4 (order 1104) is not bundled. Download it from the Matrix Market \
(https://math.nist.gov/MatrixMarket/data/Harwell-Boeing/sherman/sherman4.html) or the SuiteSparse \
collection (https://sparse.tamu.edu/HB/sherman4), unpack sherman4.rua or sherman4.mtx into a \
directory and point JDX_DATA_DIR at it.";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// SHERMAN4, smallest eigenvalue, expanding search space.
    Table1,
    /// tridiag200, largest eigenvalue, restart at subspace size 3.
    Table2,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Table::Table1),
            "table2" => Ok(Table::Table2),
            other => Err(Error::BadParameter(format!("table `{other}`, expected table1 or table2"))),
        }
    }
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::Table1 => "table1",
            Table::Table2 => "table2",
        }
    }

    /// Reference eigenvalue every row is compared against.
    pub fn reference_eigenvalue(self) -> f64 {
        match self {
            Table::Table1 => 3.0725707765e-02,
            Table::Table2 => 2.561474561181774e+02,
        }
    }

    /// Published rows: variant, iteration (table 1) or restart (table 2)
    /// count, eigenvalue, residual norm.
    pub fn published(self) -> [(CorrectionVariant, usize, f64, f64); 4] {
        use CorrectionVariant::*;
        match self {
            Table::Table1 => [
                (Ojd, 10, 3.072570776430865e-02, 8.937205079499508e-11),
                (Mjd, 11, 3.072570776499898e-02, 2.682680808082383e-14),
                (Jds, 5, 3.072570776525444e-02, 1.169743153032539e-12),
                (Mds, 11, 3.072570776499969e-02, 1.881587896753183e-14),
            ],
            Table::Table2 => [
                (Ojd, 2, 2.561474561181777e+02, 7.503060878161262e-12),
                (Mjd, 2, 2.561_474_561_181_78e2, 6.311243610822153e-13),
                (Jds, 2, 2.561474561182365e+02, 5.862284941673252e-11),
                (Mds, 2, 2.561474561181781e+02, 3.095655387252406e-13),
            ],
        }
    }

    /// Solver settings for one row.
    pub fn options(self, variant: CorrectionVariant, n: usize) -> SolverOptions {
        let base = SolverOptions {
            variant,
            inner: InnerSolver::GaussianElimination,
            extraction: Extraction::RayleighRitz,
            tol: 1e-10,
            ..SolverOptions::default()
        };
        match self {
            Table::Table1 => SolverOptions {
                method: Method::Expanding,
                refined: true,
                target: Target::SmallestMagnitude,
                initial: InitialVector::Ones,
                ..base
            },
            Table::Table2 => {
                let mut v = vec![re(0.03); n];
                if let Some(last) = v.last_mut() {
                    *last = re(1.0);
                }
                SolverOptions {
                    method: Method::Restarted,
                    restart_size: 3,
                    target: Target::LargestReal,
                    initial: InitialVector::Explicit(v),
                    ..base
                }
            }
        }
    }

    /// The matrix for this table. table1 needs SHERMAN4 under `data_dir`.
    pub fn matrix(self, data_dir: Option<&Path>) -> Result<SparseMatrix> {
        match self {
            Table::Table1 => {
                let path = data_dir.and_then(find_sherman4).ok_or_else(|| Error::MissingData(FETCH_HINT.to_string()))?;
                load_matrix(&path, FileFormat::from_path(&path))
            }
            Table::Table2 => MatrixSource::generator("tridiag200").load(),
        }
    }

    /// Count compared against the published one.
    fn count(self, r: &SolveResult) -> usize {
        match self {
            Table::Table1 => r.outer_iterations(),
            Table::Table2 => r.restarts(),
        }
    }

    fn count_ok(self, got: usize, published: usize) -> bool {
        match self {
            Table::Table1 => got.abs_diff(published) <= 3,
            Table::Table2 => got <= 3,
        }
    }
}

pub fn find_sherman4(dir: &Path) -> Option<PathBuf> {
    SHERMAN4_NAMES.iter().map(|n| dir.join(n)).find(|p| p.is_file())
}

#[derive(Debug, Clone)]
pub struct RowOutcome {
    pub variant: CorrectionVariant,
    pub result: SolveResult,
    /// Outer iterations (table 1) or restarts (table 2).
    pub count: usize,
    pub published_count: usize,
    pub published_eigenvalue: f64,
    pub published_resnorm: f64,
    pub eigenvalue_ok: bool,
    pub resnorm_ok: bool,
    pub count_ok: bool,
}

impl RowOutcome {
    pub fn pass(&self) -> bool {
        self.result.converged && self.eigenvalue_ok && self.resnorm_ok && self.count_ok
    }
}

/// Runs every row of `table` on `a`. Histories go to `out_dir` when given.
pub fn run_table(table: Table, a: &SparseMatrix, out_dir: Option<&Path>) -> Result<Vec<RowOutcome>> {
    let want = table.reference_eigenvalue();
    let mut rows = Vec::new();
    for (variant, published_count, published_eigenvalue, published_resnorm) in table.published() {
        let result = solve(a, &table.options(variant, a.n()))?;
        if let Some(dir) = out_dir {
            let path = dir.join(format!("{}_{}.csv", table.name(), variant));
            write_history(&result.history, &path, HistoryFormat::Csv)?;
        }
        let count = table.count(&result);
        rows.push(RowOutcome {
            variant,
            count,
            published_count,
            published_eigenvalue,
            published_resnorm,
            eigenvalue_ok: (result.eigenvalue - Scalar::new(want, 0.0)).norm() <= 1e-9 * want.abs(),
            resnorm_ok: result.final_resnorm <= 1e-10,
            count_ok: table.count_ok(count, published_count),
            result,
        });
    }
    Ok(rows)
}

/// CSV comparison of achieved and published values.
pub fn summary_csv(table: Table, rows: &[RowOutcome]) -> String {
    let count = match table {
        Table::Table1 => "iterations",
        Table::Table2 => "restarts",
    };
    let mut s = format!(
        "variant,converged,{count},eigenvalue_re,eigenvalue_im,resnorm,published_{count},published_eigenvalue,published_resnorm,pass\n"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            r.variant,
            r.result.converged,
            r.count,
            fmt_f64(r.result.eigenvalue.re),
            fmt_f64(r.result.eigenvalue.im),
            fmt_f64(r.result.final_resnorm),
            r.published_count,
            fmt_f64(r.published_eigenvalue),
            fmt_f64(r.published_resnorm),
            r.pass()
        );
    }
    s
}
