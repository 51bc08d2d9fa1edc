//! Command-line front end.
//!
//! Exit codes: 0 converged, 2 not converged or the inner solve hit a
//! singular system, 1 usage, parse or I/O errors.

mod config;
pub mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{parse_scalar, ExtractArg, InitialArg, InnerArg, RunConfig, TargetArg};
use reproduce::{run_table, summary_csv, Table, DATA_DIR_VAR};

use crate::drivers::{solve, SolveResult};
use crate::matio::{fmt_f64, write_history};
use crate::Error;

pub const EXIT_CONVERGED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jdx",
    version,
    about = "Jacobi-Davidson type eigensolvers for sparse matrices",
    args_conflicts_with_subcommands = true,
    subcommand_negates_reqs = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: Option<RunConfig>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rerun the rows of a published table and compare
    Reproduce {
        /// table1 (needs SHERMAN4 in $JDX_DATA_DIR) or table2
        #[arg(value_parser = |s: &str| s.parse::<Table>().map_err(|e| e.to_string()))]
        table: Table,
        /// Directory for the per-row histories and the summary
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Parses a flag list (without the program name) into a run configuration.
pub fn parse_run_config<I, S>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("jdx")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv)?;
    match cli.run {
        Some(cfg) if cli.command.is_none() => Ok(cfg),
        _ => Err(clap::Error::raw(clap::error::ErrorKind::MissingRequiredArgument, "expected solve flags")),
    }
}

/// Summary line printed after a solve.
pub fn summary_line(r: &SolveResult) -> String {
    format!(
        "converged={} eigenvalue={},{} resnorm={} outer={} restarts={}",
        r.converged,
        fmt_f64(r.eigenvalue.re),
        fmt_f64(r.eigenvalue.im),
        fmt_f64(r.final_resnorm),
        r.outer_iterations(),
        r.restarts()
    )
}

/// Entry point; `argv` includes the program name.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let mut cmd = <Cli as clap::CommandFactory>::command();
    if argv.len() <= 1 {
        eprintln!("{}", cmd.render_help());
        return EXIT_USAGE;
    }
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_CONVERGED,
                _ => EXIT_USAGE,
            };
        }
    };
    match (cli.command, cli.run) {
        (Some(Command::Reproduce { table, out_dir }), _) => run_reproduce(table, &out_dir),
        (None, Some(cfg)) => run_solve(&cfg),
        (None, None) => {
            eprintln!("{}", cmd.render_help());
            EXIT_USAGE
        }
    }
}

fn run_solve(cfg: &RunConfig) -> i32 {
    let prepared = cfg.solver_options().and_then(|o| Ok((cfg.matrix.load()?, o)));
    let (a, opts) = match prepared {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match solve(&a, &opts) {
        Ok(r) => r,
        Err(e @ Error::Singular { .. }) => {
            eprintln!("SINGULAR: {e}");
            return EXIT_NOT_CONVERGED;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &cfg.out {
        if let Err(e) = write_history(&result.history, path, cfg.format) {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
    println!("{}", summary_line(&result));
    if !result.converged {
        eprintln!("stopped: {}", result.stop.as_str());
        if let Some(s) = &result.stagnation {
            eprintln!(
                "stagnation: {} limit_resnorm={} singular_check={}",
                s.classification.as_str(),
                fmt_f64(s.limit_resnorm),
                fmt_f64(s.singular_check)
            );
        }
    }
    let mut code = if result.converged { EXIT_CONVERGED } else { EXIT_NOT_CONVERGED };
    if let Some(want) = cfg.expect {
        let ok = (result.eigenvalue - want).norm() <= 1e-9 * want.norm().max(f64::MIN_POSITIVE);
        println!("expected={},{} match={ok}", fmt_f64(want.re), fmt_f64(want.im));
        if !ok {
            code = EXIT_NOT_CONVERGED;
        }
    }
    code
}

fn run_reproduce(table: Table, out_dir: &std::path::Path) -> i32 {
    let data_dir = std::env::var_os(DATA_DIR_VAR).map(PathBuf::from);
    let a = match table.matrix(data_dir.as_deref()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let rows = match run_table(table, &a, Some(out_dir)) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NOT_CONVERGED;
        }
    };
    let summary = summary_csv(table, &rows);
    let path = out_dir.join(format!("{}_summary.csv", table.name()));
    if let Err(e) = std::fs::write(&path, &summary) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    print!("{summary}");
    if rows.iter().all(|r| r.pass()) {
        EXIT_CONVERGED
    } else {
        EXIT_NOT_CONVERGED
    }
}

#[cfg(test)]
mod tests;
