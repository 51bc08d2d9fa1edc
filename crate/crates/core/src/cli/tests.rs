use super::*;
use crate::correction::InnerSolver;
use crate::drivers::{Extraction, Method};
use crate::linalg::re;
use crate::matio::MatrixSource;
use crate::projection::Target;

#[test]
fn defaults_match_solver_defaults() {
    let cfg = parse_run_config(["--matrix", "gen:diag100"]).unwrap();
    assert_eq!(cfg, RunConfig::new(MatrixSource::generator("diag100")));
    let o = cfg.solver_options().unwrap();
    assert_eq!(o, crate::drivers::SolverOptions::default());
}

#[test]
fn parses_every_flag() {
    let cfg = parse_run_config([
        "--matrix",
        "gen:tridiag200:50",
        "--method",
        "restarted",
        "--variant",
        "mds",
        "--inner",
        "gmres:8",
        "--extract",
        "harmonic:0.5,-1",
        "--refined",
        "--target",
        "nearest:0.25",
        "--tol",
        "1e-12",
        "--max-outer",
        "40",
        "--max-subspace",
        "20",
        "--restart-size",
        "4",
        "--format",
        "json",
        "--out",
        "h.json",
    ])
    .unwrap();
    assert_eq!(cfg.method, Method::Restarted);
    assert_eq!(cfg.inner.0, InnerSolver::gmres(8));
    assert_eq!(cfg.extract.0, Extraction::Harmonic(crate::Scalar::new(0.5, -1.0)));
    assert_eq!(cfg.target(), Target::Nearest(re(0.25)));
    assert!(cfg.refined);
    assert_eq!(cfg.tol, 1e-12);
    assert_eq!((cfg.max_outer, cfg.max_subspace, cfg.restart_size), (40, 20, 4));
    assert_eq!(parse_run_config(cfg.to_args()).unwrap(), cfg);
}

#[test]
fn harmonic_defaults_to_nearest_shift() {
    let cfg = parse_run_config(["--matrix", "gen:diag100", "--extract", "harmonic:0.1"]).unwrap();
    assert_eq!(cfg.target(), Target::Nearest(re(0.1)));
    let cfg = parse_run_config(["--matrix", "gen:diag100", "--extract", "harmonic:0.1", "--target", "largest"]).unwrap();
    assert_eq!(cfg.target(), Target::LargestReal);
    assert_eq!(parse_run_config(cfg.to_args()).unwrap(), cfg);
}

#[test]
fn rejects_bad_values() {
    for bad in [
        vec!["--matrix", "gen:nope"],
        vec!["--matrix", "diag100"],
        vec!["--matrix", "gen:diag100", "--inner", "gmres:0"],
        vec!["--matrix", "gen:diag100", "--inner", "lu"],
        vec!["--matrix", "gen:diag100", "--extract", "harmonic:x"],
        vec!["--matrix", "gen:diag100", "--target", "biggest"],
        vec!["--matrix", "gen:diag100", "--initial", "zeros"],
        vec!["--matrix", "gen:diag100", "--format", "xml"],
        vec!["--method", "simplified"],
    ] {
        assert!(parse_run_config(bad.clone()).is_err(), "{bad:?}");
    }
}

#[test]
fn scalar_values() {
    assert_eq!(parse_scalar("1.5").unwrap(), re(1.5));
    assert_eq!(parse_scalar("1,-2").unwrap(), crate::Scalar::new(1.0, -2.0));
    assert!(parse_scalar("1,2,3").is_err());
    assert!(parse_scalar("inf").is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(run(["jdx"]), EXIT_USAGE);
    assert_eq!(run(["jdx", "--bogus"]), EXIT_USAGE);
    assert_eq!(
        run(["jdx", "--matrix", "gen:example1", "--method", "simplified", "--variant", "ojd", "--inner", "ge"]),
        EXIT_NOT_CONVERGED
    );
    assert_eq!(run(["jdx", "--matrix", "gen:diag100:10", "--target", "largest"]), EXIT_CONVERGED);
    assert_eq!(run(["jdx", "--matrix", "gen:diag100:10", "--max-outer", "1", "--tol", "1e-15"]), EXIT_NOT_CONVERGED);
    assert_eq!(run(["jdx", "--matrix", "file:/nonexistent/m.mtx"]), EXIT_USAGE);
}
