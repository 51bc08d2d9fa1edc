use std::path::Path;
use std::process::{Command, Output};

fn jdx(args: &[&str], data_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jdx"));
    cmd.args(args);
    match data_dir {
        Some(d) => cmd.env("JDX_DATA_DIR", d),
        None => cmd.env_remove("JDX_DATA_DIR"),
    };
    cmd.output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace().find_map(|f| f.strip_prefix(key)).unwrap()
}

#[test]
fn no_arguments_prints_usage_and_fails() {
    let out = jdx(&[], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("Usage"));
}

#[test]
fn bad_flag_value_is_a_usage_error() {
    let out = jdx(&["--matrix", "gen:diag100", "--variant", "xyz"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("xyz"));
}

#[test]
fn singular_correction_reports_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("u0.txt");
    std::fs::write(&start, "0\n0\n1\n0\n").unwrap();
    let out = jdx(
        &["--matrix", "gen:example1", "--method", "simplified", "--variant", "ojd", "--initial", &format!("file:{}", start.display())],
        None,
    );
    assert_eq!(out.status.code(), Some(2), "{}", text(&out.stderr));
    assert!(text(&out.stdout).contains("SINGULAR") || text(&out.stderr).contains("SINGULAR"));
}

#[test]
fn harmonic_run_converges_and_writes_history() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.csv");
    let out = jdx(
        &[
            "--matrix", "gen:diag100", "--inner", "gmres:8", "--extract", "harmonic:0", "--tol", "1e-12",
            "--out", hist.to_str().unwrap(), "--expect", "-0.0079",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    let line = stdout.lines().find(|l| l.starts_with("converged=")).unwrap();
    assert_eq!(field(line, "converged="), "true");
    let eig: f64 = field(line, "eigenvalue=").split(',').next().unwrap().parse().unwrap();
    assert!((eig + 0.0079).abs() <= 1e-12);
    let outer: usize = field(line, "outer=").parse().unwrap();
    let csv = std::fs::read_to_string(&hist).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("iter,restart,ritz_re,ritz_im,resnorm,subspace_dim,angle"));
    assert_eq!(lines.count(), outer);
}

#[test]
fn json_history() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("h.json");
    let out = jdx(
        &[
            "--matrix", "gen:tridiag200:40", "--method", "restarted", "--variant", "mjd",
            "--out", hist.to_str().unwrap(), "--format", "json",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&hist).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for key in ["iter", "restart", "ritz_re", "ritz_im", "resnorm", "subspace_dim", "angle"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn expect_mismatch_exits_2() {
    let out = jdx(&["--matrix", "gen:diag100", "--expect", "0.5"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_without_data_explains_where_to_get_it() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdx(&["reproduce", "table1", "--out-dir", dir.path().to_str().unwrap()], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("JDX_DATA_DIR") && err.contains("sherman4"), "{err}");
}

#[test]
fn table1_runs_on_whatever_matrix_is_supplied() {
    let dir = tempfile::tempdir().unwrap();
    let mut mm = String::from("%%MatrixMarket matrix coordinate real general\n30 30 30\n");
    for i in 1..=30 {
        mm.push_str(&format!("{i} {i} {}\n", i as f64 / 10.0));
    }
    std::fs::write(dir.path().join("sherman4.mtx"), mm).unwrap();
    let out = jdx(&["reproduce", "table1", "--out-dir", dir.path().to_str().unwrap()], Some(dir.path()));
    assert_eq!(out.status.code(), Some(2), "{}", text(&out.stderr));
    for name in ["table1_ojd.csv", "table1_mjd.csv", "table1_jds.csv", "table1_mds.csv", "table1_summary.csv"] {
        assert!(dir.path().join(name).is_file(), "{name}");
    }
}

#[test]
fn table2_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = jdx(&["reproduce", "table2", "--out-dir", dir.path().to_str().unwrap()], None);
    let summary = std::fs::read_to_string(dir.path().join("table2_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 5, "{summary}");
    let code = out.status.code().unwrap();
    let all_pass = summary.lines().skip(1).all(|l| l.ends_with(",true"));
    assert_eq!(code, if all_pass { 0 } else { 2 });
}
