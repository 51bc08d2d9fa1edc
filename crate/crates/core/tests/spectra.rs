mod common;

use common::*;
use jdx::cli::reproduce::Table;
use jdx::correction::{CorrectionVariant, InnerSolver};
use jdx::drivers::{msjd_symmetric_step, simplified_solve, solve, InitialVector, Method, SolverOptions};
use jdx::linalg::small_eig;
use jdx::linalg::vector::norm;
use jdx::matio::{gen_matrix, MatrixSource};
use jdx::projection::{harmonic_ritz, rayleigh_ritz, refined_vector, SubspaceBasis, Target};
use jdx::{Scalar, SparseMatrix};
use std::f64::consts::PI;

fn generated(name: &str) -> SparseMatrix {
    gen_matrix(&MatrixSource::generator(name)).unwrap()
}

fn krylov(a: &SparseMatrix, k: usize) -> SubspaceBasis {
    let mut v = SubspaceBasis::from_vector(&vec![c(1.0); a.n()]).unwrap();
    while v.dim() < k {
        let next = a.spmv(v.cols().last().unwrap()).unwrap();
        v.expand(&next).unwrap();
    }
    v
}

fn dense_eigenvalues(a: &SparseMatrix) -> Vec<Scalar> {
    small_eig(&a.to_dense()).unwrap().into_iter().map(|p| p.value).collect()
}

#[test]
fn qtq100_largest_eigenvalue() {
    let a = generated("qtq100");
    let closed = 2.0 + 2.0 * (PI / 101.0).cos();
    assert!((closed - 3.999032564583972).abs() <= 1e-9 * closed);
    let top = dense_eigenvalues(&a).into_iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    assert!((top - closed).abs() <= 1e-9 * closed, "{top}");
    let sturm = tridiag_max_eig(&[2.0; 100], &[-1.0; 99]);
    assert!((sturm - closed).abs() <= 1e-12 * closed);
}

#[test]
fn qtq100_krylov15_top_ritz_value() {
    let a = generated("qtq100");
    let pairs = rayleigh_ritz(&a, &krylov(&a, 15), Target::LargestReal).unwrap();
    // Dense Lanczos oracle: the top Ritz value is still about 4e-2 short of 3.99903.
    assert!((pairs[0].theta - c(3.956382963195543)).norm() <= 1e-9, "{}", pairs[0].theta);
    assert!(pairs[0].theta.re < 3.999032564583972);
}

#[test]
fn qtq100_refined_residual_not_larger() {
    let a = generated("qtq100");
    let v = krylov(&a, 10);
    let theta = c(3.9990);
    let pairs = rayleigh_ritz(&a, &v, Target::Nearest(theta)).unwrap();
    let plain = norm(&jdx::projection::residual(&a, theta, &pairs[0].u).unwrap());
    let (_, refined) = refined_vector(&a, theta, &v).unwrap();
    assert!(refined <= plain + 1e-12, "{refined} > {plain}");
}

#[test]
fn tridiag200_largest_eigenvalue_matches_sturm_oracle() {
    let a = generated("tridiag200");
    let d: Vec<f64> = (1..=200).map(|i| if i == 200 { 2.4 + 200.0 / 1.5 } else { 2.4 + i as f64 / 2.0 }).collect();
    let sturm = tridiag_max_eig(&d, &[1.0; 199]);
    let top = dense_eigenvalues(&a).into_iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    assert!((top - sturm).abs() <= 1e-10 * sturm, "{top} vs {sturm}");
    assert!((sturm - 1.3576288960725634e2).abs() <= 1e-9 * sturm);
    let gershgorin = d.iter().map(|x| x + 2.0).fold(f64::NEG_INFINITY, f64::max);
    assert!(top <= gershgorin);
}

#[test]
fn tridiag200_restarted_variants_find_the_top_eigenvalue() {
    let a = generated("tridiag200");
    let d: Vec<f64> = (1..=200).map(|i| if i == 200 { 2.4 + 200.0 / 1.5 } else { 2.4 + i as f64 / 2.0 }).collect();
    let sturm = tridiag_max_eig(&d, &[1.0; 199]);
    for variant in CorrectionVariant::ALL {
        let opts = Table::Table2.options(variant, a.n());
        let res = solve(&a, &opts).unwrap();
        assert!(res.converged, "{variant}");
        assert!((res.eigenvalue.re - sturm).abs() <= 1e-9 * sturm, "{variant}: {}", res.eigenvalue);
        assert!(res.final_resnorm <= 1e-10);
    }
}

#[test]
fn diag100_harmonic_krylov20_targets_smallest_magnitude() {
    let a = generated("diag100");
    let oracle = (1..=100)
        .map(|j| (j as f64 / 100.0).powi(2) - 0.8)
        .min_by(|x, y| x.abs().total_cmp(&y.abs()))
        .unwrap();
    assert!((oracle - (0.89f64.powi(2) - 0.8)).abs() < 1e-15);
    let pairs = harmonic_ritz(&a, &krylov(&a, 20), c(0.0), Target::Nearest(c(0.0))).unwrap();
    assert!((pairs[0].theta - c(0.058045990174566894)).norm() <= 1e-8, "{}", pairs[0].theta);
    assert!((pairs[0].rayleigh - c(0.0298846805087806)).norm() <= 1e-8, "{}", pairs[0].rayleigh);
    let opts = SolverOptions {
        variant: CorrectionVariant::Ojd,
        inner: InnerSolver::gmres(8),
        extraction: jdx::drivers::Extraction::Harmonic(c(0.0)),
        target: Target::Nearest(c(0.0)),
        tol: 1e-12,
        ..SolverOptions::default()
    };
    let res = solve(&a, &opts).unwrap();
    assert!(res.converged);
    assert!((res.eigenvalue - c(oracle)).norm() <= 1e-12, "{}", res.eigenvalue);
}

#[test]
fn blockdiag_complex_finds_the_complex_pair() {
    let a = generated("blockdiag-complex");
    let shift = Scalar::new(0.81, 0.08);
    let opts = SolverOptions {
        variant: CorrectionVariant::Ojd,
        inner: InnerSolver::gmres(8),
        extraction: jdx::drivers::Extraction::Harmonic(shift),
        target: Target::Nearest(shift),
        tol: 1e-10,
        ..SolverOptions::default()
    };
    let res = solve(&a, &opts).unwrap();
    assert!(res.converged);
    assert!((res.eigenvalue - Scalar::new(0.8, 0.1)).norm() <= 1e-9, "{}", res.eigenvalue);
}

#[test]
fn simplified_mjd_step_matches_inverse_square_power() {
    let a = SparseMatrix::diagonal(&[c(1.0), c(2.0), c(4.0)]);
    let u0: Vec<Scalar> = [0.3, 0.5, 0.81].iter().map(|&x| c(x)).collect();
    let n0 = norm(&u0);
    let u0: Vec<Scalar> = u0.iter().map(|x| x / n0).collect();
    let opts = SolverOptions {
        method: Method::Simplified,
        variant: CorrectionVariant::Mjd,
        tol: 1e-14,
        max_outer: 2,
        initial: InitialVector::Explicit(u0.clone()),
        ..SolverOptions::default()
    };
    let res = simplified_solve(&a, &opts).unwrap();
    let theta = res.history[0].ritz;
    let want = msjd_symmetric_step(&a, theta, &u0).unwrap();
    assert!(cosine(&want, &res.eigenvector) >= 1.0 - 1e-12);
}

#[test]
fn blockdiag_complex_harmonic_krylov_resolves_the_complex_eigenvalue() {
    let a = generated("blockdiag-complex");
    let shift = Scalar::new(0.81, 0.08);
    let pairs = harmonic_ritz(&a, &krylov(&a, 12), shift, Target::Nearest(shift)).unwrap();
    assert!((pairs[0].theta - Scalar::new(0.8, 0.1)).norm() <= 1e-6, "{}", pairs[0].theta);
}
