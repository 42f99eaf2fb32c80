mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::*;
use eqbif::galerkin::{
    continue_branch, functional, residual, trivial_branch_crossings, BranchOutcome, ContinuationError,
    ContinuationOptions, GalerkinBasis, IsotropyRestriction, NonlinearitySpec, UserNonlinearity,
};
use eqbif::{bifurcation_levels, Error, SymmetricSpaceData, SystemSignature};
use num_bigint::BigInt;
use num_rational::BigRational;

fn axisymmetric() -> ContinuationOptions {
    ContinuationOptions { isotropy: IsotropyRestriction::Axisymmetric, ..Default::default() }
}

fn gamma(basis: &GalerkinBasis) -> f64 {
    let j = basis.mode_index(1, 0).unwrap();
    (0..basis.quadrature().len()).map(|q| basis.quadrature().weights[q] * basis.value(q, j).powi(4)).sum()
}

#[test]
fn quartic_moment_of_y10() {
    // Y₁₀ = √(3/4π) cos θ, so ∫ Y₁₀⁴ = 9/(16π²) · 2π · 2/5
    let basis = GalerkinBasis::new(4);
    assert!((gamma(&basis) - 9.0 / (20.0 * PI)).abs() < 1e-14);
}

#[test]
fn onset_follows_the_one_mode_reduction() {
    // −(λ − 2)t + γt³ = 0 ⇒ λ ≈ 2 + γt²
    let basis = GalerkinBasis::new(8);
    let g = gamma(&basis);
    let j = basis.mode_index(1, 0).unwrap();
    let opts = ContinuationOptions { step: 0.01, max_step: 0.02, max_steps: 8, ..axisymmetric() };
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &opts).unwrap();
    for s in run.states.iter().skip(1) {
        let t = s.coeffs[j];
        let rel = ((s.lambda - 2.0) / (g * t * t) - 1.0).abs();
        assert!(t.abs() < 0.2 && rel < 0.05, "t {t}: lambda {}, rel {rel}", s.lambda);
        assert!(s.lambda > 2.0);
    }
}

#[test]
fn constant_branch_solves_the_scalar_equation() {
    // u = c Y₀₀ is constant; −λc + c³/(4π) = 0
    let basis = GalerkinBasis::new(4);
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(0), &ContinuationOptions::default()).unwrap();
    assert_eq!(run.outcome, BranchOutcome::ReachedTarget);
    for s in &run.states {
        let c = s.coeffs[0];
        assert!((-s.lambda * c + c.powi(3) / (4.0 * PI)).abs() < 1e-9);
        assert!(!s.is_nonconstant(&basis, 1));
    }
}

#[test]
fn branch_from_two_reaches_target() {
    let basis = GalerkinBasis::new(8);
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &axisymmetric()).unwrap();
    assert_eq!(run.outcome, BranchOutcome::ReachedTarget);
    assert!(run.states.len() <= 500);
    assert!(run.states.last().unwrap().h1_norm >= 1.0);
    assert!(run.states.iter().all(|s| s.is_nonconstant(&basis, 1)));
    assert!(run.states.windows(2).all(|w| w[1].arclength > w[0].arclength));
    for s in &run.states {
        let r = residual(&basis, &NonlinearitySpec::quartic(), &[-1], &s.coeffs, s.lambda).unwrap();
        assert!(r.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-9);
    }
}

#[test]
fn linear_problem_keeps_lambda_fixed() {
    let basis = GalerkinBasis::new(4);
    let run = continue_branch(&basis, &NonlinearitySpec::linear(), &[-1], &q(6), &axisymmetric()).unwrap();
    assert_eq!(run.outcome, BranchOutcome::ReachedTarget);
    assert!(run.states.iter().all(|s| (s.lambda - 6.0).abs() < 1e-12));
}

#[test]
fn branch_errors() {
    let basis = GalerkinBasis::new(6);
    let nl = NonlinearitySpec::quartic();
    let err = continue_branch(&basis, &nl, &[-1], &q(5), &axisymmetric()).unwrap_err();
    assert!(matches!(err, ContinuationError::Setup(Error::NotACrossing(_))));
    let err = continue_branch(&basis, &nl, &[-1, -1], &q(2), &axisymmetric()).unwrap_err();
    assert!(matches!(err, ContinuationError::Setup(Error::KernelNotSimple(2))));
    let err = continue_branch(&basis, &nl, &[-1], &q(2), &ContinuationOptions::default()).unwrap_err();
    assert!(err.to_string().contains("apply isotropy restriction"));
    let opts = ContinuationOptions { newton_tol: 0.0, ..axisymmetric() };
    assert!(matches!(continue_branch(&basis, &nl, &[-1], &q(2), &opts), Err(ContinuationError::Diverged { .. })));
}

#[test]
fn one_step_budget_gives_one_row() {
    let basis = GalerkinBasis::new(6);
    let opts = ContinuationOptions { max_steps: 1, ..axisymmetric() };
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &opts).unwrap();
    assert_eq!(run.states.len(), 1);
    assert_eq!(run.outcome, BranchOutcome::Incomplete);
}

#[test]
fn crossings_agree_with_exact_levels_on_fractional_windows() {
    let space = SymmetricSpaceData::sphere(2).unwrap();
    let basis = GalerkinBasis::new(5);
    let lo = BigRational::new(BigInt::from(-13), BigInt::from(2));
    let hi = BigRational::new(BigInt::from(25), BigInt::from(2));
    for (np, nm) in signatures(3) {
        let a = coefficients(np, nm);
        let numeric: Vec<_> = trivial_branch_crossings(&basis, &a, &lo, &hi).unwrap().into_iter().map(|c| c.lambda).collect();
        let exact: Vec<_> = bifurcation_levels(&space, SystemSignature::new(np, nm).unwrap(), &hi)
            .unwrap()
            .into_iter()
            .map(|l| l.lambda0)
            .filter(|l| *l >= lo)
            .collect();
        assert_eq!(numeric, exact, "{a:?}");
    }
}

#[test]
fn kernel_sizes_at_crossings() {
    let basis = GalerkinBasis::new(4);
    let c = trivial_branch_crossings(&basis, &[-1, -1], &q(2), &q(2)).unwrap();
    assert_eq!(c[0].kernel.len(), 6);
}

#[test]
fn user_quartic_matches_preset() {
    let user = UserNonlinearity {
        potential: Arc::new(|u: &[f64], _| -0.25 * u.iter().map(|x| x * x).sum::<f64>().powi(2)),
        gradient: Arc::new(|u: &[f64], _, out: &mut [f64]| {
            let r2: f64 = u.iter().map(|x| x * x).sum();
            for (o, x) in out.iter_mut().zip(u) {
                *o = -r2 * x;
            }
        }),
        polynomial_degree: Some(4),
    };
    let nl_user = NonlinearitySpec::user(user, 4.0);
    nl_user.check_assumptions(2, 0.0).unwrap();
    let basis = GalerkinBasis::new(4);
    let c = eqbif::galerkin::random_coeffs(&basis, 2, 0.5, 3);
    let a = [-1, 1];
    let r1 = residual(&basis, &nl_user, &a, &c, 0.7).unwrap();
    let r2 = residual(&basis, &NonlinearitySpec::quartic(), &a, &c, 0.7).unwrap();
    assert!(r1.iter().zip(&r2).all(|(x, y)| (x - y).abs() < 1e-14));
    let f1 = functional(&basis, &nl_user, &a, &c, 0.7).unwrap();
    let f2 = functional(&basis, &NonlinearitySpec::quartic(), &a, &c, 0.7).unwrap();
    assert!((f1 - f2).abs() < 1e-14);
}

#[test]
fn rotation_equivariance_at_k8() {
    let basis = GalerkinBasis::new(8);
    let nl = NonlinearitySpec::quartic();
    let a = [-1, 1];
    let c = eqbif::galerkin::random_coeffs(&basis, 2, 0.4, 9);
    for theta in [0.3, 1.1, 2.9] {
        let lhs = residual(&basis, &nl, &a, &basis.rotate(&c, 2, theta), 1.2).unwrap();
        let rhs = basis.rotate(&residual(&basis, &nl, &a, &c, 1.2).unwrap(), 2, theta);
        let scale = rhs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(lhs.iter().zip(&rhs).all(|(x, y)| (x - y).abs() <= 1e-10 * scale.max(1.0)));
    }
}
