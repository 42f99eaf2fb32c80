use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{jacobian, residual, trivial_branch_crossings, BranchState, GalerkinBasis, NonlinearitySpec};
use crate::error::Error;

/// Fixed-point subspace the solver is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropyRestriction {
    #[default]
    None,
    /// Only `m = 0` modes, i.e. functions invariant under rotation about the polar axis.
    Axisymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationOptions {
    pub step: f64,
    pub max_steps: usize,
    pub target_norm: f64,
    pub isotropy: IsotropyRestriction,
    /// Onset amplitude along the kernel mode.
    pub delta: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub min_step: f64,
    pub max_step: f64,
    /// Below `min_step` the step keeps halving down to this before giving up.
    pub fail_step: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            step: 0.05,
            max_steps: 500,
            target_norm: 1.0,
            isotropy: IsotropyRestriction::None,
            delta: 1e-3,
            newton_tol: 1e-10,
            newton_max_iter: 25,
            min_step: 1e-4,
            max_step: 0.2,
            fail_step: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchOutcome {
    ReachedTarget,
    ReturnedToTrivial,
    /// Step budget exhausted.
    Incomplete,
}

#[derive(Debug, Clone)]
pub struct BranchRun {
    pub states: Vec<BranchState>,
    pub outcome: BranchOutcome,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ContinuationError {
    #[error(transparent)]
    Setup(#[from] Error),
    #[error("Newton diverged at step size below minimum (lambda {:.6}, h1 {:.6})", last.lambda, last.h1_norm)]
    Diverged { last: Box<BranchState>, states: Vec<BranchState> },
}

struct Stepper<'a> {
    basis: &'a GalerkinBasis,
    nl: &'a NonlinearitySpec,
    a: &'a [i64],
    active: Vec<usize>,
    full_len: usize,
}

impl Stepper<'_> {
    fn expand(&self, x: &DVector<f64>) -> (Vec<f64>, f64) {
        let mut c = vec![0.0; self.full_len];
        for (r, &j) in self.active.iter().enumerate() {
            c[j] = x[r];
        }
        (c, x[self.active.len()])
    }

    fn residual(&self, x: &DVector<f64>) -> Result<DVector<f64>, Error> {
        let (c, lambda) = self.expand(x);
        let r = residual(self.basis, self.nl, self.a, &c, lambda)?;
        Ok(DVector::from_iterator(self.active.len(), self.active.iter().map(|&j| r[j])))
    }

    /// `[J | ∂_λR]` at `x`, one row short of square.
    fn extended_jacobian(&self, x: &DVector<f64>) -> Result<DMatrix<f64>, Error> {
        let (c, lambda) = self.expand(x);
        let (jac, dl) = jacobian(self.basis, self.nl, self.a, &c, lambda, &self.active)?;
        let n = self.active.len();
        let mut m = DMatrix::zeros(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&jac);
        m.view_mut((0, n), (n, 1)).copy_from(&dl);
        Ok(m)
    }

    /// Unit tangent to the solution curve, oriented along `prev`.
    fn tangent(&self, x: &DVector<f64>, prev: &DVector<f64>) -> Result<Option<DVector<f64>>, Error> {
        let n = self.active.len();
        let mut m = self.extended_jacobian(x)?;
        m.row_mut(n).copy_from(&prev.transpose());
        let mut rhs = DVector::zeros(n + 1);
        rhs[n] = 1.0;
        Ok(m.lu().solve(&rhs).map(|t| {
            let t = t.normalize();
            if t.dot(prev) < 0.0 {
                -t
            } else {
                t
            }
        }))
    }

    /// Newton on `R(x) = 0` bordered by `border·x = level`.
    fn correct(&self, mut x: DVector<f64>, border: &DVector<f64>, level: f64, opts: &ContinuationOptions) -> Result<Option<DVector<f64>>, Error> {
        let n = self.active.len();
        // At least one Newton step: near onset the predictor residual is already tiny in absolute terms.
        for iter in 0..opts.newton_max_iter {
            let r = self.residual(&x)?;
            let g = border.dot(&x) - level;
            if iter > 0 && r.norm() < opts.newton_tol && g.abs() < opts.newton_tol {
                return Ok(Some(x));
            }
            let mut m = self.extended_jacobian(&x)?;
            m.row_mut(n).copy_from(&border.transpose());
            let mut rhs = DVector::zeros(n + 1);
            rhs.rows_mut(0, n).copy_from(&r);
            rhs[n] = g;
            let Some(dx) = m.lu().solve(&rhs) else { return Ok(None) };
            if !dx.iter().all(|v| v.is_finite()) {
                return Ok(None);
            }
            x -= dx;
        }
        let r = self.residual(&x)?;
        if r.norm() < opts.newton_tol && (border.dot(&x) - level).abs() < opts.newton_tol {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }

    fn state(&self, x: &DVector<f64>, arclength: f64) -> BranchState {
        let (c, lambda) = self.expand(x);
        BranchState::new(self.basis, c, lambda, arclength)
    }
}

/// Pseudo-arclength continuation of the branch bifurcating from `u = 0` at `crossing`.
///
/// The first state is the corrected onset point with amplitude `delta` along
/// the kernel mode and counts toward `max_steps`.
pub fn continue_branch(
    basis: &GalerkinBasis,
    nl: &NonlinearitySpec,
    a: &[i64],
    crossing: &BigRational,
    opts: &ContinuationOptions,
) -> Result<BranchRun, ContinuationError> {
    if !(opts.step > 0.0 && opts.min_step > 0.0 && opts.fail_step > 0.0 && opts.max_step >= opts.min_step) {
        return Err(Error::InvalidArgument("continuation step sizes must be positive".into()).into());
    }
    if opts.max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()).into());
    }
    let found = trivial_branch_crossings(basis, a, crossing, crossing)?;
    let Some(hit) = found.into_iter().next() else {
        return Err(Error::NotACrossing(crossing.to_string()).into());
    };
    let keep_mode = |m: i32| opts.isotropy == IsotropyRestriction::None || m == 0;
    let kernel: Vec<_> = hit.kernel.iter().filter(|km| keep_mode(km.m)).collect();
    if kernel.len() != 1 {
        return Err(Error::KernelNotSimple(kernel.len()).into());
    }
    let n_modes = basis.n_modes();
    let p = a.len();
    let active: Vec<usize> = (0..p * n_modes).filter(|j| keep_mode(basis.modes()[j % n_modes].m)).collect();
    let kernel_full = kernel[0].component * n_modes + basis.mode_index(kernel[0].k, kernel[0].m).expect("kernel mode in basis");
    let kernel_pos = active.iter().position(|&j| j == kernel_full).expect("kernel mode is active");
    let dim = active.len();
    let stepper = Stepper { basis, nl, a, active, full_len: p * n_modes };

    // Onset: fix the kernel amplitude and solve for the rest and λ.
    let lambda0 = crossing.to_f64().unwrap_or(f64::NAN);
    let mut x = DVector::zeros(dim + 1);
    x[kernel_pos] = opts.delta;
    x[dim] = lambda0;
    let mut border = DVector::zeros(dim + 1);
    border[kernel_pos] = 1.0;
    let Some(onset) = stepper.correct(x.clone(), &border, opts.delta, opts)? else {
        let last = stepper.state(&x, 0.0);
        return Err(ContinuationError::Diverged { last: Box::new(last), states: Vec::new() });
    };
    let mut x = onset;
    let mut arclength = 0.0;
    let mut states = vec![stepper.state(&x, arclength)];
    let mut prev_tangent = border;
    let mut h = opts.step.clamp(opts.min_step, opts.max_step);

    loop {
        let last = states.last().expect("nonempty");
        if last.h1_norm >= opts.target_norm {
            return Ok(BranchRun { states, outcome: BranchOutcome::ReachedTarget });
        }
        if states.len() > 1 && last.h1_norm < opts.delta / 10.0 {
            return Ok(BranchRun { states, outcome: BranchOutcome::ReturnedToTrivial });
        }
        if states.len() >= opts.max_steps {
            return Ok(BranchRun { states, outcome: BranchOutcome::Incomplete });
        }
        let tangent = stepper.tangent(&x, &prev_tangent)?.unwrap_or_else(|| prev_tangent.clone());
        loop {
            let predicted = &x + &tangent * h;
            let level = tangent.dot(&x) + h;
            if let Some(next) = stepper.correct(predicted, &tangent, level, opts)? {
                arclength += (&next - &x).norm();
                x = next;
                states.push(stepper.state(&x, arclength));
                h = (h * 1.5).min(opts.max_step);
                break;
            }
            h /= 2.0;
            if h < opts.fail_step {
                let last = Box::new(states.last().expect("nonempty").clone());
                return Err(ContinuationError::Diverged { last, states });
            }
        }
        prev_tangent = tangent;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn non_crossing_is_rejected() {
        let basis = GalerkinBasis::new(4);
        let err = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(3), &ContinuationOptions::default());
        assert!(matches!(err, Err(ContinuationError::Setup(Error::NotACrossing(_)))));
    }

    #[test]
    fn multiple_kernel_needs_restriction() {
        let basis = GalerkinBasis::new(4);
        let err = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &ContinuationOptions::default());
        assert!(matches!(err, Err(ContinuationError::Setup(Error::KernelNotSimple(3)))));
    }

    #[test]
    fn one_step_budget() {
        let basis = GalerkinBasis::new(4);
        let opts = ContinuationOptions { max_steps: 1, isotropy: IsotropyRestriction::Axisymmetric, ..Default::default() };
        let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &opts).unwrap();
        assert_eq!(run.states.len(), 1);
        assert_eq!(run.outcome, BranchOutcome::Incomplete);
    }

    #[test]
    fn constant_branch_from_zero() {
        // Constants: −λc + c³/(4π) = 0.
        let basis = GalerkinBasis::new(3);
        let opts = ContinuationOptions { max_steps: 60, ..Default::default() };
        let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(0), &opts).unwrap();
        assert_eq!(run.outcome, BranchOutcome::ReachedTarget);
        for s in &run.states {
            let c = s.coeffs[0];
            assert!((s.lambda - c * c / (4.0 * std::f64::consts::PI)).abs() < 1e-9);
            assert!(s.coeffs[1..].iter().all(|x| x.abs() < 1e-9));
        }
    }
}
