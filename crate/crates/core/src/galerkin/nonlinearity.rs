//! Nonlinear parts `h(u, λ)` of the potential `F(u, λ) = ½λ|u|² + h(u, λ)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type PotentialFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64], f64, &mut [f64]) + Send + Sync;

/// A user-supplied pair `(h, ∇_u h)`.
#[derive(Clone)]
pub struct UserNonlinearity {
    pub potential: Arc<PotentialFn>,
    pub gradient: Arc<GradientFn>,
    /// Total degree of `h` in `u` when it is a polynomial; drives the
    /// quadrature resolution check.
    pub polynomial_degree: Option<usize>,
}

impl fmt::Debug for UserNonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UserNonlinearity").field("polynomial_degree", &self.polynomial_degree).finish()
    }
}

#[derive(Debug, Clone)]
pub enum NonlinearityKind {
    /// `h(u) = −¼|u|⁴`
    QuarticDefocusing,
    /// `h ≡ 0`
    Linear,
    User(UserNonlinearity),
}

#[derive(Debug, Clone)]
pub struct NonlinearitySpec {
    pub kind: NonlinearityKind,
    /// Exponent `q` in the growth bound `|∇_u h| ≤ C(1 + |u|^{q−1})`.
    pub growth_exponent: f64,
}

impl NonlinearitySpec {
    pub fn quartic() -> Self {
        NonlinearitySpec { kind: NonlinearityKind::QuarticDefocusing, growth_exponent: 4.0 }
    }

    pub fn linear() -> Self {
        NonlinearitySpec { kind: NonlinearityKind::Linear, growth_exponent: 2.0 }
    }

    pub fn user(user: UserNonlinearity, growth_exponent: f64) -> Self {
        NonlinearitySpec { kind: NonlinearityKind::User(user), growth_exponent }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            NonlinearityKind::QuarticDefocusing => "quartic",
            NonlinearityKind::Linear => "linear",
            NonlinearityKind::User(_) => "user",
        }
    }

    /// Degree of `h` in `u`, if polynomial.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match &self.kind {
            NonlinearityKind::QuarticDefocusing => Some(4),
            NonlinearityKind::Linear => Some(0),
            NonlinearityKind::User(u) => u.polynomial_degree,
        }
    }

    pub fn potential(&self, u: &[f64], lambda: f64) -> f64 {
        match &self.kind {
            NonlinearityKind::QuarticDefocusing => {
                let r2: f64 = u.iter().map(|x| x * x).sum();
                -0.25 * r2 * r2
            }
            NonlinearityKind::Linear => 0.0,
            NonlinearityKind::User(f) => (f.potential)(u, lambda),
        }
    }

    pub fn gradient(&self, u: &[f64], lambda: f64, out: &mut [f64]) {
        match &self.kind {
            NonlinearityKind::QuarticDefocusing => {
                let r2: f64 = u.iter().map(|x| x * x).sum();
                for (o, x) in out.iter_mut().zip(u) {
                    *o = -r2 * x;
                }
            }
            NonlinearityKind::Linear => out.iter_mut().for_each(|o| *o = 0.0),
            NonlinearityKind::User(f) => (f.gradient)(u, lambda, out),
        }
    }

    /// Row-major `p × p` Hessian of `h` in `u`.
    pub fn hessian(&self, u: &[f64], lambda: f64, out: &mut [f64]) {
        let p = u.len();
        match &self.kind {
            NonlinearityKind::QuarticDefocusing => {
                let r2: f64 = u.iter().map(|x| x * x).sum();
                for i in 0..p {
                    for j in 0..p {
                        let delta = if i == j { r2 } else { 0.0 };
                        out[i * p + j] = -(2.0 * u[i] * u[j] + delta);
                    }
                }
            }
            NonlinearityKind::Linear => out.iter_mut().for_each(|o| *o = 0.0),
            NonlinearityKind::User(_) => {
                let mut up = u.to_vec();
                let mut gp = vec![0.0; p];
                let mut gm = vec![0.0; p];
                for j in 0..p {
                    let step = 1e-6 * (1.0 + u[j].abs());
                    up[j] = u[j] + step;
                    self.gradient(&up, lambda, &mut gp);
                    up[j] = u[j] - step;
                    self.gradient(&up, lambda, &mut gm);
                    up[j] = u[j];
                    for i in 0..p {
                        out[i * p + j] = (gp[i] - gm[i]) / (2.0 * step);
                    }
                }
            }
        }
    }

    /// `∂_λ ∇_u h`; zero for the presets.
    pub fn lambda_derivative(&self, u: &[f64], lambda: f64, out: &mut [f64]) {
        match &self.kind {
            NonlinearityKind::User(_) => {
                let p = u.len();
                let step = 1e-6 * (1.0 + lambda.abs());
                let mut gp = vec![0.0; p];
                let mut gm = vec![0.0; p];
                self.gradient(u, lambda + step, &mut gp);
                self.gradient(u, lambda - step, &mut gm);
                for i in 0..p {
                    out[i] = (gp[i] - gm[i]) / (2.0 * step);
                }
            }
            _ => out.iter_mut().for_each(|o| *o = 0.0),
        }
    }

    /// Spot-check of the structural assumptions on `S²` for a `p`-component
    /// system: `∇h(0) = 0`, `∇²h(0) = 0` (so `h = o(|u|²)`), finite growth.
    pub fn check_assumptions(&self, p: usize, lambda: f64) -> Result<()> {
        if !self.growth_exponent.is_finite() || self.growth_exponent < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "growth exponent {} must be finite and at least 1",
                self.growth_exponent
            )));
        }
        let zero = vec![0.0; p];
        let mut g = vec![0.0; p];
        self.gradient(&zero, lambda, &mut g);
        let mut hess = vec![0.0; p * p];
        self.hessian(&zero, lambda, &mut hess);
        let worst = g.iter().chain(&hess).fold(0.0f64, |m, x| m.max(x.abs()));
        if worst > 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "nonlinearity is not o(|u|²) at the origin (size {worst:e})"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_derivatives_match_finite_differences() {
        let nl = NonlinearitySpec::quartic();
        let u = [0.3, -0.7, 1.1];
        let mut g = [0.0; 3];
        nl.gradient(&u, 0.0, &mut g);
        let mut hess = [0.0; 9];
        nl.hessian(&u, 0.0, &mut hess);
        let eps = 1e-6;
        for j in 0..3 {
            let mut up = u;
            let mut um = u;
            up[j] += eps;
            um[j] -= eps;
            let fd = (nl.potential(&up, 0.0) - nl.potential(&um, 0.0)) / (2.0 * eps);
            assert!((fd - g[j]).abs() < 1e-8);
            let mut gp = [0.0; 3];
            let mut gm = [0.0; 3];
            nl.gradient(&up, 0.0, &mut gp);
            nl.gradient(&um, 0.0, &mut gm);
            for i in 0..3 {
                assert!(((gp[i] - gm[i]) / (2.0 * eps) - hess[i * 3 + j]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn presets_satisfy_assumptions() {
        NonlinearitySpec::quartic().check_assumptions(3, 1.0).unwrap();
        NonlinearitySpec::linear().check_assumptions(2, 1.0).unwrap();
    }

    #[test]
    fn quadratic_user_term_is_rejected() {
        let user = UserNonlinearity {
            potential: Arc::new(|u: &[f64], _| u.iter().map(|x| x * x).sum::<f64>()),
            gradient: Arc::new(|u: &[f64], _, out: &mut [f64]| {
                for (o, x) in out.iter_mut().zip(u) {
                    *o = 2.0 * x;
                }
            }),
            polynomial_degree: Some(2),
        };
        assert!(NonlinearitySpec::user(user, 2.0).check_assumptions(1, 0.0).is_err());
    }
}
