//! Spectral-Galerkin discretization of
//! `Φ(u, λ) = −½ Σ a_i ∫|∇u_i|² − ∫ F(u, λ)` on `S²` in real spherical
//! harmonics, together with the pseudo-arclength continuation used to follow
//! bifurcating branches.

mod continuation;
mod nonlinearity;
mod quadrature;

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;

pub use continuation::{
    continue_branch, BranchOutcome, BranchRun, ContinuationError, ContinuationOptions, IsotropyRestriction,
};
pub use nonlinearity::{NonlinearityKind, NonlinearitySpec, UserNonlinearity};
pub use quadrature::{gauss_legendre, SphereQuadrature};

/// Label of a real spherical harmonic `Y_{k,m}`; `m < 0` are the `sin(|m|φ)` modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mode {
    pub k: u32,
    pub m: i32,
}

impl Mode {
    /// Eigenvalue `k(k+1)` of `−Δ` on `S²`.
    pub fn eigenvalue(&self) -> f64 {
        (self.k * (self.k + 1)) as f64
    }
}

/// Real orthonormal spherical harmonics up to degree `K` sampled on a product quadrature.
#[derive(Debug, Clone)]
pub struct GalerkinBasis {
    max_degree: u32,
    modes: Vec<Mode>,
    quadrature: SphereQuadrature,
    /// `values[node * n_modes + mode]`
    values: Vec<f64>,
}

/// Fill `out` with all `Y_{k,m}`, `k ≤ max_degree`, in basis order at `(cos θ, φ)`.
pub fn real_harmonics(max_degree: u32, x: f64, phi: f64, out: &mut [f64]) {
    let kmax = max_degree as usize;
    let s = (1.0 - x * x).max(0.0).sqrt();
    // Fully normalized associated Legendre functions, ∫(P̄_k^m)² 2π sinθ dθ = 1 for m = 0.
    let mut pbar = vec![0.0; (kmax + 1) * (kmax + 1)];
    let idx = |k: usize, m: usize| k * (kmax + 1) + m;
    pbar[idx(0, 0)] = (1.0 / (4.0 * PI)).sqrt();
    for m in 1..=kmax {
        let mf = m as f64;
        pbar[idx(m, m)] = -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s * pbar[idx(m - 1, m - 1)];
    }
    for m in 0..kmax {
        pbar[idx(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * x * pbar[idx(m, m)];
    }
    for m in 0..=kmax {
        for k in m + 2..=kmax {
            let (kf, mf) = (k as f64, m as f64);
            let a = ((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf)).sqrt();
            let b = (((kf - 1.0) * (kf - 1.0) - mf * mf) / (4.0 * (kf - 1.0) * (kf - 1.0) - 1.0)).sqrt();
            pbar[idx(k, m)] = a * (x * pbar[idx(k - 1, m)] - b * pbar[idx(k - 2, m)]);
        }
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut pos = 0;
    for k in 0..=kmax {
        for m in -(k as i64)..=k as i64 {
            let am = m.unsigned_abs() as usize;
            let p = pbar[idx(k, am)];
            out[pos] = match m.cmp(&0) {
                std::cmp::Ordering::Equal => p,
                std::cmp::Ordering::Greater => sqrt2 * p * (am as f64 * phi).cos(),
                std::cmp::Ordering::Less => sqrt2 * p * (am as f64 * phi).sin(),
            };
            pos += 1;
        }
    }
}

impl GalerkinBasis {
    /// Basis of degree `max_degree` with a quadrature exact to degree `4K`.
    pub fn new(max_degree: u32) -> Self {
        Self::build(max_degree, 4 * max_degree as usize)
    }

    /// Quadrature exactness below `4K` is allowed (down to `2K`, needed for
    /// orthonormality) but then only lower-degree nonlinearities resolve.
    pub fn with_exactness(max_degree: u32, exactness: usize) -> Result<Self> {
        let needed = 2 * max_degree as usize;
        if exactness < needed {
            return Err(Error::QuadratureUnderresolved { needed, available: exactness });
        }
        Ok(Self::build(max_degree, exactness))
    }

    fn build(max_degree: u32, exactness: usize) -> Self {
        let modes: Vec<Mode> = (0..=max_degree)
            .flat_map(|k| (-(k as i32)..=k as i32).map(move |m| Mode { k, m }))
            .collect();
        let quadrature = SphereQuadrature::with_exactness(exactness);
        let n = modes.len();
        let mut values = vec![0.0; quadrature.len() * n];
        for (node, (x, phi)) in quadrature.nodes.iter().enumerate() {
            real_harmonics(max_degree, *x, *phi, &mut values[node * n..(node + 1) * n]);
        }
        GalerkinBasis { max_degree, modes, quadrature, values }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn quadrature(&self) -> &SphereQuadrature {
        &self.quadrature
    }

    pub fn mode_index(&self, k: u32, m: i32) -> Option<usize> {
        if k > self.max_degree || m.unsigned_abs() > k {
            return None;
        }
        Some((k * k) as usize + (m + k as i32) as usize)
    }

    /// `Y_mode` at quadrature node `node`.
    pub fn value(&self, node: usize, mode: usize) -> f64 {
        self.values[node * self.modes.len() + mode]
    }

    /// Largest deviation of the quadrature Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n_modes();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let g: f64 = (0..self.quadrature.len())
                    .map(|q| self.quadrature.weights[q] * self.value(q, a) * self.value(q, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Field values `u_i(x_q)` stored node-major, `out[q * p + i]`.
    pub fn synthesize(&self, coeffs: &[f64], p: usize) -> Vec<f64> {
        let n = self.n_modes();
        let nq = self.quadrature.len();
        let mut out = vec![0.0; nq * p];
        for q in 0..nq {
            let row = &self.values[q * n..(q + 1) * n];
            for i in 0..p {
                let c = &coeffs[i * n..(i + 1) * n];
                out[q * p + i] = row.iter().zip(c).map(|(y, c)| y * c).sum();
            }
        }
        out
    }

    /// `‖u‖_{H¹}` from coefficients: `Σ (λ_k + 1) c²`.
    pub fn h1_norm(&self, coeffs: &[f64]) -> f64 {
        let n = self.n_modes();
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (self.modes[j % n].eigenvalue() + 1.0) * c * c)
            .sum::<f64>()
            .sqrt()
    }

    /// Area-weighted variance of component `i` over the quadrature nodes.
    pub fn node_variance(&self, coeffs: &[f64], p: usize, i: usize) -> f64 {
        let u = self.synthesize(coeffs, p);
        let w = &self.quadrature.weights;
        let area: f64 = w.iter().sum();
        let mean: f64 = w.iter().enumerate().map(|(q, w)| w * u[q * p + i]).sum::<f64>() / area;
        w.iter().enumerate().map(|(q, w)| w * (u[q * p + i] - mean).powi(2)).sum::<f64>() / area
    }

    /// Rotate a coefficient vector by `θ` about the polar axis: each
    /// `(Y_{k,m}, Y_{k,−m})` pair turns by the angle `mθ`.
    pub fn rotate(&self, coeffs: &[f64], p: usize, theta: f64) -> Vec<f64> {
        let n = self.n_modes();
        let mut out = coeffs.to_vec();
        for i in 0..p {
            for k in 1..=self.max_degree {
                for m in 1..=k as i32 {
                    let jc = i * n + self.mode_index(k, m).unwrap();
                    let js = i * n + self.mode_index(k, -m).unwrap();
                    let (c, s) = (coeffs[jc], coeffs[js]);
                    let (sin, cos) = (m as f64 * theta).sin_cos();
                    out[jc] = c * cos - s * sin;
                    out[js] = c * sin + s * cos;
                }
            }
        }
        out
    }

    fn check_resolution(&self, nl: &NonlinearitySpec) -> Result<()> {
        let k = self.max_degree as usize;
        let needed = match nl.polynomial_degree() {
            Some(d) => (d * k).max(2 * k),
            None => 2 * k,
        };
        if self.quadrature.exactness < needed {
            return Err(Error::QuadratureUnderresolved { needed, available: self.quadrature.exactness });
        }
        Ok(())
    }

    fn check_len(&self, coeffs: &[f64], p: usize) -> Result<()> {
        let expected = p * self.n_modes();
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: coeffs.len() });
        }
        Ok(())
    }
}

/// Point on a branch in Galerkin coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchState {
    /// Component-major: `coeffs[i * (K+1)² + mode]`.
    pub coeffs: Vec<f64>,
    pub lambda: f64,
    pub arclength: f64,
    pub h1_norm: f64,
}

impl BranchState {
    pub fn new(basis: &GalerkinBasis, coeffs: Vec<f64>, lambda: f64, arclength: f64) -> Self {
        let h1_norm = basis.h1_norm(&coeffs);
        BranchState { coeffs, lambda, arclength, h1_norm }
    }

    /// Largest component variance over the sphere relative to `‖u‖²_{H¹}`
    /// exceeds `1e−8`.
    pub fn is_nonconstant(&self, basis: &GalerkinBasis, p: usize) -> bool {
        let threshold = 1e-8 * self.h1_norm * self.h1_norm;
        (0..p).any(|i| basis.node_variance(&self.coeffs, p, i) > threshold)
    }
}

fn validate_system(a: &[i64]) -> Result<()> {
    crate::bifurcation::SystemSignature::from_coefficients(a).map(|_| ())
}

/// Galerkin gradient of `Φ`:
/// `R_{i,km} = −a_i λ_k c_{i,km} − λ c_{i,km} − ⟨∂_{u_i} h(u, λ), Y_{km}⟩`.
pub fn residual(
    basis: &GalerkinBasis,
    nl: &NonlinearitySpec,
    a: &[i64],
    coeffs: &[f64],
    lambda: f64,
) -> Result<Vec<f64>> {
    validate_system(a)?;
    let p = a.len();
    basis.check_len(coeffs, p)?;
    basis.check_resolution(nl)?;
    let n = basis.n_modes();
    let mut out: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| (-(a[j / n] as f64) * basis.modes[j % n].eigenvalue() - lambda) * c)
        .collect();
    if matches!(nl.kind, NonlinearityKind::Linear) {
        return Ok(out);
    }
    let u = basis.synthesize(coeffs, p);
    let mut g = vec![0.0; p];
    for (q, w) in basis.quadrature.weights.iter().enumerate() {
        nl.gradient(&u[q * p..(q + 1) * p], lambda, &mut g);
        for i in 0..p {
            let gi = w * g[i];
            if gi == 0.0 {
                continue;
            }
            for mode in 0..n {
                out[i * n + mode] -= gi * basis.value(q, mode);
            }
        }
    }
    Ok(out)
}

/// Discrete functional `−½ Σ a_i λ_k c² − Σ_q w_q F(u(x_q), λ)`.
pub fn functional(
    basis: &GalerkinBasis,
    nl: &NonlinearitySpec,
    a: &[i64],
    coeffs: &[f64],
    lambda: f64,
) -> Result<f64> {
    validate_system(a)?;
    let p = a.len();
    basis.check_len(coeffs, p)?;
    basis.check_resolution(nl)?;
    let n = basis.n_modes();
    let quadratic: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| -0.5 * a[j / n] as f64 * basis.modes[j % n].eigenvalue() * c * c)
        .sum();
    let u = basis.synthesize(coeffs, p);
    let potential: f64 = basis
        .quadrature
        .weights
        .iter()
        .enumerate()
        .map(|(q, w)| {
            let uq = &u[q * p..(q + 1) * p];
            let r2: f64 = uq.iter().map(|x| x * x).sum();
            w * (0.5 * lambda * r2 + nl.potential(uq, lambda))
        })
        .sum();
    Ok(quadratic - potential)
}

/// Jacobian of the residual restricted to the coordinates in `active`, plus `∂R/∂λ`.
pub fn jacobian(
    basis: &GalerkinBasis,
    nl: &NonlinearitySpec,
    a: &[i64],
    coeffs: &[f64],
    lambda: f64,
    active: &[usize],
) -> Result<(DMatrix<f64>, DVector<f64>)> {
    validate_system(a)?;
    let p = a.len();
    basis.check_len(coeffs, p)?;
    basis.check_resolution(nl)?;
    let n = basis.n_modes();
    let dim = active.len();
    let mut jac = DMatrix::zeros(dim, dim);
    let mut dlambda = DVector::zeros(dim);
    for (r, &j) in active.iter().enumerate() {
        jac[(r, r)] = -(a[j / n] as f64) * basis.modes[j % n].eigenvalue() - lambda;
        dlambda[r] = -coeffs[j];
    }
    if matches!(nl.kind, NonlinearityKind::Linear) {
        return Ok((jac, dlambda));
    }
    let u = basis.synthesize(coeffs, p);
    let mut hess = vec![0.0; p * p];
    let mut dl = vec![0.0; p];
    let user = matches!(nl.kind, NonlinearityKind::User(_));
    for (q, w) in basis.quadrature.weights.iter().enumerate() {
        let uq = &u[q * p..(q + 1) * p];
        nl.hessian(uq, lambda, &mut hess);
        if user {
            nl.lambda_derivative(uq, lambda, &mut dl);
        }
        for (r, &jr) in active.iter().enumerate() {
            let (ir, mr) = (jr / n, jr % n);
            let yr = w * basis.value(q, mr);
            if yr == 0.0 {
                continue;
            }
            if user {
                dlambda[r] -= yr * dl[ir];
            }
            for (s, &js) in active.iter().enumerate() {
                let (is, ms) = (js / n, js % n);
                let hv = hess[ir * p + is];
                if hv != 0.0 {
                    jac[(r, s)] -= yr * hv * basis.value(q, ms);
                }
            }
        }
    }
    Ok((jac, dlambda))
}

/// Max relative discrepancy between the residual and central differences of
/// the discrete functional over `samples` random coordinates.
///
/// The error at coordinate `j` is `|fd_j − r_j| / max(|r_j|, 10⁻²‖r‖_∞)`, so
/// coordinates whose gradient is negligibly small are measured against the
/// overall gradient scale.
#[allow(clippy::too_many_arguments)]
pub fn gradient_check(
    basis: &GalerkinBasis,
    nl: &NonlinearitySpec,
    a: &[i64],
    coeffs: &[f64],
    lambda: f64,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if !(1e-8..=1e-3).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside [1e-8, 1e-3]")));
    }
    let r = residual(basis, nl, a, coeffs, lambda)?;
    let scale = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = sample(&mut rng, coeffs.len(), samples.min(coeffs.len()));
    let mut worst = 0.0f64;
    let mut probe = coeffs.to_vec();
    for j in picks.iter() {
        probe[j] = coeffs[j] + epsilon;
        let fp = functional(basis, nl, a, &probe, lambda)?;
        probe[j] = coeffs[j] - epsilon;
        let fm = functional(basis, nl, a, &probe, lambda)?;
        probe[j] = coeffs[j];
        let fd = (fp - fm) / (2.0 * epsilon);
        let denom = r[j].abs().max(1e-2 * scale);
        if denom > 0.0 {
            worst = worst.max((fd - r[j]).abs() / denom);
        } else {
            worst = worst.max((fd - r[j]).abs());
        }
    }
    Ok(worst)
}

/// Random coefficient vector with entries uniform in `[−amplitude, amplitude]`.
pub fn random_coeffs(basis: &GalerkinBasis, p: usize, amplitude: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..p * basis.n_modes()).map(|_| rng.random_range(-amplitude..=amplitude)).collect()
}

/// A kernel direction `Y_{k,m}` in component `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelMode {
    pub component: usize,
    pub k: u32,
    pub m: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    #[serde(with = "json::rational")]
    pub lambda: BigRational,
    pub kernel: Vec<KernelMode>,
}

/// Parameters in `[lo, hi]` where a diagonal entry `−a_i k(k+1) − λ` of the
/// linearization at `u = 0` vanishes, with the kernel modes. Exact.
pub fn trivial_branch_crossings(basis: &GalerkinBasis, a: &[i64], lo: &BigRational, hi: &BigRational) -> Result<Vec<Crossing>> {
    validate_system(a)?;
    let mut out: Vec<Crossing> = Vec::new();
    for k in 0..=basis.max_degree {
        for (component, ai) in a.iter().enumerate() {
            let lambda = BigRational::from_integer(BigInt::from(-ai * (k as i64) * (k as i64 + 1)));
            if &lambda < lo || &lambda > hi {
                continue;
            }
            let modes = (-(k as i32)..=k as i32).map(|m| KernelMode { component, k, m });
            match out.iter_mut().find(|c| c.lambda == lambda) {
                Some(c) => c.kernel.extend(modes),
                None => out.push(Crossing { lambda, kernel: modes.collect() }),
            }
        }
    }
    out.sort_by(|x, y| x.lambda.cmp(&y.lambda));
    for c in &mut out {
        c.kernel.sort_by_key(|m| (m.component, m.k, m.m));
    }
    Ok(out)
}
