//! Compact symmetric spaces: exact Laplace–Beltrami spectrum
//! `λ_α = (α+ρ, α+ρ) − (ρ, ρ)` over dominant restricted weights, grouped into
//! eigenspaces, and the torus-representation content of each eigenspace.

mod sphere;
mod tables;

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::torus_rep::TorusRepDecomposition;
use crate::weight_lattice::{canonicalize, RestrictedWeight};

pub use sphere::{harmonic_dim, sphere_weight_multiplicity};
pub use tables::{AlphaTable, WeightEntry, WeightTables};

#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    /// `S^n = SO(n+1)/SO(n)`
    Sphere(u32),
    /// `S^{n₁} × ⋯ × S^{n_s}`
    Product(Vec<u32>),
    Generic(Option<WeightTables>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSpaceData {
    rank: usize,
    gram: Vec<Vec<BigRational>>,
    rho: Vec<BigRational>,
    kind: SpaceKind,
}

/// One eigenvalue of `−Δ_M` together with its eigenspace data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralLevel {
    #[serde(with = "json::rational")]
    pub eigenvalue: BigRational,
    pub alphas: Vec<RestrictedWeight>,
    pub real_dim: u64,
    pub torus_decomp: TorusRepDecomposition,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SymmetricSpaceData {
    /// The round sphere `S^n`, normalized so that `λ_k = k(k+n−1)`.
    pub fn sphere(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!("sphere dimension must be at least 2, got {n}")));
        }
        Ok(SymmetricSpaceData {
            rank: 1,
            gram: vec![vec![rat(1, 1)]],
            rho: vec![rat(n as i64 - 1, 2)],
            kind: SpaceKind::Sphere(n),
        })
    }

    pub fn product(factors: &[u32]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpace("product needs at least one factor".into()));
        }
        if let Some(n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidSpace(format!("sphere dimension must be at least 2, got {n}")));
        }
        let r = factors.len();
        let gram = (0..r)
            .map(|i| (0..r).map(|j| if i == j { rat(1, 1) } else { rat(0, 1) }).collect())
            .collect();
        let rho = factors.iter().map(|&n| rat(n as i64 - 1, 2)).collect();
        Ok(SymmetricSpaceData { rank: r, gram, rho, kind: SpaceKind::Product(factors.to_vec()) })
    }

    /// A space given by its Gram matrix of simple restricted roots and `ρ`
    /// in simple-root coordinates. Torus decompositions need `tables`.
    pub fn generic(
        gram: Vec<Vec<BigRational>>,
        rho: Vec<BigRational>,
        tables: Option<WeightTables>,
    ) -> Result<Self> {
        let r = gram.len();
        if r == 0 {
            return Err(Error::InvalidSpace("empty Gram matrix".into()));
        }
        if gram.iter().any(|row| row.len() != r) || rho.len() != r {
            return Err(Error::InvalidSpace("Gram matrix must be square and match rho".into()));
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidSpace("Gram matrix is not symmetric".into()));
                }
            }
        }
        if !is_positive_definite(&gram) {
            return Err(Error::InvalidSpace("Gram matrix is not positive definite".into()));
        }
        if let Some(t) = &tables {
            t.validate(r)?;
        }
        Ok(SymmetricSpaceData { rank: r, gram, rho, kind: SpaceKind::Generic(tables) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn rho(&self) -> &[BigRational] {
        &self.rho
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// Inner product of two coordinate vectors under the Gram matrix.
    fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        acc
    }

    /// `λ_α = (α, α) + 2(α, ρ)` for dominant `α`.
    pub fn eigenvalue_of(&self, alpha: &RestrictedWeight) -> Result<BigRational> {
        if alpha.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: alpha.rank() });
        }
        if !alpha.is_dominant() {
            return Err(Error::NotDominant(alpha.to_string()));
        }
        let a: Vec<BigRational> = alpha.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Ok(self.pairing(&a, &a) + self.pairing(&a, &self.rho) * BigRational::from_integer(BigInt::from(2)))
    }

    /// Per-coordinate bound on dominant `α` with `λ_α ≤ cutoff`.
    ///
    /// `λ_α ≥ σ|α|² − 2|Gρ||α|` with `σ` half the smallest eigenvalue of the
    /// Gram matrix, so `|α|` is bounded by the positive root of that quadratic.
    fn coordinate_bound(&self, cutoff: &BigRational) -> u64 {
        let r = self.rank;
        let g = DMatrix::from_fn(r, r, |i, j| self.gram[i][j].to_f64().unwrap_or(f64::NAN));
        let min_eig = g.clone().symmetric_eigen().eigenvalues.min();
        let sigma = 0.5 * min_eig;
        let rho = nalgebra::DVector::from_iterator(r, self.rho.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)));
        let b = (&g * rho).norm();
        let c = cutoff.to_f64().unwrap_or(f64::INFINITY).max(0.0);
        let radius = (b + (b * b + sigma * c).sqrt()) / sigma;
        radius.floor() as u64 + 1
    }

    /// Dominant weights with `λ_α ≤ cutoff`, grouped by exact eigenvalue, ascending.
    pub fn eigen_levels(&self, cutoff: &BigRational) -> Result<Vec<(BigRational, Vec<RestrictedWeight>)>> {
        if cutoff.is_negative() {
            return Err(Error::InvalidArgument(format!("cutoff must be nonnegative, got {cutoff}")));
        }
        let bound = self.coordinate_bound(cutoff);
        let mut groups: BTreeMap<BigRational, Vec<RestrictedWeight>> = BTreeMap::new();
        let mut idx = vec![0u64; self.rank];
        loop {
            let alpha = RestrictedWeight::new(idx.iter().map(|&c| BigInt::from(c)).collect());
            let lambda = self.eigenvalue_of(&alpha)?;
            if &lambda <= cutoff {
                groups.entry(lambda).or_default().push(alpha);
            }
            // odometer over [0, bound]^rank
            let mut pos = 0;
            loop {
                if pos == self.rank {
                    return Ok(groups
                        .into_iter()
                        .map(|(lambda, mut alphas)| {
                            alphas.sort();
                            (lambda, alphas)
                        })
                        .collect());
                }
                idx[pos] += 1;
                if idx[pos] <= bound {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Restricted weights of the complex representation `𝓗_α` with multiplicities.
    pub fn complex_weights(&self, alpha: &RestrictedWeight) -> Result<BTreeMap<RestrictedWeight, u64>> {
        if !alpha.is_dominant() {
            return Err(Error::NotDominant(alpha.to_string()));
        }
        match &self.kind {
            SpaceKind::Sphere(n) => Ok(sphere_factor_weights(*n, degree(&alpha.coords()[0])?)),
            SpaceKind::Product(factors) => {
                let mut acc: BTreeMap<RestrictedWeight, u64> = BTreeMap::new();
                acc.insert(RestrictedWeight::zero(0), 1);
                for (n, k) in factors.iter().zip(alpha.coords()) {
                    let factor = sphere_factor_weights(*n, degree(k)?);
                    let mut next = BTreeMap::new();
                    for (w, m) in &acc {
                        for (v, l) in &factor {
                            *next.entry(w.concat(v)).or_insert(0) += m * l;
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            SpaceKind::Generic(tables) => {
                let table = tables
                    .as_ref()
                    .and_then(|t| t.get(alpha))
                    .ok_or_else(|| Error::TablesRequired(format!("no weight table for alpha {alpha}")))?;
                let mut out = BTreeMap::new();
                for w in &table.weights {
                    if w.mult > 0 {
                        *out.entry(w.mu.clone()).or_insert(0) += w.mult;
                    }
                }
                Ok(out)
            }
        }
    }

    /// `dim_ℂ 𝓗_α`, which is also the real dimension of its real form.
    pub fn alpha_dim(&self, alpha: &RestrictedWeight) -> Result<u64> {
        match &self.kind {
            SpaceKind::Sphere(n) => Ok(harmonic_dim(*n, degree(&alpha.coords()[0])?)),
            SpaceKind::Product(factors) => factors
                .iter()
                .zip(alpha.coords())
                .map(|(n, k)| Ok(harmonic_dim(*n, degree(k)?)))
                .product(),
            SpaceKind::Generic(tables) => tables
                .as_ref()
                .and_then(|t| t.get(alpha))
                .map(|t| t.dim)
                .ok_or_else(|| Error::TablesRequired(format!("no weight table for alpha {alpha}"))),
        }
    }

    /// Real torus representation on the eigenspace spanned by `alphas`.
    ///
    /// The complex weight spaces `𝕍_μ ⊕ 𝕍_{−μ}` are the complexification of
    /// `ℝ[dim 𝕍_μ, μ]`; the zero weight space gives the trivial summand.
    pub fn torus_decomposition_of(&self, alphas: &[RestrictedWeight]) -> Result<TorusRepDecomposition> {
        let mut out = TorusRepDecomposition::default();
        for alpha in alphas {
            for (mu, m) in self.complex_weights(alpha)? {
                if mu.is_zero() {
                    out.k0 += m;
                    continue;
                }
                let h = canonicalize(&mu)?;
                if h.canonical() == &mu {
                    out.add_plane(h, m);
                }
            }
        }
        Ok(out)
    }

    pub fn torus_decomposition(&self, level: &SpectralLevel) -> Result<TorusRepDecomposition> {
        self.torus_decomposition_of(&level.alphas)
    }

    /// All eigenvalues `≤ cutoff` with dimensions and torus decompositions.
    pub fn spectrum_up_to(&self, cutoff: &BigRational) -> Result<Vec<SpectralLevel>> {
        self.eigen_levels(cutoff)?
            .into_iter()
            .map(|(eigenvalue, alphas)| {
                let real_dim = alphas.iter().map(|a| self.alpha_dim(a)).sum::<Result<u64>>()?;
                let torus_decomp = self.torus_decomposition_of(&alphas)?;
                Ok(SpectralLevel { eigenvalue, alphas, real_dim, torus_decomp })
            })
            .collect()
    }
}

fn degree(k: &BigInt) -> Result<u32> {
    k.to_u32().ok_or_else(|| Error::InvalidArgument(format!("degree {k} out of range")))
}

fn sphere_factor_weights(n: u32, k: u32) -> BTreeMap<RestrictedWeight, u64> {
    (-(k as i64)..=k as i64)
        .filter_map(|m| {
            let mult = sphere_weight_multiplicity(n, k, m);
            (mult > 0).then(|| (RestrictedWeight::from_i64s(&[m]), mult))
        })
        .collect()
}

/// Exact positive-definiteness by symmetric Gaussian elimination: all pivots positive.
fn is_positive_definite(gram: &[Vec<BigRational>]) -> bool {
    let mut a: Vec<Vec<BigRational>> = gram.to_vec();
    let n = a.len();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    true
}

/// Config-file form of a space: `{"kind":"sphere","n":2}`,
/// `{"kind":"product","factors":[2,2]}` or
/// `{"kind":"generic","gram":[[..]],"rho":[..],"tables":"path"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDescriptor {
    Sphere {
        n: u32,
    },
    Product {
        factors: Vec<u32>,
    },
    Generic {
        gram: Vec<Vec<serde_json::Value>>,
        rho: Vec<serde_json::Value>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tables: Option<TablesSource>,
    },
}

/// Weight tables given as a path (relative to the config file) or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TablesSource {
    Path(String),
    Inline(WeightTables),
}

impl SpaceDescriptor {
    pub fn build(&self, base_dir: Option<&Path>) -> Result<SymmetricSpaceData> {
        match self {
            SpaceDescriptor::Sphere { n } => SymmetricSpaceData::sphere(*n),
            SpaceDescriptor::Product { factors } => SymmetricSpaceData::product(factors),
            SpaceDescriptor::Generic { gram, rho, tables } => {
                let parse = |v: &serde_json::Value| json::parse_rational_value(v).map_err(Error::Parse);
                let gram = gram
                    .iter()
                    .map(|row| row.iter().map(parse).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let rho = rho.iter().map(parse).collect::<Result<Vec<_>>>()?;
                let tables = match tables {
                    None => None,
                    Some(TablesSource::Inline(t)) => Some(t.clone()),
                    Some(TablesSource::Path(p)) => {
                        let path = match base_dir {
                            Some(dir) if Path::new(p).is_relative() => dir.join(p),
                            _ => Path::new(p).to_path_buf(),
                        };
                        Some(WeightTables::load(&path)?)
                    }
                };
                SymmetricSpaceData::generic(gram, rho, tables)
            }
        }
    }
}
