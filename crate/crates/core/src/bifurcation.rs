//! Torus-equivariant bifurcation indices on the trivial branch and the
//! coefficient argument that rules out bounded continua.
//!
//! For an eigenvalue `λ_α > 0` of `−Δ_M` with eigenspace `𝕍` and
//! `𝒲 = ⨁_{λ_β < λ_α} 𝕍(λ_β)`:
//!
//! ```text
//! BIF(+λ_α) = χ(S^𝒲)^{n₋} ⋆ (χ(S^𝕍)^{n₋} − 𝕀)
//! BIF(−λ_α) = χ(S^{𝒲⊕𝕍})^{−n₊} ⋆ (χ(S^𝕍)^{n₊} − 𝕀)
//! BIF(0)    = ((−1)^{n₋} − (−1)^{n₊}) 𝕀
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler_ring::EulerRingElement;
use crate::json::{self, format_rational};
use crate::symmetric_space::{SpectralLevel, SymmetricSpaceData};
use crate::torus_rep::TorusRepDecomposition;
use crate::weight_lattice::{canonicalize, RestrictedWeight, SubgroupId};

/// Sign pattern of the system: `n_plus` equations with `a_i = +1`,
/// `n_minus` with `a_i = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemSignature {
    pub n_plus: u32,
    pub n_minus: u32,
}

impl SystemSignature {
    pub fn new(n_plus: u32, n_minus: u32) -> Result<Self> {
        if n_plus + n_minus == 0 {
            return Err(Error::InvalidSignature("system needs at least one equation".into()));
        }
        Ok(SystemSignature { n_plus, n_minus })
    }

    /// Count signs in a coefficient list `a_i ∈ {−1, +1}`.
    pub fn from_coefficients(a: &[i64]) -> Result<Self> {
        let mut sig = SystemSignature { n_plus: 0, n_minus: 0 };
        for &ai in a {
            match ai {
                1 => sig.n_plus += 1,
                -1 => sig.n_minus += 1,
                other => return Err(Error::InvalidSignature(format!("coefficient {other} is not ±1"))),
            }
        }
        Self::new(sig.n_plus, sig.n_minus)
    }

    pub fn p(&self) -> u32 {
        self.n_plus + self.n_minus
    }

    /// All signatures with `1 ≤ p ≤ max_p`.
    pub fn all_up_to(max_p: u32) -> Vec<SystemSignature> {
        (1..=max_p)
            .flat_map(|p| (0..=p).map(move |n_plus| SystemSignature { n_plus, n_minus: p - n_plus }))
            .collect()
    }
}

/// Which side of the trivial branch a nonzero level sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelSign {
    /// `+λ_α`, present when `n₋ > 0`
    Plus,
    /// `−λ_α`, present when `n₊ > 0`
    Minus,
}

impl LevelSign {
    fn apply(self, lambda: &BigRational) -> BigRational {
        match self {
            LevelSign::Plus => lambda.clone(),
            LevelSign::Minus => -lambda.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BifurcationLevel {
    #[serde(with = "json::rational")]
    pub lambda0: BigRational,
    pub kernel_dim: u64,
    pub index: EulerRingElement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    #[serde(with = "json::rational")]
    pub level: BigRational,
    #[serde(with = "json::bigint")]
    pub coeff: BigInt,
}

/// Mechanized form of the argument excluding a bounded continuum.
///
/// For a nonzero level the ledger holds the `H_α` coefficients of the indices
/// at `±λ_α` that exist for the signature; every level of strictly smaller
/// modulus has been checked to contribute zero at `H_α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnboundednessCertificate {
    #[serde(with = "json::rational")]
    pub level: BigRational,
    #[serde(with = "witness_wire")]
    pub witness: Option<SubgroupId>,
    pub ledger: Vec<LedgerEntry>,
    pub lower_levels_checked: usize,
    pub unbounded: bool,
    pub symmetry_breaking: bool,
    pub conclusion: String,
}

mod witness_wire {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &Option<SubgroupId>, s: S) -> std::result::Result<S::Ok, S::Error> {
        w.as_ref().map(|h| h.canonical().clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<SubgroupId>, D::Error> {
        Option::<RestrictedWeight>::deserialize(d)?
            .map(|w| canonicalize(&w).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn sign_pow(exp: u64) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `χ_𝕋(S^V) = (−1)^{k₀}(𝕀 − Σ k_μ χ_𝕋(𝕋/H_μ⁺))`, codimension ≥ 2 dropped.
pub fn chi_sphere_block(decomp: &TorusRepDecomposition) -> EulerRingElement {
    chi_with_sign(decomp, sign_pow(decomp.k0))
}

fn chi_with_sign(decomp: &TorusRepDecomposition, sign: i64) -> EulerRingElement {
    let s = BigInt::from(sign);
    EulerRingElement::from_parts(
        s.clone(),
        decomp.mults().iter().map(|(h, k)| (h.clone(), -(&s * BigInt::from(*k)))),
    )
    .mark_truncated()
}

/// `χ_𝕋(S^V)` with the sign taken from `dim V` instead of `k₀`; the two agree
/// because every nontrivial block is even-dimensional.
pub fn chi_sphere_block_by_dim(decomp: &TorusRepDecomposition) -> EulerRingElement {
    chi_with_sign(decomp, sign_pow(decomp.dim()))
}

/// `(−1)^{(d_W+d_V)N+1} N`, the closed-form `H_α` coefficient of the index at `±λ_α`.
pub fn closed_form_coeff(d_w: u64, d_v: u64, n: u32) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(sign_pow((d_w + d_v) * n as u64 + 1) * n as i64)
}

/// Whether `(−1)^{d(n₋−n₊)} n₋ = −n₊` has a solution, i.e. whether the
/// `H_α` coefficients at `+λ_α` and `−λ_α` could cancel.
pub fn cancellation_possible(d_sum: u64, n_minus: u32, n_plus: u32) -> bool {
    let diff = (n_minus as i64 - n_plus as i64).unsigned_abs();
    let lhs = sign_pow(d_sum * diff) * n_minus as i64;
    lhs == -(n_plus as i64)
}

/// Spectrum up to a cutoff with the derived data needed for indices.
///
/// Building this once and querying many levels avoids re-enumerating the
/// spectrum in sweeps.
#[derive(Debug, Clone)]
pub struct BifurcationAnalysis {
    sig: SystemSignature,
    levels: Vec<SpectralLevel>,
    /// `lower[i]` is the torus decomposition of `𝒲(λ_i)`.
    lower: Vec<TorusRepDecomposition>,
}

impl BifurcationAnalysis {
    pub fn new(space: &SymmetricSpaceData, sig: SystemSignature, cutoff: &BigRational) -> Result<Self> {
        SystemSignature::new(sig.n_plus, sig.n_minus)?;
        let levels = space.spectrum_up_to(cutoff)?;
        let mut lower = Vec::with_capacity(levels.len());
        let mut acc = TorusRepDecomposition::default();
        for level in &levels {
            lower.push(acc.clone());
            acc = acc.direct_sum(&level.torus_decomp);
        }
        Ok(BifurcationAnalysis { sig, levels, lower })
    }

    pub fn signature(&self) -> SystemSignature {
        self.sig
    }

    pub fn spectrum(&self) -> &[SpectralLevel] {
        &self.levels
    }

    fn position(&self, eigenvalue: &BigRational) -> Option<usize> {
        self.levels.iter().position(|l| &l.eigenvalue == eigenvalue)
    }

    /// `𝒲(λ)` for a positive eigenvalue in range.
    pub fn lower_part(&self, eigenvalue: &BigRational) -> Option<&TorusRepDecomposition> {
        self.position(eigenvalue).map(|i| &self.lower[i])
    }

    /// Whether `level ∈ Λ` for this signature (within the analysed range).
    pub fn in_lambda(&self, level: &BigRational) -> bool {
        if level.is_zero() {
            return true;
        }
        let present = self.position(&level.abs()).is_some();
        present && if level.is_positive() { self.sig.n_minus > 0 } else { self.sig.n_plus > 0 }
    }

    pub fn kernel_dim(&self, level: &BigRational) -> Result<u64> {
        if !self.in_lambda(level) {
            return Err(Error::NotInLambda(format_rational(level)));
        }
        let i = self.position(&level.abs()).ok_or_else(|| Error::NotInLambda(format_rational(level)))?;
        let copies = if level.is_zero() {
            self.sig.p()
        } else if level.is_positive() {
            self.sig.n_minus
        } else {
            self.sig.n_plus
        };
        Ok(copies as u64 * self.levels[i].real_dim)
    }

    pub fn index(&self, level: &BigRational) -> Result<EulerRingElement> {
        if !self.in_lambda(level) {
            return Err(Error::NotInLambda(format_rational(level)));
        }
        if level.is_zero() {
            let c = sign_pow(self.sig.n_minus as u64) - sign_pow(self.sig.n_plus as u64);
            return Ok(EulerRingElement::from_unit(c));
        }
        let i = self.position(&level.abs()).ok_or_else(|| Error::NotInLambda(format_rational(level)))?;
        let v = &self.levels[i].torus_decomp;
        let w = &self.lower[i];
        let one = EulerRingElement::one();
        if level.is_positive() {
            let n = self.sig.n_minus as i64;
            let left = chi_sphere_block(w).pow(n)?;
            let right = chi_sphere_block(v).pow(n)?.sub(&one);
            Ok(left.mul(&right))
        } else {
            let n = self.sig.n_plus as i64;
            let left = chi_sphere_block(&w.direct_sum(v)).pow(-n)?;
            let right = chi_sphere_block(v).pow(n)?.sub(&one);
            Ok(left.mul(&right))
        }
    }

    /// `Λ ∩ [−cutoff, cutoff]` in ascending order with kernels and indices.
    pub fn levels(&self) -> Result<Vec<BifurcationLevel>> {
        let mut out = Vec::new();
        for level in &self.levels {
            let candidates: Vec<BigRational> = if level.eigenvalue.is_zero() {
                vec![level.eigenvalue.clone()]
            } else {
                vec![-level.eigenvalue.clone(), level.eigenvalue.clone()]
            };
            for lambda0 in candidates {
                if self.in_lambda(&lambda0) {
                    out.push(BifurcationLevel {
                        kernel_dim: self.kernel_dim(&lambda0)?,
                        index: self.index(&lambda0)?,
                        lambda0,
                    });
                }
            }
        }
        out.sort_by(|a, b| a.lambda0.cmp(&b.lambda0));
        Ok(out)
    }

    /// `(computed, closed_form)` for the `H_α` coefficient of the index at `±λ_α`.
    pub fn coeff_formula_check(&self, space: &SymmetricSpaceData, alpha: &RestrictedWeight, sign: LevelSign) -> Result<(BigInt, BigInt)> {
        let lambda = space.eigenvalue_of(alpha)?;
        if lambda.is_zero() {
            return Err(Error::InvalidArgument("alpha must have a nonzero eigenvalue".into()));
        }
        let h = canonicalize(alpha)?;
        let computed = self.index(&sign.apply(&lambda))?.coeff_at(&h);
        let i = self.position(&lambda).ok_or_else(|| Error::NotInLambda(format_rational(&lambda)))?;
        let d_v = self.levels[i].real_dim;
        let d_w = self.lower[i].dim();
        let n = match sign {
            LevelSign::Plus => self.sig.n_minus,
            LevelSign::Minus => self.sig.n_plus,
        };
        Ok((computed, closed_form_coeff(d_w, d_v, n)))
    }

    pub fn certify(&self, level: &BigRational) -> Result<UnboundednessCertificate> {
        let sig = self.sig;
        if level.is_zero() {
            if sig.p().is_multiple_of(2) {
                return Err(Error::NoGuarantee(format!("level 0 with p = {} even: no claim", sig.p())));
            }
            let index = self.index(level)?;
            let unit = index.unit_coeff().clone();
            let unbounded = !index.is_zero();
            return Ok(UnboundednessCertificate {
                level: level.clone(),
                witness: None,
                ledger: vec![LedgerEntry { level: level.clone(), coeff: unit.clone() }],
                lower_levels_checked: 0,
                unbounded,
                symmetry_breaking: false,
                conclusion: format!(
                    "BIF(0) = ({})I {} Θ; a bounded continuum from 0 would meet the trivial branch \
                     at nonzero levels, whose continua are unbounded",
                    unit,
                    if unbounded { "≠" } else { "=" }
                ),
            });
        }
        let lambda = level.abs();
        let needed = if level.is_positive() { sig.n_minus } else { sig.n_plus };
        if needed == 0 || !self.in_lambda(level) {
            return Err(Error::NoGuarantee(format!(
                "level {} is not in the bifurcation set for n+ = {}, n- = {}",
                format_rational(level),
                sig.n_plus,
                sig.n_minus
            )));
        }
        let i = self.position(&lambda).ok_or_else(|| Error::NoGuarantee(format_rational(level)))?;
        let alpha = self.levels[i]
            .alphas
            .iter()
            .find(|a| !a.is_zero())
            .ok_or_else(|| Error::NoGuarantee(format_rational(level)))?;
        let h = canonicalize(alpha)?;

        let mut ledger = Vec::new();
        for candidate in [lambda.clone(), -lambda.clone()] {
            if self.in_lambda(&candidate) {
                ledger.push(LedgerEntry { coeff: self.index(&candidate)?.coeff_at(&h), level: candidate });
            }
        }
        // Put the certified level first.
        ledger.sort_by_key(|e| e.level != *level);

        let mut lower_ok = true;
        let mut lower_levels_checked = 0;
        for lower in &self.levels[..i] {
            if lower.eigenvalue.is_zero() {
                continue;
            }
            for candidate in [lower.eigenvalue.clone(), -lower.eigenvalue.clone()] {
                if self.in_lambda(&candidate) {
                    lower_levels_checked += 1;
                    lower_ok &= self.index(&candidate)?.coeff_at(&h).is_zero();
                }
            }
        }

        let own = &ledger[0].coeff;
        let sum: BigInt = ledger.iter().map(|e| &e.coeff).sum();
        let unbounded = lower_ok && !own.is_zero() && !sum.is_zero();
        let terms: Vec<String> =
            ledger.iter().map(|e| format!("{} at {}", e.coeff, format_rational(&e.level))).collect();
        let conclusion = if unbounded {
            format!(
                "coefficients at {h}: {}; lower levels vanish; own {own} ≠ 0 and sum {sum} ≠ 0, \
                 so no bounded continuum can cancel",
                terms.join(", ")
            )
        } else {
            format!("certificate failed at {h}: {}; lower levels vanish: {lower_ok}", terms.join(", "))
        };
        Ok(UnboundednessCertificate {
            level: level.clone(),
            witness: Some(h),
            ledger,
            lower_levels_checked,
            unbounded,
            symmetry_breaking: true,
            conclusion,
        })
    }

    /// Levels in `Λ` that the unboundedness theorem covers.
    pub fn guaranteed_levels(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for level in &self.levels {
            if level.eigenvalue.is_zero() {
                if self.sig.p() % 2 == 1 {
                    out.push(level.eigenvalue.clone());
                }
                continue;
            }
            if self.sig.n_plus > 0 {
                out.push(-level.eigenvalue.clone());
            }
            if self.sig.n_minus > 0 {
                out.push(level.eigenvalue.clone());
            }
        }
        out.sort();
        out
    }
}

pub fn bifurcation_levels(space: &SymmetricSpaceData, sig: SystemSignature, cutoff: &BigRational) -> Result<Vec<BifurcationLevel>> {
    BifurcationAnalysis::new(space, sig, cutoff)?.levels()
}

pub fn bif_index(space: &SymmetricSpaceData, sig: SystemSignature, level: &BigRational) -> Result<EulerRingElement> {
    BifurcationAnalysis::new(space, sig, &level.abs())?.index(level)
}

pub fn coeff_formula_check(
    space: &SymmetricSpaceData,
    sig: SystemSignature,
    alpha: &RestrictedWeight,
    sign: LevelSign,
) -> Result<(BigInt, BigInt)> {
    let lambda = space.eigenvalue_of(alpha)?;
    BifurcationAnalysis::new(space, sig, &lambda)?.coeff_formula_check(space, alpha, sign)
}

pub fn certify_unbounded(space: &SymmetricSpaceData, sig: SystemSignature, level: &BigRational) -> Result<UnboundednessCertificate> {
    BifurcationAnalysis::new(space, sig, &level.abs())?.certify(level)
}

/// Nonzero bifurcation levels break the `G`-symmetry: the kernel consists of
/// eigenfunctions with positive eigenvalue, none of which is `G`-invariant.
pub fn symmetry_breaking_flag(_space: &SymmetricSpaceData, level: &BigRational) -> bool {
    !level.is_zero()
}
