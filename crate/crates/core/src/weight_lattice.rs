//! Restricted weights in simple-root coordinates and the codimension-one
//! subgroups of the torus they determine.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// A restricted weight `μ = Σ m_j α_j`, stored as its integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictedWeight {
    coords: Vec<BigInt>,
}

impl RestrictedWeight {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RestrictedWeight { coords }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        RestrictedWeight { coords: coords.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        RestrictedWeight { coords: vec![BigInt::zero(); rank] }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Member of `Λ_a^+`: every coordinate nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn neg(&self) -> Self {
        RestrictedWeight { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(RestrictedWeight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(RestrictedWeight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    /// Concatenate coordinates (weights of a product torus).
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        RestrictedWeight { coords }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(())
    }
}

impl fmt::Display for RestrictedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RestrictedWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json::bigint_vec::serialize(&self.coords, s)
    }
}

impl<'de> Deserialize<'de> for RestrictedWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(RestrictedWeight { coords: json::bigint_vec::deserialize(d)? })
    }
}

/// The codimension-one subgroup `H_μ = {exp φ : μ(φ) ∈ 2πℤ}`, keyed by the
/// representative of `{μ, −μ}` whose first nonzero coordinate is positive.
///
/// Ids are never reduced by content: `H_(1,0)` and `H_(2,0)` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupId {
    canonical: RestrictedWeight,
}

impl SubgroupId {
    pub fn canonical(&self) -> &RestrictedWeight {
        &self.canonical
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        canonicalize(&RestrictedWeight::from_i64s(coords))
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.canonical)
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupIdWire {
    #[serde(rename = "H")]
    h: RestrictedWeight,
}

impl Serialize for SubgroupId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubgroupIdWire { h: self.canonical.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubgroupId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = SubgroupIdWire::deserialize(d)?;
        canonicalize(&wire.h).map_err(serde::de::Error::custom)
    }
}

/// Sign-normalize a nonzero weight: the first nonzero coordinate becomes positive.
pub fn canonicalize(mu: &RestrictedWeight) -> Result<SubgroupId> {
    let first = mu.coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroWeight)?;
    let canonical = if first.is_negative() { mu.neg() } else { mu.clone() };
    Ok(SubgroupId { canonical })
}

/// Position of `mu` relative to `nu` in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightOrder {
    /// `mu ≺ nu`
    Precedes,
    Equals,
    /// `nu ≺ mu`
    Succeeds,
    Incomparable,
}

/// Compare `mu` against `nu`: `mu ⪯ nu` iff `nu − mu` has only nonnegative coordinates.
pub fn dominates(nu: &RestrictedWeight, mu: &RestrictedWeight) -> Result<WeightOrder> {
    let diff = nu.checked_sub(mu)?;
    let nonneg = diff.coords.iter().all(|c| !c.is_negative());
    let nonpos = diff.coords.iter().all(|c| !c.is_positive());
    Ok(match (nonneg, nonpos) {
        (true, true) => WeightOrder::Equals,
        (true, false) => WeightOrder::Precedes,
        (false, true) => WeightOrder::Succeeds,
        (false, false) => WeightOrder::Incomparable,
    })
}
