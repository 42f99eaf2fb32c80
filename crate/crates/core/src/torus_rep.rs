//! Real orthogonal torus representations `ℝ[k₀,0] ⊕ ⨁ ℝ[k_μ,μ]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::weight_lattice::{RestrictedWeight, SubgroupId};

/// Multiplicity data of a real torus representation.
///
/// `mults` is keyed by canonical weights; zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TorusRepDecomposition {
    pub k0: u64,
    mults: BTreeMap<SubgroupId, u64>,
}

impl TorusRepDecomposition {
    pub fn trivial(k0: u64) -> Self {
        TorusRepDecomposition { k0, mults: BTreeMap::new() }
    }

    pub fn from_parts(k0: u64, mults: impl IntoIterator<Item = (SubgroupId, u64)>) -> Self {
        let mut out = Self::trivial(k0);
        for (h, k) in mults {
            out.add_plane(h, k);
        }
        out
    }

    /// Add `k` copies of `ℝ[1,μ]`.
    pub fn add_plane(&mut self, h: SubgroupId, k: u64) {
        if k > 0 {
            *self.mults.entry(h).or_default() += k;
        }
    }

    pub fn mults(&self) -> &BTreeMap<SubgroupId, u64> {
        &self.mults
    }

    pub fn mult_of(&self, h: &SubgroupId) -> u64 {
        self.mults.get(h).copied().unwrap_or(0)
    }

    /// Real dimension `k₀ + 2Σ k_μ`.
    pub fn dim(&self) -> u64 {
        self.k0 + 2 * self.mults.values().sum::<u64>()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.k0 += other.k0;
        for (h, k) in &other.mults {
            out.add_plane(h.clone(), *k);
        }
        out
    }

    /// `n` copies of this representation.
    pub fn repeat(&self, n: u64) -> Self {
        TorusRepDecomposition {
            k0: self.k0 * n,
            mults: if n == 0 {
                BTreeMap::new()
            } else {
                self.mults.iter().map(|(h, k)| (h.clone(), k * n)).collect()
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PlaneWire {
    #[serde(rename = "H")]
    h: RestrictedWeight,
    k: u64,
}

#[derive(Serialize, Deserialize)]
struct DecompWire {
    k0: u64,
    mults: Vec<PlaneWire>,
}

impl Serialize for TorusRepDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DecompWire {
            k0: self.k0,
            mults: self
                .mults
                .iter()
                .map(|(h, k)| PlaneWire { h: h.canonical().clone(), k: *k })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusRepDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = DecompWire::deserialize(d)?;
        let mut out = Self::trivial(wire.k0);
        for p in wire.mults {
            let h = crate::weight_lattice::canonicalize(&p.h).map_err(serde::de::Error::custom)?;
            out.add_plane(h, p.k);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_sums() {
        let a = TorusRepDecomposition::from_parts(1, [(SubgroupId::from_i64s(&[1]).unwrap(), 1)]);
        let b = TorusRepDecomposition::from_parts(
            1,
            [(SubgroupId::from_i64s(&[1]).unwrap(), 1), (SubgroupId::from_i64s(&[2]).unwrap(), 1)],
        );
        assert_eq!(a.dim(), 3);
        assert_eq!(b.dim(), 5);
        let s = a.direct_sum(&b);
        assert_eq!(s.k0, 2);
        assert_eq!(s.mult_of(&SubgroupId::from_i64s(&[1]).unwrap()), 2);
        assert_eq!(s.dim(), 8);
        assert_eq!(a.repeat(3).dim(), 9);
        assert_eq!(a.repeat(0), TorusRepDecomposition::default());
    }

    #[test]
    fn zero_multiplicities_are_not_stored() {
        let mut a = TorusRepDecomposition::trivial(0);
        a.add_plane(SubgroupId::from_i64s(&[1]).unwrap(), 0);
        assert!(a.mults().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let a = TorusRepDecomposition::from_parts(2, [(SubgroupId::from_i64s(&[0, 1]).unwrap(), 3)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"k0":2,"mults":[{"H":[0,1],"k":3}]}"#);
        assert_eq!(serde_json::from_str::<TorusRepDecomposition>(&s).unwrap(), a);
    }
}
