//! User-supplied restricted weight tables for spaces without a built-in
//! combinatorial model.
//!
//! File format:
//!
//! ```json
//! {"alphas": [
//!   {"alpha": [1], "dim": 3,
//!    "weights": [{"mu": [1], "mult": 1}, {"mu": [0], "mult": 1}, {"mu": [-1], "mult": 1}]}
//! ]}
//! ```
//!
//! `weights` lists every restricted weight of the complex representation
//! `𝓗_α` (both `μ` and `−μ`) with its multiplicity.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight_lattice::RestrictedWeight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub mu: RestrictedWeight,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTable {
    pub alpha: RestrictedWeight,
    pub dim: u64,
    pub weights: Vec<WeightEntry>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTables {
    pub alphas: Vec<AlphaTable>,
}

impl WeightTables {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::TablesRequired(format!("{}: {e}", path.display())))?;
        let tables: WeightTables =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(tables)
    }

    /// Check internal consistency against the space rank.
    pub fn validate(&self, rank: usize) -> Result<()> {
        for t in &self.alphas {
            if t.alpha.rank() != rank || !t.alpha.is_dominant() {
                return Err(Error::InvalidSpace(format!("table alpha {} is not a dominant rank-{rank} weight", t.alpha)));
            }
            let mut by_weight: BTreeMap<&RestrictedWeight, u64> = BTreeMap::new();
            for w in &t.weights {
                if w.mu.rank() != rank {
                    return Err(Error::RankMismatch { left: rank, right: w.mu.rank() });
                }
                *by_weight.entry(&w.mu).or_default() += w.mult;
            }
            let total: u64 = by_weight.values().sum();
            if total != t.dim {
                return Err(Error::InvalidSpace(format!(
                    "weights of alpha {} sum to {total}, expected dim {}",
                    t.alpha, t.dim
                )));
            }
            for (mu, m) in &by_weight {
                let conj = by_weight.get(&mu.neg()).copied().unwrap_or(0);
                if conj != *m {
                    return Err(Error::InvalidSpace(format!(
                        "alpha {}: weight {mu} has multiplicity {m} but its negative has {conj}",
                        t.alpha
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, alpha: &RestrictedWeight) -> Option<&AlphaTable> {
        self.alphas.iter().find(|t| &t.alpha == alpha)
    }
}
