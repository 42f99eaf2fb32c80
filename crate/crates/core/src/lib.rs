//! Exact torus-equivariant bifurcation analysis for non-cooperative elliptic
//! systems `a_i Δ_M u_i = ∇_{u_i} F(u, λ)` on compact symmetric spaces.
//!
//! The crate is layered bottom-up:
//!
//! - [`weight_lattice`]: restricted weights, the dominance order and the
//!   codimension-one subgroups `H_μ` of the torus.
//! - [`euler_ring`]: the Euler ring `U(𝕋)` truncated at codimension one.
//! - [`symmetric_space`]: exact Laplace–Beltrami spectra and torus
//!   decompositions of eigenspaces.
//! - [`bifurcation`]: bifurcation indices, coefficient checks and
//!   unboundedness certificates.
//! - [`galerkin`]: spectral-Galerkin discretization on `S²` and
//!   pseudo-arclength continuation of bifurcating branches.
//! - [`cli`]: the batch front end behind the `eqbif` binary.

#![allow(clippy::needless_range_loop)]

pub mod bifurcation;
pub mod cli;
pub mod error;
pub mod euler_ring;
pub mod galerkin;
pub mod json;
pub mod selftest;
pub mod symmetric_space;
pub mod torus_rep;
pub mod weight_lattice;

pub use bifurcation::{
    bif_index, bifurcation_levels, certify_unbounded, chi_sphere_block, coeff_formula_check,
    symmetry_breaking_flag, BifurcationLevel, LevelSign, SystemSignature, UnboundednessCertificate,
};
pub use error::{Error, Result};
pub use euler_ring::{EulerRingElement, Subgroup};
pub use symmetric_space::{SpaceDescriptor, SpectralLevel, SymmetricSpaceData};
pub use torus_rep::TorusRepDecomposition;
pub use weight_lattice::{canonicalize, dominates, RestrictedWeight, SubgroupId, WeightOrder};
