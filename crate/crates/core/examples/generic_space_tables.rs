//! A rank-one space given only by its Gram matrix, rho and weight tables.
//! The data below describe S^2 = CP^1, so the output can be compared with `sphere_spectrum`.

use eqbif::symmetric_space::SpaceDescriptor;
use eqbif::{bifurcation_levels, SystemSignature};
use num_bigint::BigInt;
use num_rational::BigRational;

const DESCRIPTOR: &str = r#"{
  "kind": "generic",
  "gram": [[1]],
  "rho": ["1/2"],
  "tables": {
    "alphas": [
      {"alpha": [0], "dim": 1, "weights": [{"mu": [0], "mult": 1}]},
      {"alpha": [1], "dim": 3, "weights": [{"mu": [-1], "mult": 1}, {"mu": [0], "mult": 1}, {"mu": [1], "mult": 1}]},
      {"alpha": [2], "dim": 5, "weights": [
        {"mu": [-2], "mult": 1}, {"mu": [-1], "mult": 1}, {"mu": [0], "mult": 1},
        {"mu": [1], "mult": 1}, {"mu": [2], "mult": 1}]}
    ]
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let descriptor: SpaceDescriptor = serde_json::from_str(DESCRIPTOR)?;
    let space = descriptor.build(None)?;
    let cutoff = BigRational::from_integer(BigInt::from(6));
    for level in space.spectrum_up_to(&cutoff)? {
        println!("lambda {}: alphas {:?} dim {}", level.eigenvalue, level.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>(), level.real_dim);
    }
    for level in bifurcation_levels(&space, SystemSignature::new(0, 1)?, &cutoff)? {
        println!("BIF({}) = {}", level.lambda0, level.index);
    }
    Ok(())
}
