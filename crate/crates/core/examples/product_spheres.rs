//! Degenerate eigenvalues on S^2 x S^2: several dominant weights share a level.

use eqbif::SymmetricSpaceData;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymmetricSpaceData::product(&[2, 2])?;
    let cutoff = BigRational::from_integer(BigInt::from(20));
    for level in space.spectrum_up_to(&cutoff)? {
        let alphas: Vec<String> = level.alphas.iter().map(|a| a.to_string()).collect();
        println!("lambda {:>3}: dim {:>3}  alphas {}", level.eigenvalue.to_string(), level.real_dim, alphas.join(" "));
        for alpha in level.alphas.iter().filter(|a| !a.is_zero()) {
            // each alpha brings the plane R[1, alpha] exactly once, at its own level
            let h = eqbif::canonicalize(alpha)?;
            println!("    {alpha} -> {h} multiplicity {}", level.torus_decomp.mult_of(&h));
        }
    }
    Ok(())
}
