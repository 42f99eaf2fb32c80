//! Bifurcation indices along the trivial branch for a few sign patterns on S^2.

use eqbif::{bifurcation_levels, SymmetricSpaceData, SystemSignature};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymmetricSpaceData::sphere(2)?;
    let cutoff = BigRational::from_integer(BigInt::from(12));
    for a in [vec![-1], vec![1], vec![1, -1], vec![-1, -1, 1]] {
        let sig = SystemSignature::from_coefficients(&a)?;
        println!("a = {a:?}");
        for level in bifurcation_levels(&space, sig, &cutoff)? {
            println!("  BIF({:>3}) = {:<40} kernel dim {}", level.lambda0.to_string(), level.index.to_string(), level.kernel_dim);
        }
    }
    Ok(())
}
