//! Spectrum of the Laplacian on S^n with the torus content of each eigenspace.
//!
//!     cargo run --example sphere_spectrum -- 3 20

use eqbif::SymmetricSpaceData;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let cutoff: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(30);

    let space = SymmetricSpaceData::sphere(n)?;
    println!("S^{n}, eigenvalues up to {cutoff}");
    for level in space.spectrum_up_to(&BigRational::from_integer(BigInt::from(cutoff)))? {
        let planes: Vec<String> = level.torus_decomp.mults().iter().map(|(h, k)| format!("{k}x{h}")).collect();
        println!(
            "  lambda {:>4}  alpha {:<4} dim {:>4}  k0 {}  {}",
            level.eigenvalue.to_string(),
            level.alphas[0].to_string(),
            level.real_dim,
            level.torus_decomp.k0,
            planes.join(" ")
        );
    }
    Ok(())
}
