//! Unboundedness certificates: the H_alpha coefficient ledger at each level.

use eqbif::bifurcation::BifurcationAnalysis;
use eqbif::{SymmetricSpaceData, SystemSignature};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymmetricSpaceData::product(&[2, 3])?;
    let sig = SystemSignature::new(1, 2)?;
    let analysis = BifurcationAnalysis::new(&space, sig, &BigRational::from_integer(BigInt::from(8)))?;
    for level in analysis.guaranteed_levels() {
        let cert = analysis.certify(&level)?;
        println!("level {level}: unbounded = {}", cert.unbounded);
        println!("  {}", cert.conclusion);
    }
    let cert = analysis.certify(&BigRational::from_integer(BigInt::from(2)))?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    Ok(())
}
