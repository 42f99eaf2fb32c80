//! Arithmetic in the Euler ring of the torus, truncated at codimension one.

use eqbif::{EulerRingElement, SubgroupId};
use num_bigint::BigInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h1 = SubgroupId::from_i64s(&[1])?;
    let h2 = SubgroupId::from_i64s(&[2])?;
    // chi of the sphere of V = R ⊕ R[1,1]
    let x = EulerRingElement::from_parts(-1, [(h1.clone(), BigInt::from(1))]);
    println!("x          = {x}");
    println!("x^2        = {}", x.pow(2)?);
    println!("x^-1       = {}", x.inverse()?);
    println!("x * x^-1   = {}", &x * &x.inverse()?);

    let y = EulerRingElement::from_parts(2, [(h2, BigInt::from(3))]);
    let prod = &x * &y;
    println!("x * y      = {prod}  (codim >= 2 terms dropped: {})", prod.is_truncated());
    println!("{}", serde_json::to_string(&prod)?);

    match y.inverse() {
        Ok(inv) => println!("y^-1 = {inv}"),
        Err(e) => println!("y^-1: {e}"),
    }
    Ok(())
}
