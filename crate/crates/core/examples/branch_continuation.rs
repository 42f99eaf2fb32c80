//! Follow the axisymmetric branch of
//!     -Δu = λu + |u|²u  on S²
//! out of the trivial solution at λ = 2 until ‖u‖_{H¹} reaches 1.

use eqbif::galerkin::{continue_branch, ContinuationOptions, GalerkinBasis, IsotropyRestriction, NonlinearitySpec};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = GalerkinBasis::new(8);
    println!("K = 8: {} modes, {} quadrature nodes", basis.n_modes(), basis.quadrature().len());

    let opts = ContinuationOptions { isotropy: IsotropyRestriction::Axisymmetric, ..Default::default() };
    let crossing = BigRational::from_integer(BigInt::from(2));
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &crossing, &opts)?;

    println!("{:>10} {:>12} {:>10}", "s", "lambda", "h1");
    for s in &run.states {
        println!("{:>10.5} {:>12.8} {:>10.5}", s.arclength, s.lambda, s.h1_norm);
    }
    println!("outcome: {:?}", run.outcome);

    // one-mode reduction near onset: lambda ≈ 2 + gamma t², gamma = ∫ Y₁₀⁴
    let j = basis.mode_index(1, 0).unwrap();
    let gamma: f64 = (0..basis.quadrature().len()).map(|q| basis.quadrature().weights[q] * basis.value(q, j).powi(4)).sum();
    let first = &run.states[1];
    let t = first.coeffs[j];
    println!("gamma = {gamma:.6}; at t = {t:.4}: lambda {:.8}, predicted {:.8}", first.lambda, 2.0 + gamma * t * t);
    Ok(())
}
