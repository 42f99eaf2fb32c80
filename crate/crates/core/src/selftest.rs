//! Invariant sweeps run by `eqbif selftest`. Each check recomputes a family of
//! facts through the public API and reports a single pass/fail line.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bifurcation::{cancellation_possible, BifurcationAnalysis, LevelSign, SystemSignature};
use crate::error::Result;
use crate::euler_ring::EulerRingElement;
use crate::galerkin::{
    continue_branch, gradient_check, random_coeffs, trivial_branch_crossings, BranchOutcome, ContinuationOptions,
    GalerkinBasis, IsotropyRestriction, NonlinearitySpec,
};
use crate::symmetric_space::SymmetricSpaceData;
use crate::weight_lattice::{canonicalize, RestrictedWeight, SubgroupId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckOutcome>,
    pub all_passed: bool,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Spaces used by the exact sweeps, with display names.
pub fn sweep_spaces() -> Vec<(&'static str, SymmetricSpaceData)> {
    vec![
        ("S2", SymmetricSpaceData::sphere(2).expect("S2")),
        ("S3", SymmetricSpaceData::sphere(3).expect("S3")),
        ("S2xS2", SymmetricSpaceData::product(&[2, 2]).expect("S2xS2")),
        ("S2xS3", SymmetricSpaceData::product(&[2, 3]).expect("S2xS3")),
    ]
}

pub fn check_sphere_spectrum(cutoff: i64) -> Result<String> {
    let mut rows = 0;
    for n in [2u32, 3, 4] {
        let levels = SymmetricSpaceData::sphere(n)?.spectrum_up_to(&q(cutoff))?;
        let expected: Vec<BigRational> = (0i64..)
            .map(|k| q(k * (k + n as i64 - 1)))
            .take_while(|l| *l <= q(cutoff))
            .collect();
        let got: Vec<BigRational> = levels.iter().map(|l| l.eigenvalue.clone()).collect();
        if got != expected {
            return Err(crate::Error::InvalidArgument(format!("S^{n}: spectrum mismatch")));
        }
        rows += got.len();
    }
    Ok(format!("{rows} levels on S^2, S^3, S^4 up to {cutoff}"))
}

pub fn check_product_degeneracy() -> Result<String> {
    let space = SymmetricSpaceData::product(&[2, 2])?;
    let levels = space.spectrum_up_to(&q(12))?;
    let find = |l: i64| levels.iter().find(|x| x.eigenvalue == q(l));
    let w = RestrictedWeight::from_i64s;
    let two = find(2).map(|x| x.alphas.clone()).unwrap_or_default();
    let twelve = find(12).cloned();
    let ok2 = two == vec![w(&[0, 1]), w(&[1, 0])];
    let ok12 = twelve
        .as_ref()
        .is_some_and(|l| l.alphas == vec![w(&[0, 3]), w(&[2, 2]), w(&[3, 0])] && l.real_dim == 39);
    if ok2 && ok12 {
        Ok("level 2: (0,1),(1,0); level 12: (0,3),(2,2),(3,0), dim 39".into())
    } else {
        Err(crate::Error::InvalidArgument("product degeneracy mismatch".into()))
    }
}

pub fn check_first_appearance(cutoff: i64) -> Result<String> {
    let mut checked = 0;
    for (name, space) in sweep_spaces() {
        let levels = space.spectrum_up_to(&q(cutoff))?;
        for (i, level) in levels.iter().enumerate() {
            for alpha in level.alphas.iter().filter(|a| !a.is_zero()) {
                let h = canonicalize(alpha)?;
                let m = level.torus_decomp.mult_of(&h);
                if m != 1 {
                    return Err(crate::Error::InvalidArgument(format!("{name}: {h} has multiplicity {m} at its level")));
                }
                if let Some(lower) = levels[..i].iter().find(|l| l.torus_decomp.mult_of(&h) != 0) {
                    return Err(crate::Error::InvalidArgument(format!(
                        "{name}: {h} already present at {}",
                        lower.eigenvalue
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} alphas across 4 spaces"))
}

/// Closed-form coefficients at the own level and vanishing at lower levels.
pub fn check_coefficient_formula(cutoff: i64, max_p: u32) -> Result<String> {
    let mut checked = 0;
    for (name, space) in sweep_spaces() {
        for sig in SystemSignature::all_up_to(max_p) {
            let analysis = BifurcationAnalysis::new(&space, sig, &q(cutoff))?;
            let levels = analysis.spectrum();
            for (i, level) in levels.iter().enumerate() {
                for alpha in level.alphas.iter().filter(|a| !a.is_zero()) {
                    let h = canonicalize(alpha)?;
                    for sign in [LevelSign::Plus, LevelSign::Minus] {
                        let present = match sign {
                            LevelSign::Plus => sig.n_minus > 0,
                            LevelSign::Minus => sig.n_plus > 0,
                        };
                        if !present {
                            continue;
                        }
                        let (got, want) = analysis.coeff_formula_check(&space, alpha, sign)?;
                        if got != want {
                            return Err(crate::Error::InvalidArgument(format!(
                                "{name} {sig:?} {alpha} {sign:?}: {got} vs {want}"
                            )));
                        }
                        checked += 1;
                    }
                    for lower in levels[..i].iter().filter(|l| !l.eigenvalue.is_zero()) {
                        for lam in [lower.eigenvalue.clone(), -lower.eigenvalue.clone()] {
                            if analysis.in_lambda(&lam) && !analysis.index(&lam)?.coeff_at(&h).is_zero() {
                                return Err(crate::Error::InvalidArgument(format!(
                                    "{name} {sig:?}: {h} nonzero at lower level {lam}"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} coefficient pairs equal, lower levels vanish"))
}

pub fn check_impossibility() -> Result<String> {
    for n_minus in 1..=6 {
        for n_plus in 1..=6 {
            for parity in 0..2 {
                if cancellation_possible(parity, n_minus, n_plus) {
                    return Err(crate::Error::InvalidArgument(format!(
                        "cancellation possible at n- = {n_minus}, n+ = {n_plus}, parity {parity}"
                    )));
                }
            }
        }
    }
    Ok("72 cases, no cancellation".into())
}

pub fn check_zero_level(max_p: u32) -> Result<String> {
    let space = SymmetricSpaceData::sphere(2)?;
    let mut n = 0;
    for sig in SystemSignature::all_up_to(max_p) {
        let idx = BifurcationAnalysis::new(&space, sig, &q(0))?.index(&q(0))?;
        let unit = idx.unit_coeff().clone();
        let ok = idx.codim1().is_empty()
            && if sig.p() % 2 == 1 { unit == BigInt::from(2) || unit == BigInt::from(-2) } else { unit.is_zero() };
        if !ok {
            return Err(crate::Error::InvalidArgument(format!("{sig:?}: BIF(0) = {idx}")));
        }
        n += 1;
    }
    Ok(format!("{n} signatures"))
}

/// Random truncated ring element over subgroups of `Z²`; the unit coefficient is `±1`
/// when `invertible`.
pub fn random_ring_element(rng: &mut impl Rng, invertible: bool) -> EulerRingElement {
    let unit: i64 = if invertible {
        if rng.random_bool(0.5) {
            1
        } else {
            -1
        }
    } else {
        rng.random_range(-5..=5)
    };
    let terms = (0..rng.random_range(0..4)).filter_map(|_| {
        let mu = [rng.random_range(-3..=3), rng.random_range(-3..=3)];
        let h = SubgroupId::from_i64s(&mu).ok()?;
        Some((h, BigInt::from(rng.random_range(-5i64..=5))))
    });
    EulerRingElement::from_parts(unit, terms.collect::<Vec<_>>())
}

pub fn check_ring_axioms(cases: usize, seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = EulerRingElement::one();
    for case in 0..cases {
        let a = random_ring_element(&mut rng, false);
        let b = random_ring_element(&mut rng, false);
        let c = random_ring_element(&mut rng, false);
        let u = random_ring_element(&mut rng, true);
        let ok = &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &one == a
            && &u * &u.inverse()? == one;
        if !ok {
            return Err(crate::Error::InvalidArgument(format!("axiom failure at case {case}: {a}, {b}, {c}, {u}")));
        }
    }
    Ok(format!("{cases} random cases"))
}

pub fn check_gradient(seed: u64) -> Result<(f64, String)> {
    let basis = GalerkinBasis::new(8);
    let a = [-1, 1];
    let coeffs = random_coeffs(&basis, a.len(), 0.3, seed);
    let err = gradient_check(&basis, &NonlinearitySpec::quartic(), &a, &coeffs, 1.5, 1e-5, 50, seed)?;
    Ok((err, format!("max relative error {err:.3e} over 50 coordinates, K = 8")))
}

/// Crossings of the discretized trivial branch against the exact levels.
pub fn check_crossings(max_p: u32, window: i64) -> Result<String> {
    let space = SymmetricSpaceData::sphere(2)?;
    // K with K(K+1) ≥ window resolves every level in the window.
    let k = (0u32..).find(|k| (k * (k + 1)) as i64 > window).unwrap_or(1);
    let basis = GalerkinBasis::new(k);
    let mut n = 0;
    for sig in SystemSignature::all_up_to(max_p) {
        let a: Vec<i64> = std::iter::repeat_n(1, sig.n_plus as usize)
            .chain(std::iter::repeat_n(-1, sig.n_minus as usize))
            .collect();
        let numeric: Vec<BigRational> = trivial_branch_crossings(&basis, &a, &q(-window), &q(window))?
            .into_iter()
            .map(|c| c.lambda)
            .collect();
        let exact: Vec<BigRational> = BifurcationAnalysis::new(&space, sig, &q(window))?
            .levels()?
            .into_iter()
            .map(|l| l.lambda0)
            .collect();
        if numeric != exact {
            return Err(crate::Error::InvalidArgument(format!("{sig:?}: crossings differ")));
        }
        n += 1;
    }
    Ok(format!("{n} signatures on [-{window}, {window}]"))
}

pub fn check_branch_witness() -> Result<String> {
    let basis = GalerkinBasis::new(8);
    let opts = ContinuationOptions { isotropy: IsotropyRestriction::Axisymmetric, ..Default::default() };
    let run = continue_branch(&basis, &NonlinearitySpec::quartic(), &[-1], &q(2), &opts)
        .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    let last = run.states.last().expect("onset state");
    let nonconstant = run.states.iter().all(|s| s.is_nonconstant(&basis, 1));
    if run.outcome == BranchOutcome::ReachedTarget && run.states.len() <= opts.max_steps && nonconstant {
        Ok(format!(
            "h1 {:.4} at lambda {:.4} after {} steps, all states nonconstant",
            last.h1_norm,
            last.lambda,
            run.states.len()
        ))
    } else {
        Err(crate::Error::InvalidArgument(format!(
            "outcome {:?} after {} steps, nonconstant {nonconstant}",
            run.outcome,
            run.states.len()
        )))
    }
}

fn outcome(id: u32, name: &str, r: Result<String>) -> CheckOutcome {
    match r {
        Ok(detail) => CheckOutcome { id, name: name.into(), passed: true, detail },
        Err(e) => CheckOutcome { id, name: name.into(), passed: false, detail: e.to_string() },
    }
}

pub fn run(seed: u64) -> SelftestReport {
    let checks = vec![
        outcome(1, "spectrum exactness", check_sphere_spectrum(200)),
        outcome(2, "product degeneracy", check_product_degeneracy()),
        outcome(3, "first appearance", check_first_appearance(30)),
        outcome(4, "coefficient formula", check_coefficient_formula(30, 5)),
        outcome(5, "impossibility", check_impossibility()),
        outcome(6, "zero-level index", check_zero_level(7)),
        outcome(7, "euler ring axioms", check_ring_axioms(10_000, seed)),
        outcome(
            8,
            "galerkin gradient",
            check_gradient(seed).and_then(|(err, detail)| {
                if err <= 1e-6 {
                    Ok(detail)
                } else {
                    Err(crate::Error::InvalidArgument(detail))
                }
            }),
        ),
        outcome(9, "crossing agreement", check_crossings(3, 30)),
        outcome(10, "branch witness", check_branch_witness()),
    ];
    let all_passed = checks.iter().all(|c| c.passed);
    SelftestReport { checks, all_passed }
}
