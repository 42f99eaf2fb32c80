mod common;

use common::*;
use eqbif::bifurcation::{
    chi_sphere_block, chi_sphere_block_by_dim, BifurcationAnalysis, LedgerEntry,
};
use eqbif::{
    bif_index, bifurcation_levels, certify_unbounded, coeff_formula_check, symmetry_breaking_flag, EulerRingElement,
    Error, LevelSign, RestrictedWeight, SubgroupId, SymmetricSpaceData, SystemSignature, UnboundednessCertificate,
};
use num_bigint::BigInt;

fn s2() -> SymmetricSpaceData {
    SymmetricSpaceData::sphere(2).unwrap()
}

fn sig(n_plus: u32, n_minus: u32) -> SystemSignature {
    SystemSignature::new(n_plus, n_minus).unwrap()
}

fn h(c: &[i64]) -> SubgroupId {
    SubgroupId::from_i64s(c).unwrap()
}

#[test]
fn index_on_s2_by_hand() {
    // W = constants, V = R ⊕ R[1,1]: (−I) ⋆ ((−I + χ) − I) = 2I − χ
    let expected = EulerRingElement::from_parts(2, [(h(&[1]), BigInt::from(-1))]);
    assert_eq!(bif_index(&s2(), sig(0, 1), &q(2)).unwrap(), expected);
    let minus = bif_index(&s2(), sig(1, 0), &q(-2)).unwrap();
    assert_eq!(minus.coeff_at(&h(&[1])), BigInt::from(-1));
    assert_eq!(minus, EulerRingElement::from_parts(-2, [(h(&[1]), BigInt::from(-1))]));
}

#[test]
fn closed_form_pairs() {
    let w = RestrictedWeight::from_i64s;
    let pair = |s, a: &[i64], sign| coeff_formula_check(&s2(), s, &w(a), sign).unwrap();
    assert_eq!(pair(sig(0, 1), &[1], LevelSign::Plus), (BigInt::from(-1), BigInt::from(-1)));
    assert_eq!(pair(sig(0, 2), &[2], LevelSign::Plus), (BigInt::from(-2), BigInt::from(-2)));
}

#[test]
fn nonvanishing_on_guaranteed_levels() {
    for space in [s2(), SymmetricSpaceData::sphere(3).unwrap(), SymmetricSpaceData::product(&[2, 2]).unwrap()] {
        for (np, nm) in signatures(5) {
            let analysis = BifurcationAnalysis::new(&space, sig(np, nm), &q(30)).unwrap();
            for level in analysis.guaranteed_levels() {
                assert!(!analysis.index(&level).unwrap().is_zero(), "{np},{nm} at {level}");
            }
        }
    }
}

#[test]
fn parity_substitution_never_matters() {
    for space in [s2(), SymmetricSpaceData::product(&[2, 3]).unwrap()] {
        let levels = space.spectrum_up_to(&q(30)).unwrap();
        let mut w = eqbif::TorusRepDecomposition::default();
        for level in &levels {
            for block in [&level.torus_decomp, &w] {
                assert_eq!(chi_sphere_block(block), chi_sphere_block_by_dim(block));
                for n in 1..=4 {
                    assert_eq!(
                        chi_sphere_block(&block.repeat(n)).pow(3).unwrap(),
                        chi_sphere_block_by_dim(&block.repeat(n)).pow(3).unwrap()
                    );
                }
            }
            w = w.direct_sum(&level.torus_decomp);
        }
    }
}

#[test]
fn impossibility_identity_mirrors_the_proof() {
    for n_minus in 1..=6i64 {
        for n_plus in 1..=6i64 {
            for parity in 0..2u64 {
                let lhs = sign(parity * (n_minus - n_plus).unsigned_abs()) * n_minus;
                assert_ne!(lhs, -n_plus);
            }
        }
    }
}

#[test]
fn certificates_on_s2() {
    let c = certify_unbounded(&s2(), sig(0, 1), &q(2)).unwrap();
    assert_eq!(c.witness, Some(h(&[1])));
    assert_eq!(c.ledger, vec![LedgerEntry { level: q(2), coeff: BigInt::from(-1) }]);
    assert!(c.conclusion.contains("sum -1 ≠ 0"));

    let c = certify_unbounded(&s2(), sig(1, 1), &q(2)).unwrap();
    let sum: BigInt = c.ledger.iter().map(|e| &e.coeff).sum();
    assert_eq!(sum, BigInt::from(-2));
    assert!(c.unbounded);

    // odd p at level 0: ±2I
    let c = certify_unbounded(&s2(), sig(1, 2), &q(0)).unwrap();
    assert_eq!(c.ledger[0].coeff, BigInt::from(2));
    let c = certify_unbounded(&s2(), sig(2, 1), &q(0)).unwrap();
    assert_eq!(c.ledger[0].coeff, BigInt::from(-2));
    assert!(matches!(certify_unbounded(&s2(), sig(1, 1), &q(0)), Err(Error::NoGuarantee(_))));
}

#[test]
fn every_guaranteed_level_certifies() {
    for space in [s2(), SymmetricSpaceData::product(&[2, 2]).unwrap()] {
        for (np, nm) in signatures(4) {
            let analysis = BifurcationAnalysis::new(&space, sig(np, nm), &q(20)).unwrap();
            for level in analysis.guaranteed_levels() {
                assert!(analysis.certify(&level).unwrap().unbounded, "{np},{nm} at {level}");
            }
        }
    }
}

#[test]
fn certificate_json_shape_and_round_trip() {
    let c = certify_unbounded(&s2(), sig(0, 1), &q(2)).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["level"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["witness"], serde_json::json!([1]));
    assert_eq!(v["ledger"][0]["level"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["unbounded"], serde_json::json!(true));
    assert_eq!(v["symmetry_breaking"], serde_json::json!(true));
    let back: UnboundednessCertificate = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}

#[test]
fn symmetry_breaking_flags() {
    assert!(symmetry_breaking_flag(&s2(), &q(2)));
    assert!(symmetry_breaking_flag(&s2(), &q(-6)));
    assert!(!symmetry_breaking_flag(&s2(), &q(0)));
}

#[test]
fn levels_and_kernels() {
    let lv = |s| bifurcation_levels(&s2(), s, &q(6)).unwrap().into_iter().map(|l| l.lambda0).collect::<Vec<_>>();
    assert_eq!(lv(sig(0, 1)), vec![q(0), q(2), q(6)]);
    assert_eq!(lv(sig(1, 1)), vec![q(-6), q(-2), q(0), q(2), q(6)]);
    let levels = bifurcation_levels(&s2(), sig(0, 2), &q(6)).unwrap();
    assert_eq!(levels.iter().find(|l| l.lambda0 == q(2)).unwrap().kernel_dim, 6);
}
