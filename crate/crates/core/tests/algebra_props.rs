//! Property tests for restricted weights and the truncated Euler ring.

use eqbif::weight_lattice::WeightOrder;
use eqbif::{canonicalize, dominates, EulerRingElement, RestrictedWeight, Subgroup, SubgroupId};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn weight(rank: usize) -> impl Strategy<Value = RestrictedWeight> {
    prop::collection::vec(-50i64..=50, rank).prop_map(|c| RestrictedWeight::from_i64s(&c))
}

fn id() -> impl Strategy<Value = SubgroupId> {
    (-4i64..=4, -4i64..=4)
        .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
        .prop_map(|(a, b)| SubgroupId::from_i64s(&[a, b]).unwrap())
}

fn element() -> impl Strategy<Value = EulerRingElement> {
    (-9i64..=9, prop::collection::vec((id(), -9i64..=9), 0..5)).prop_map(|(u, terms)| {
        EulerRingElement::from_parts(u, terms.into_iter().map(|(h, c)| (h, BigInt::from(c))).collect::<Vec<_>>())
    })
}

fn invertible() -> impl Strategy<Value = EulerRingElement> {
    (prop::bool::ANY, element()).prop_map(|(neg, x)| {
        EulerRingElement::from_parts(if neg { -1 } else { 1 }, x.codim1().iter().map(|(h, c)| (h.clone(), c.clone())).collect::<Vec<_>>())
    })
}

/// Naive product over the basis {I} ∪ {χ_H}, written independently of the library.
fn oracle_mul(a: &EulerRingElement, b: &EulerRingElement) -> (BigInt, Vec<(SubgroupId, BigInt)>) {
    let mut terms: std::collections::BTreeMap<SubgroupId, BigInt> = Default::default();
    for (h, c) in a.codim1() {
        *terms.entry(h.clone()).or_default() += c * b.unit_coeff();
    }
    for (h, c) in b.codim1() {
        *terms.entry(h.clone()).or_default() += c * a.unit_coeff();
    }
    terms.retain(|_, c| !c.is_zero());
    (a.unit_coeff() * b.unit_coeff(), terms.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &EulerRingElement::one(), a.clone());
        prop_assert_eq!(&a + &EulerRingElement::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_matches_oracle(a in element(), b in element()) {
        let p = &a * &b;
        let (unit, terms) = oracle_mul(&a, &b);
        prop_assert_eq!(p.unit_coeff(), &unit);
        let got: Vec<(SubgroupId, BigInt)> = p.codim1().iter().map(|(h, c)| (h.clone(), c.clone())).collect();
        prop_assert_eq!(got, terms);
        prop_assert_eq!(p.coeff(&Subgroup::Torus), unit);
    }

    #[test]
    fn inverse_and_powers(u in invertible(), n in -6i64..=6, m in -6i64..=6) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, EulerRingElement::one());
        prop_assert_eq!(inv.inverse().unwrap(), u.clone());
        prop_assert_eq!(&u.pow(n).unwrap() * &u.pow(m).unwrap(), u.pow(n + m).unwrap());
        prop_assert_eq!(u.pow(-n).unwrap(), u.pow(n).unwrap().inverse().unwrap());
    }

    #[test]
    fn non_units_are_not_invertible(x in element()) {
        let u = x.unit_coeff().abs();
        prop_assert_eq!(x.inverse().is_ok(), u == BigInt::from(1));
    }

    #[test]
    fn ring_json_round_trip(x in element()) {
        let back: EulerRingElement = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn canonical_id_is_sign_blind(mu in weight(3)) {
        prop_assume!(!mu.is_zero());
        let h = canonicalize(&mu).unwrap();
        prop_assert_eq!(canonicalize(&mu.neg()).unwrap(), h.clone());
        prop_assert_eq!(canonicalize(h.canonical()).unwrap(), h.clone());
        let first = h.canonical().coords().iter().find(|c| !c.is_zero()).unwrap();
        prop_assert!(first.is_positive());
        // never divided by a common factor
        prop_assert!(h.canonical() == &mu || h.canonical() == &mu.neg());
        let back: SubgroupId = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn dominance_is_a_partial_order(a in weight(2), b in weight(2), c in weight(2)) {
        let leq = |x: &RestrictedWeight, y: &RestrictedWeight| {
            matches!(dominates(y, x).unwrap(), WeightOrder::Precedes | WeightOrder::Equals)
        };
        prop_assert!(leq(&a, &a));
        if leq(&a, &b) && leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if leq(&a, &b) && leq(&b, &c) {
            prop_assert!(leq(&a, &c));
        }
        // oracle: componentwise comparison
        let oracle = a.coords().iter().zip(b.coords()).all(|(x, y)| x <= y);
        prop_assert_eq!(leq(&a, &b), oracle);
    }
}

#[test]
fn scaled_weights_give_distinct_subgroups() {
    let h1 = SubgroupId::from_i64s(&[1, 2]).unwrap();
    let h2 = SubgroupId::from_i64s(&[2, 4]).unwrap();
    assert_ne!(h1, h2);
    let x = &EulerRingElement::generator(h1.clone()) + &EulerRingElement::generator(h2.clone());
    assert_eq!(x.coeff_at(&h1), BigInt::from(1));
    assert_eq!(x.coeff_at(&h2), BigInt::from(1));
}

#[test]
fn zero_weight_and_rank_errors() {
    assert!(canonicalize(&RestrictedWeight::zero(2)).is_err());
    assert!(dominates(&RestrictedWeight::from_i64s(&[1]), &RestrictedWeight::from_i64s(&[1, 0])).is_err());
}
