//! Brute-force oracles shared by the integration tests. Nothing here calls into
//! the library's combinatorics.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Number of monomials of degree `d` in `vars` variables, by explicit enumeration.
pub fn count_monomials(vars: u32, d: u32) -> u64 {
    fn go(vars: u32, d: u32) -> u64 {
        if vars == 1 {
            return 1;
        }
        (0..=d).map(|e| go(vars - 1, d - e)).sum()
    }
    if vars == 0 {
        return u64::from(d == 0);
    }
    go(vars, d)
}

/// Harmonic polynomials of degree `k` on `R^{n+1}`: all monomials minus `|x|²·(degree k−2)`.
pub fn harmonic_dim(n: u32, k: u32) -> u64 {
    let all = count_monomials(n + 1, k);
    if k >= 2 {
        all - count_monomials(n + 1, k - 2)
    } else {
        all
    }
}

/// Weight histogram of degree-`d` monomials in `z` (weight 1), `z̄` (weight −1)
/// and `n − 1` weight-zero variables.
fn monomial_weights(n: u32, d: u32) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for a in 0..=d {
        for b in 0..=d - a {
            *out.entry(a as i64 - b as i64).or_insert(0) += count_monomials(n - 1, d - a - b);
        }
    }
    out
}

/// Complex torus weights of degree-`k` harmonics on `S^n` (rank one).
pub fn sphere_weights(n: u32, k: u32) -> BTreeMap<i64, u64> {
    let mut top = monomial_weights(n, k);
    if k >= 2 {
        for (m, c) in monomial_weights(n, k - 2) {
            let e = top.get_mut(&m).expect("lower degree weights are contained");
            *e -= c;
        }
    }
    top.retain(|_, c| *c > 0);
    top
}

/// Complex weights of the `alpha` block of a product of spheres.
pub fn product_weights(factors: &[u32], alpha: &[u32]) -> BTreeMap<Vec<i64>, u64> {
    let mut acc: BTreeMap<Vec<i64>, u64> = BTreeMap::from([(vec![], 1)]);
    for (&n, &k) in factors.iter().zip(alpha) {
        let mut next = BTreeMap::new();
        for (mu, c) in &acc {
            for (m, d) in sphere_weights(n, k) {
                let mut nu = mu.clone();
                nu.push(m);
                *next.entry(nu).or_insert(0) += c * d;
            }
        }
        acc = next;
    }
    acc
}

pub fn product_dim(factors: &[u32], alpha: &[u32]) -> u64 {
    factors.iter().zip(alpha).map(|(&n, &k)| harmonic_dim(n, k)).product()
}

/// `Σ k_i(k_i + n_i − 1)`.
pub fn product_eigenvalue(factors: &[u32], alpha: &[u32]) -> i64 {
    factors.iter().zip(alpha).map(|(&n, &k)| (k * (k + n - 1)) as i64).sum()
}

/// All `alpha ∈ N^r` with eigenvalue `≤ cutoff`, grouped by eigenvalue.
pub fn product_levels(factors: &[u32], cutoff: i64) -> BTreeMap<i64, Vec<Vec<u32>>> {
    let mut out: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    let mut alpha = vec![0u32; factors.len()];
    loop {
        let lam = product_eigenvalue(factors, &alpha);
        if lam <= cutoff {
            out.entry(lam).or_default().push(alpha.clone());
        }
        // odometer; each coordinate bounded by its own eigenvalue
        let mut i = 0;
        loop {
            if i == alpha.len() {
                return out;
            }
            alpha[i] += 1;
            if ((alpha[i] * (alpha[i] + factors[i] - 1)) as i64) <= cutoff {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
}

/// `(−1)^e`
pub fn sign(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Signatures `(n_plus, n_minus)` with `1 ≤ p ≤ max_p`.
pub fn signatures(max_p: u32) -> Vec<(u32, u32)> {
    (1..=max_p).flat_map(|p| (0..=p).map(move |np| (np, p - np))).collect()
}

pub fn coefficients(n_plus: u32, n_minus: u32) -> Vec<i64> {
    std::iter::repeat_n(1, n_plus as usize).chain(std::iter::repeat_n(-1, n_minus as usize)).collect()
}
