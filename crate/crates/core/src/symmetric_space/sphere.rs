//! Combinatorics of spherical harmonics on `S^n` under the rotation torus
//! `SO(2)` acting on the first two ambient coordinates.

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Monomials of total degree `d` in `vars` variables.
fn monomials(vars: u64, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if vars == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + vars - 1, vars - 1)
}

/// `dim 𝓗_k^n`: degree-`k` polynomials in `n+1` variables minus the image of
/// multiplication by `|x|²` from degree `k−2`.
pub fn harmonic_dim(n: u32, k: u32) -> u64 {
    let vars = n as u64 + 1;
    monomials(vars, k as i64) - monomials(vars, k as i64 - 2)
}

/// Monomials of degree `d` in `z` (weight +1), `z̄` (weight −1) and `n−1`
/// weight-zero variables whose total weight is `m`.
fn weighted_monomials(n: u32, d: i64, m: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    let rest = n as u64 - 1;
    let mut count = 0;
    // a − b = m with a, b ≥ 0 and a + b ≤ d
    let mut b: i64 = (-m).max(0);
    loop {
        let a = b + m;
        if a + b > d {
            break;
        }
        count += monomials(rest, d - a - b);
        b += 1;
    }
    count
}

/// Multiplicity of the torus weight `m` in `𝓗_k^n ⊗ ℂ`.
pub fn sphere_weight_multiplicity(n: u32, k: u32, m: i64) -> u64 {
    let k = k as i64;
    weighted_monomials(n, k, m) - weighted_monomials(n, k - 2, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force count of exponent vectors in `vars` variables with total `d`.
    fn count_exponents(vars: usize, d: usize) -> u64 {
        fn rec(vars: usize, d: usize) -> u64 {
            if vars == 1 {
                return 1;
            }
            (0..=d).map(|e| rec(vars - 1, d - e)).sum()
        }
        if vars == 0 {
            return u64::from(d == 0);
        }
        rec(vars, d)
    }

    #[test]
    fn harmonic_dims_match_monomial_counting() {
        assert_eq!(harmonic_dim(2, 0), 1);
        assert_eq!(harmonic_dim(2, 1), 3);
        assert_eq!(harmonic_dim(2, 2), 5);
        assert_eq!(harmonic_dim(3, 1), 4);
        assert_eq!(harmonic_dim(3, 2), 9);
        for n in 2..6u32 {
            assert_eq!(harmonic_dim(n, 0), 1);
            for k in 0..9u32 {
                let lower = if k >= 2 { count_exponents(n as usize + 1, k as usize - 2) } else { 0 };
                let expected = count_exponents(n as usize + 1, k as usize) - lower;
                assert_eq!(harmonic_dim(n, k), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn weight_multiplicity_examples() {
        for m in -2..=2 {
            assert_eq!(sphere_weight_multiplicity(2, 2, m), 1);
        }
        assert_eq!(sphere_weight_multiplicity(2, 2, 3), 0);
        assert_eq!(sphere_weight_multiplicity(2, 2, -3), 0);
        assert_eq!(sphere_weight_multiplicity(3, 1, 0), 2);
        for n in 2..6 {
            for k in 0..8 {
                assert_eq!(sphere_weight_multiplicity(n, k, k as i64), 1, "highest weight n={n} k={k}");
            }
        }
    }

    #[test]
    fn weights_sum_to_dimension() {
        for n in 2..6u32 {
            for k in 0..10u32 {
                let total: u64 =
                    (-(k as i64)..=k as i64).map(|m| sphere_weight_multiplicity(n, k, m)).sum();
                assert_eq!(total, harmonic_dim(n, k));
                assert_eq!(sphere_weight_multiplicity(n, k, k as i64 + 1), 0);
            }
        }
        for k in 0..20 {
            assert_eq!(harmonic_dim(2, k), 2 * k as u64 + 1);
        }
    }

    #[test]
    fn weights_are_symmetric() {
        for n in 2..5u32 {
            for k in 0..8u32 {
                for m in 0..=k as i64 {
                    assert_eq!(sphere_weight_multiplicity(n, k, m), sphere_weight_multiplicity(n, k, -m));
                }
            }
        }
    }
}
