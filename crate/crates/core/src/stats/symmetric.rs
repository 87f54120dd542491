//! Symmetric-group analogue: permutations all of whose cycles are longer than `t`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{bail, Result};

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |a, i| a * (n - i) / (i + 1))
}

/// `c_0..=c_n`, where `c_m` counts permutations of `m` points with every cycle
/// longer than `t`: `c_m = Σ_{l>t} (m-1)!/(m-l)! c_{m-l}`, choosing the cycle
/// through the first point.
pub fn symmetric_counts(n: usize, t: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for m in 1..=n {
        let mut sum = BigInt::zero();
        // falling factorial (m-1)(m-2)...(m-l+1)
        let mut falling = BigInt::one();
        for l in 1..=m {
            if l > 1 {
                falling *= m - l + 1;
            }
            if l > t {
                sum += &falling * &c[m - l];
            }
        }
        c.push(sum);
    }
    c
}

/// `a_n(t) = c_n / n!`.
pub fn symmetric_a(n: usize, t: usize) -> BigRational {
    BigRational::new(symmetric_counts(n, t).pop().expect("nonempty"), factorial(n))
}

/// Average number of fixed `k`-sets over `A_n(t)`: a `k`-set is fixed iff it is
/// a union of cycles, so the count is `C(n,k) c_k c_{n-k} / c_n`.
pub fn symmetric_expectation(n: usize, k: usize, t: usize) -> Result<BigRational> {
    if !(1 <= t && t <= k && 2 * k < n) {
        bail!(Argument, "need 1 <= t <= k < n/2, got n={n} k={k} t={t}");
    }
    let c = symmetric_counts(n, t);
    Ok(BigRational::new(binomial(n, k) * &c[k] * &c[n - k], c[n].clone()))
}

/// Derangement numbers `D_0..=D_n` by `D_m = (m-1)(D_{m-1} + D_{m-2})`.
pub fn derangements(n: usize) -> Vec<BigInt> {
    let mut d = vec![BigInt::one(), BigInt::zero()];
    for m in 2..=n {
        let next = (&d[m - 1] + &d[m - 2]) * (m - 1);
        d.push(next);
    }
    d.truncate(n + 1);
    d
}

/// Visit every permutation of `0..n` (Heap's order).
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Cycles of a permutation given as an image list.
pub(crate) fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push(cyc);
    }
    out
}

fn for_each_cycle_type(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut lens = Vec::with_capacity(n);
    for_each_permutation(n, |perm| {
        lens.clear();
        lens.extend(cycles(perm).iter().map(Vec::len));
        visit(&lens);
    });
}

/// `a_n(t)` by iterating over all `n!` permutations.
pub fn brute_force_symmetric_a(n: usize, t: usize) -> BigRational {
    let mut hits = 0u64;
    for_each_cycle_type(n, |lens| {
        if lens.iter().all(|&l| l > t) {
            hits += 1;
        }
    });
    BigRational::new(hits.into(), factorial(n))
}

/// Fixed `k`-sets averaged over `A_n(t)`, by iterating over all permutations
/// and counting the sets of cycles of total length `k`.
pub fn brute_force_symmetric_expectation(n: usize, k: usize, t: usize) -> BigRational {
    let (mut members, mut fixed) = (0u64, 0u64);
    for_each_cycle_type(n, |lens| {
        if lens.iter().any(|&l| l <= t) {
            return;
        }
        members += 1;
        let mut ways = vec![0u64; k + 1];
        ways[0] = 1;
        for &l in lens {
            for s in (l..=k).rev() {
                ways[s] += ways[s - l];
            }
        }
        fixed += ways[k];
    });
    BigRational::new(fixed.into(), members.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derangement_proportion() {
        assert_eq!(symmetric_a(4, 1), BigRational::new(9.into(), 24.into()));
        assert_eq!(derangements(5), [1, 0, 1, 2, 9, 44].map(BigInt::from).to_vec());
    }

    #[test]
    fn empty_when_t_reaches_n() {
        for n in 1..6 {
            assert!(symmetric_a(n, n).is_zero());
        }
    }

    #[test]
    fn dp_matches_brute_force() {
        for n in 1..=7 {
            for t in 1..=3 {
                assert_eq!(symmetric_a(n, t), brute_force_symmetric_a(n, t), "n={n} t={t}");
            }
        }
        assert_eq!(symmetric_expectation(7, 2, 1).unwrap(), brute_force_symmetric_expectation(7, 2, 1));
        assert!(symmetric_expectation(8, 4, 1).is_err());
    }
}
