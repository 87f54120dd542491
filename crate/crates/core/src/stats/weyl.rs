//! Signed permutations: how often every even length carries an even number
//! of negative cycles.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::symmetric::{cycles, for_each_permutation};
use super::{wilson, Estimate, Z99};
use crate::error::{bail, Result};
use crate::sampling::seeded_rng;

/// For each even `k`, the number of negative `k`-cycles is even.
fn condition(perm: &[usize], negative: impl Fn(usize) -> bool) -> bool {
    let m = perm.len();
    let mut parity = vec![false; m + 1];
    for cyc in cycles(perm) {
        let neg = cyc.iter().filter(|&&x| negative(x)).count() % 2 == 1;
        if neg && cyc.len() % 2 == 0 {
            parity[cyc.len()] ^= true;
        }
    }
    parity.iter().all(|&p| !p)
}

/// Exact proportion over all `m! 2^m` signed permutations.
pub fn weyl_exact(m: usize) -> Result<BigRational> {
    if m == 0 || m > 10 {
        bail!(Argument, "exact enumeration needs 1 <= m <= 10, got {m}");
    }
    let mut hits = 0u64;
    let mut total = 0u64;
    for_each_permutation(m, |perm| {
        for signs in 0u32..1 << m {
            total += 1;
            if condition(perm, |x| signs >> x & 1 == 1) {
                hits += 1;
            }
        }
    });
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Monte Carlo estimate: uniform permutation with independent uniform signs.
pub fn weyl_negative_cycle_statistic(m: usize, trials: u64, seed: u64) -> Result<Estimate> {
    if m == 0 {
        bail!(Argument, "m must be positive");
    }
    let mut rng = seeded_rng(seed);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut signs = vec![false; m];
    let mut hits = 0;
    for _ in 0..trials {
        perm.shuffle(&mut rng);
        signs.iter_mut().for_each(|s| *s = rng.gen());
        if condition(&perm, |x| signs[x]) {
            hits += 1;
        }
    }
    let (lo, hi) = wilson(hits, trials, Z99);
    Ok(Estimate::Sampled { value: hits as f64 / trials.max(1) as f64, lo, hi, hits, trials })
}

/// Estimates over increasing `m`, each from its own seed-derived stream,
/// and whether they decrease with disjoint intervals.
pub fn weyl_trend(ms: &[usize], trials: u64, seed: u64) -> Result<(Vec<(usize, Estimate)>, bool)> {
    let rows: Vec<(usize, Estimate)> = ms
        .iter()
        .map(|&m| Ok((m, weyl_negative_cycle_statistic(m, trials, seed ^ (m as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))?)))
        .collect::<Result<_>>()?;
    let separated = rows.windows(2).all(|w| match (&w[0].1, &w[1].1) {
        (Estimate::Sampled { lo, .. }, Estimate::Sampled { hi, .. }) => hi < lo,
        _ => false,
    });
    Ok((rows, separated))
}
