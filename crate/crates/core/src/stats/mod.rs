//! Proportions, fixed-point expectations and ratios, and the auxiliary
//! statistics built on enumerated groups: symmetric-group analogues, signed
//! permutations and a generation probe.

mod expectation;
mod fpr;
mod identities;
mod probe;
mod proportion;
mod symmetric;
mod weyl;

pub use expectation::{
    coset_average_fixed_points, expectation_inequality, is_conjugation_stable, subset_expectation,
    ExpectationReport, InequalityReport, Twisted,
};
pub use fpr::{fpr_actions, fpr_bound, fpr_bound_check, BoundKind, FprReport, FprSummary};
pub use identities::{
    inverse_transpose_identity_check, orthogonal_reflection_identity_check, IdentityReport,
};
pub use probe::{conjugacy_classes, generation_probe, three_halves_generation, ClassProbe, GenerationReport};
pub use proportion::{count_gl_stream, proportion, Estimate, Method, ProportionQuery, ProportionReport};
pub use symmetric::{
    brute_force_symmetric_a, brute_force_symmetric_expectation, derangements, symmetric_a,
    symmetric_expectation, symmetric_counts,
};
pub use weyl::{weyl_exact, weyl_negative_cycle_statistic, weyl_trend};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

/// Wilson score interval `(lo, hi)` for `hits` successes in `trials`.
pub fn wilson(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ((center - half).max(0.0), (center + half).min(1.0))
}

pub(crate) fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson(30, 100, Z99);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((hi - lo) < 0.25);
        let (lo, hi) = wilson(0, 50, Z99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.15);
    }
}
