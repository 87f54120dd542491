use fixfree_core::action::{enumerate_action, ActionSpec, SubspaceKind, DEFAULT_POINT_CAP};
use fixfree_core::forms::Sign;
use fixfree_core::group::{build_group, GroupFamily, GroupSpec, GroupTable, DEFAULT_CAP};
use fixfree_core::membership::{gl_tau_member, membership_set, Coset};
use fixfree_core::stats::{
    brute_force_symmetric_a, brute_force_symmetric_expectation, coset_average_fixed_points, is_conjugation_stable,
    proportion, subset_expectation, symmetric_a, symmetric_expectation, wilson, Estimate, Method, ProportionQuery,
    Twisted, Z99,
};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn build(family: GroupFamily, n: usize, q: u32) -> GroupTable {
    build_group(&GroupSpec::new(family, n, q).unwrap(), DEFAULT_CAP).unwrap()
}

#[test]
fn gl4_over_gf2_enumeration_equals_series() {
    let query = ProportionQuery { family: GroupFamily::Gl, n: 4, q: 2, t: 1, coset: Coset::All };
    let e = proportion(&query, Method::Enumeration).unwrap();
    let s = proportion(&query, Method::Series).unwrap();
    assert_eq!(e.estimate, s.estimate);
    // already close to the limiting proportion 0.28879
    assert!((e.estimate.to_f64() - 0.28879).abs() < 1e-3);
}

#[test]
fn symplectic_enumeration_without_series() {
    let query = ProportionQuery { family: GroupFamily::Sp, n: 4, q: 2, t: 1, coset: Coset::All };
    let e = proportion(&query, Method::Enumeration).unwrap();
    assert_eq!(e.estimate, Estimate::Exact(BigRational::new(19.into(), 45.into())));
}

#[test]
fn eigenvalue_free_elements_fix_no_points() {
    let t = build(GroupFamily::Gl, 4, 2);
    let f = t.field();
    let d = enumerate_action(&t.spec().unwrap().form(f).unwrap(), f, ActionSpec::Subspaces { k: 1, kind: SubspaceKind::Any }, DEFAULT_POINT_CAP)
        .unwrap();
    let a: Vec<Twisted> = membership_set(&t, 1, Coset::All).unwrap().into_iter().map(|i| (t.element(i), false)).collect();
    assert!(subset_expectation(&a, &d, &t.kernel_generators()).unwrap().value.is_zero());
    // the full coset specializes to the coset average
    let all: Vec<Twisted> = t.elements().map(|g| (g, false)).collect();
    let full = subset_expectation(&all, &d, &t.kernel_generators()).unwrap();
    assert_eq!(full.value, coset_average_fixed_points(&t, 0, &d).unwrap().value);
}

#[test]
fn each_element_fixes_one_quadratic_form() {
    // elements fixing no subspace of dimension <= 2 in Sp_n(2) lie in exactly one O^± subgroup
    for n in [4usize, 6] {
        let t = build(GroupFamily::Sp, n, 2);
        let f = t.field();
        let form = t.spec().unwrap().form(f).unwrap();
        let a: Vec<Twisted> = membership_set(&t, 2, Coset::All).unwrap().into_iter().map(|i| (t.element(i), false)).collect();
        assert!(is_conjugation_stable(&a, t.generators(), f));
        let mut sum = BigRational::zero();
        for s in [Sign::Plus, Sign::Minus] {
            let d = enumerate_action(&form, f, ActionSpec::QuadraticForms { sign: Some(s) }, DEFAULT_POINT_CAP).unwrap();
            sum += subset_expectation(&a, &d, t.generators()).unwrap().value;
        }
        assert!(sum.is_one(), "n={n}: {sum}");
    }
}

#[test]
fn tau_coset_set_is_stable_and_averages_over_antiflags() {
    let t = build(GroupFamily::Gl, 3, 3);
    let f = t.field();
    let a: Vec<Twisted> = t.elements().filter(|g| gl_tau_member(g, 1, f)).map(|g| (g, true)).collect();
    assert!(is_conjugation_stable(&a, &t.kernel_generators(), f));
    let d = enumerate_action(&t.spec().unwrap().form(f).unwrap(), f, ActionSpec::Antiflags { k: 1 }, DEFAULT_POINT_CAP).unwrap();
    // the whole τ-coset averages to 1 on a transitive action
    let all: Vec<Twisted> = t.elements().map(|g| (g, true)).collect();
    assert!(subset_expectation(&all, &d, &t.kernel_generators()).unwrap().value.is_one());
    assert!(subset_expectation(&a, &d, &t.kernel_generators()).is_ok());
}

#[test]
fn symmetric_expectation_tends_to_a_k() {
    let e = symmetric_expectation(12, 4, 2).unwrap();
    let a4 = symmetric_a(4, 2);
    assert_eq!(a4, BigRational::new(1.into(), 4.into()));
    let gap = (e.to_f64().unwrap() - a4.to_f64().unwrap()).abs();
    assert!(gap < 0.1, "{e} vs {a4}");
    assert!(symmetric_expectation(10, 1, 2).is_err());
}

#[test]
fn monte_carlo_coverage_meta() {
    // 100 seeds at a small instance: the 99% interval covers the exact value almost always
    let query = ProportionQuery { family: GroupFamily::Gl, n: 3, q: 3, t: 1, coset: Coset::Label(1) };
    let exact = proportion(&query, Method::Enumeration).unwrap().estimate.to_f64();
    let covered = (0..100)
        .filter(|&s| proportion(&query, Method::MonteCarlo { trials: 2000, seed: s }).unwrap().estimate.covers(exact))
        .count();
    assert!(covered >= 95, "{covered}/100");
}

#[test]
fn tau_monte_carlo_matches_enumeration() {
    let query = ProportionQuery { family: GroupFamily::Gl, n: 3, q: 2, t: 1, coset: Coset::Tau };
    let exact = proportion(&query, Method::Enumeration).unwrap().estimate;
    assert_eq!(exact, Estimate::Exact(BigRational::new(1.into(), 3.into())));
    let mc = proportion(&query, Method::MonteCarlo { trials: 20_000, seed: 4 }).unwrap();
    assert!(mc.estimate.covers(exact.to_f64()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_dp_matches_brute_force(n in 1usize..8, t in 1usize..4) {
        prop_assert_eq!(symmetric_a(n, t), brute_force_symmetric_a(n, t));
        for k in t..n {
            if 2 * k < n {
                prop_assert_eq!(symmetric_expectation(n, k, t).unwrap(), brute_force_symmetric_expectation(n, k, t));
            }
        }
    }

    #[test]
    fn wilson_interval_contains_the_sample_proportion(trials in 1u64..100_000, frac in 0.0f64..1.0) {
        let hits = (trials as f64 * frac) as u64;
        let (lo, hi) = wilson(hits, trials, Z99);
        let p = hits as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }
}
