use std::time::Instant;

use fixfree_core::limits::{
    bound_suite, limit_from_series, limit_value, q_infinity_limit, AsymptoticFamily, LimitFamily, LimitKind,
};
use fixfree_core::series::{gl_no_small_factor_series, sl_coset_series};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

fn close(a: &BigRational, b: &BigRational, tol: f64) -> bool {
    (a - b).abs().to_f64().unwrap() <= tol
}

#[test]
fn gl_series_reaches_product_limit() {
    let s = gl_no_small_factor_series(2, 1, 40).unwrap();
    let lim = limit_value(&LimitFamily::new(LimitKind::GlProdu, 2, 1).unwrap(), 1e-12).unwrap();
    assert!(close(s.coeff(40), &lim.midpoint(), 1e-6));
    let est = limit_from_series(&s).unwrap();
    assert!(!est.rigorous);
    assert!(est.width().to_f64().unwrap() < 1e-6);
}

#[test]
fn coset_limits_agree() {
    let a = sl_coset_series(3, 1, 0, 40).unwrap();
    let b = sl_coset_series(3, 1, 1, 40).unwrap();
    assert!(close(a.coeff(40), b.coeff(40), 1e-4));
    let lim = limit_value(&LimitFamily::new(LimitKind::GlProdu, 3, 1).unwrap(), 1e-12).unwrap();
    assert!(close(a.coeff(40), &lim.midpoint(), 1e-4));
}

#[test]
fn coset_proportions_average_to_gl() {
    // every determinant coset has |SL_n| elements, so the coset proportions average to the GL one
    for (q, t, order) in [(3u64, 1usize, 8usize), (4, 2, 6), (5, 1, 6)] {
        let gl = gl_no_small_factor_series(q, t, order).unwrap();
        let cosets: Vec<_> = (0..q - 1).map(|l| sl_coset_series(q, t, l, order).unwrap()).collect();
        for n in 1..=order {
            let sum: BigRational = cosets.iter().map(|s| s.coeff(n).clone()).sum();
            assert_eq!(sum, gl.coeff(n) * BigRational::from_integer((q - 1).into()), "q={q} t={t} n={n}");
        }
    }
}

#[test]
fn monotone_in_t() {
    for q in [2u64, 3] {
        let series: Vec<_> = (1..=4).map(|t| gl_no_small_factor_series(q, t, 10).unwrap()).collect();
        for w in series.windows(2) {
            for n in 0..=10 {
                assert!(w[1].coeff(n) <= w[0].coeff(n));
            }
        }
    }
}

#[test]
fn large_q_matches_closed_forms() {
    let start = Instant::now();
    for t in 1..=3 {
        let gl = limit_value(&LimitFamily::new(LimitKind::GlProdu, 10_000, t).unwrap(), 1e-9).unwrap();
        assert!((gl.mid_f64() - q_infinity_limit(AsymptoticFamily::Gl, t)).abs() <= 1e-3, "gl t={t}");
        let sp = limit_value(&LimitFamily::new(LimitKind::SpOdd, 10_007, t).unwrap(), 1e-9).unwrap();
        assert!((sp.mid_f64() - q_infinity_limit(AsymptoticFamily::Sp, t)).abs() <= 1e-3, "sp t={t}");
        let su = limit_value(&LimitFamily::new(LimitKind::SuProductu, 10_007, t).unwrap(), 1e-9).unwrap();
        assert!((su.mid_f64() - q_infinity_limit(AsymptoticFamily::Su, t)).abs() <= 1e-3, "su t={t}");
        let spe = limit_value(&LimitFamily::new(LimitKind::SpEven, 16_384, t).unwrap(), 1e-9).unwrap();
        assert!((spe.mid_f64() - q_infinity_limit(AsymptoticFamily::Sp, t)).abs() <= 1e-3, "sp-even t={t}");
    }
    eprintln!("large q limits: {:?}", start.elapsed());
}

#[test]
fn bounds_hold_on_small_fields() {
    let start = Instant::now();
    let report = bound_suite(&[2, 3, 4, 5, 7, 8, 9], &[1, 2, 3, 4], 1e-9).unwrap();
    for r in report.failures() {
        eprintln!("failed: {:?} q={} t={} {} margin {}", r.kind, r.q, r.t, r.check, r.margin);
    }
    assert!(report.all_passed());
    eprintln!("bound suite: {} rows in {:?}", report.rows.len(), start.elapsed());
}
