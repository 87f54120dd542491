//! Limiting proportions as rigorous infinite-product enclosures, their
//! `q -> infinity` closed forms, and the bound suite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::counts::{count, CountFamily, CountSource};
use crate::enclosure::{exp_enclosure, Enclosure, Interval};
use crate::error::{bail, Result};
use crate::field::prime_power;
use crate::ring::Rationals;
use crate::series::TruncatedSeries;

/// Default enclosure width.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LimitKind {
    /// Linear groups, all determinant cosets.
    GlProdu,
    /// Unitary groups, all cosets.
    SuProductu,
    /// Symplectic groups over odd `q`.
    SpOdd,
    /// Symplectic groups over even `q`.
    SpEven,
    /// Orthogonal groups: half the matching symplectic limit.
    OHalf,
}

impl LimitKind {
    pub const ALL: [LimitKind; 5] = [Self::GlProdu, Self::SuProductu, Self::SpOdd, Self::SpEven, Self::OHalf];

    pub fn name(self) -> &'static str {
        match self {
            Self::GlProdu => "gl",
            Self::SuProductu => "su",
            Self::SpOdd => "sp-odd",
            Self::SpEven => "sp-even",
            Self::OHalf => "o-half",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LimitFamily {
    pub kind: LimitKind,
    pub q: u64,
    pub t: usize,
}

impl LimitFamily {
    /// The GL product only involves `N(q;j)`, which is a polynomial in `q`,
    /// so it is also accepted at integers `q >= 2` that are not prime powers.
    pub fn new(kind: LimitKind, q: u64, t: usize) -> Result<Self> {
        if kind == LimitKind::GlProdu {
            if q < 2 {
                bail!(Argument, "q must be at least 2");
            }
        } else if prime_power(q).is_none() {
            bail!(Argument, "q = {q} is not a prime power");
        }
        if t < 1 {
            bail!(Argument, "t must be at least 1");
        }
        match kind {
            LimitKind::SpOdd if q.is_multiple_of(2) => bail!(Argument, "sp-odd needs odd q, got {q}"),
            LimitKind::SpEven if q % 2 == 1 => bail!(Argument, "sp-even needs even q, got {q}"),
            _ => {}
        }
        Ok(LimitFamily { kind, q, t })
    }

    /// The symplectic family matching the parity of `q`.
    pub fn symplectic_for(q: u64, t: usize) -> Result<Self> {
        Self::new(if q % 2 == 1 { LimitKind::SpOdd } else { LimitKind::SpEven }, q, t)
    }
}

/// One infinite product `prod_{i>=1} (1 + s_i q^{-(a i + b)})^mult`, with
/// sign `s_i` chosen by `sign`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Component {
    mult: u128,
    a: u64,
    b: i64,
    sign: Sign,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Sign {
    Minus,
    /// `(-1)^i`
    Alternating,
    /// `(-1)^{a i}`, i.e. the sign of `(-q)^{-a i}`
    NegBase,
}

impl Component {
    fn exponent(&self, i: u64) -> u64 {
        (self.a as i64 * i as i64 + self.b) as u64
    }

    fn positive(&self, i: u64) -> bool {
        match self.sign {
            Sign::Minus => false,
            Sign::Alternating => i.is_multiple_of(2),
            Sign::NegBase => (self.a * i).is_multiple_of(2),
        }
    }
}

fn inv_pow(q: u64, e: u64) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(q), e as usize))
}

/// Memo of polynomial counts, shared across evaluations that reuse `q`.
#[derive(Clone, Debug, Default)]
pub struct CountCache(BTreeMap<(CountFamily, u64, usize), u128>);

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, family: CountFamily, q: u64, j: usize) -> Result<u128> {
        if let Some(&v) = self.0.get(&(family, q, j)) {
            return Ok(v);
        }
        let v = count(family, q, j, CountSource::Auto)?;
        self.0.insert((family, q, j), v);
        Ok(v)
    }
}

fn components(fam: &LimitFamily, cache: &mut CountCache) -> Result<Vec<Component>> {
    let (q, t) = (fam.q, fam.t);
    let mut c = |f, j| cache.get(f, q, j);
    let mut out = Vec::new();
    match fam.kind {
        LimitKind::GlProdu => {
            for j in 1..=t {
                out.push(Component { mult: c(CountFamily::N, j)?, a: j as u64, b: 0, sign: Sign::Minus });
            }
        }
        LimitKind::SuProductu => {
            for j in 1..=t {
                let jj = j as u64;
                out.push(Component { mult: c(CountFamily::Ntilde, j)?, a: jj, b: 0, sign: Sign::NegBase });
                out.push(Component { mult: c(CountFamily::Mtilde, j)?, a: 2 * jj, b: 0, sign: Sign::Minus });
            }
        }
        LimitKind::SpOdd | LimitKind::SpEven => {
            let lead = if fam.kind == LimitKind::SpOdd { 2 } else { 1 };
            out.push(Component { mult: lead, a: 2, b: -1, sign: Sign::Minus });
            for j in 1..=t / 2 {
                out.push(Component { mult: c(CountFamily::Nstar, 2 * j)?, a: j as u64, b: 0, sign: Sign::Alternating });
            }
            for j in 1..=t {
                out.push(Component { mult: c(CountFamily::Mstar, j)?, a: j as u64, b: 0, sign: Sign::Minus });
            }
        }
        LimitKind::OHalf => unreachable!("handled by the caller"),
    }
    out.retain(|c| c.mult > 0);
    Ok(out)
}

/// `prod_{i<=I}` factor enclosure times the tail bound
/// `|log prod_{i>I}| <= T = 2 m q^{-(a(I+1)+b)} / (1 - q^{-a})`, applied as `[1-T, 1/(1-T)]`.
fn component_enclosure(q: u64, c: &Component, truncation: usize) -> Result<Interval> {
    let one = BigRational::one();
    let mut acc = Interval::one();
    for i in 1..=truncation as u64 {
        let x = inv_pow(q, c.exponent(i));
        let f = if c.positive(i) { &one + &x } else { &one - &x };
        acc = acc.mul(&Interval::from_rational(&f));
    }
    acc = acc.pow(c.mult);
    let next = c.exponent(truncation as u64 + 1);
    let tail = BigRational::from_integer(BigInt::from(2u8) * BigInt::from(c.mult)) * inv_pow(q, next)
        / (&one - inv_pow(q, c.a));
    if tail >= one {
        bail!(Internal, "tail bound too weak at truncation {truncation}");
    }
    let lo = &one - &tail;
    let hi = one / lo.clone();
    Ok(acc.mul(&Interval::from_bounds(&lo, &hi)))
}

/// Enclosure of the limit at an explicit truncation `I` (factors `i <= I`).
pub fn limit_value_at_truncation(fam: &LimitFamily, truncation: usize) -> Result<Enclosure> {
    if truncation < 1 {
        bail!(Argument, "truncation must be at least 1");
    }
    let (parts, halve) = resolve(fam, &mut CountCache::new())?;
    evaluate(fam.q, &parts, truncation, halve)
}

/// Components of the product, and whether the result is halved.
fn resolve(fam: &LimitFamily, cache: &mut CountCache) -> Result<(Vec<Component>, bool)> {
    if fam.kind == LimitKind::OHalf {
        let sp = LimitFamily::symplectic_for(fam.q, fam.t)?;
        return Ok((components(&sp, cache)?, true));
    }
    Ok((components(fam, cache)?, false))
}

fn evaluate(q: u64, parts: &[Component], truncation: usize, halve: bool) -> Result<Enclosure> {
    let mut acc = Interval::one();
    for c in parts {
        acc = acc.mul(&component_enclosure(q, c, truncation)?);
    }
    let e = acc.to_enclosure(Some(truncation));
    Ok(if halve { e.scale(&BigRational::new(1.into(), 2.into())) } else { e })
}

fn tolerance_rational(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0) || !tol.is_finite() {
        bail!(Argument, "tolerance must be positive and finite");
    }
    BigRational::from_float(tol).ok_or_else(|| crate::Error::Argument("tolerance not representable".into()))
}

/// Enclosure of width at most `tol` around the limiting proportion.
pub fn limit_value(fam: &LimitFamily, tol: f64) -> Result<Enclosure> {
    limit_value_cached(fam, tol, &mut CountCache::new())
}

/// `limit_value` reusing counts from `cache`.
pub fn limit_value_cached(fam: &LimitFamily, tol: f64, cache: &mut CountCache) -> Result<Enclosure> {
    let tol_r = tolerance_rational(tol)?;
    let (parts, halve) = resolve(fam, cache)?;
    let mut truncation = 4;
    loop {
        let e = evaluate(fam.q, &parts, truncation, halve)?;
        if e.width() <= tol_r {
            return Ok(e);
        }
        if truncation >= 4096 {
            bail!(Resource, "enclosure did not reach width {tol} by truncation {truncation}");
        }
        truncation *= 2;
    }
}

/// Last coefficient of a proportion series, with `|c_N - c_{N-1}|` as a
/// heuristic radius. Not rigorous.
pub fn limit_from_series(s: &TruncatedSeries<Rationals>) -> Result<Enclosure> {
    let n = s.order();
    if n < 2 {
        bail!(Argument, "need a series of order at least 2");
    }
    let last = s.coeff(n).clone();
    let gap = num_traits::Signed::abs(&(&last - s.coeff(n - 1)));
    Ok(Enclosure { lo: &last - &gap, hi: &last + &gap, truncation: Some(n), rigorous: false })
}

/// Which closed form to use for the `q -> infinity` limit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AsymptoticFamily {
    Gl,
    Sp,
    Su,
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|j| 1.0 / j as f64).sum()
}

/// `lim_{q -> inf}` of the limiting proportion:
/// `exp(-H_t)` (GL), `exp(-(H_{t/2} + H_t)/2)` (Sp),
/// `exp(-(sum_{odd j<=t} 1/j + H_t/2))` (SU).
pub fn q_infinity_limit(family: AsymptoticFamily, t: usize) -> f64 {
    let x = match family {
        AsymptoticFamily::Gl => harmonic(t),
        AsymptoticFamily::Sp => (harmonic(t / 2) + harmonic(t)) / 2.0,
        AsymptoticFamily::Su => (1..=t).filter(|j| j % 2 == 1).map(|j| 1.0 / j as f64).sum::<f64>() + harmonic(t) / 2.0,
    };
    libm::exp(-x)
}

/// One checked inequality in the bound suite.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub kind: LimitKind,
    pub q: u64,
    pub t: usize,
    pub check: String,
    pub value: Enclosure,
    pub bound: Enclosure,
    /// Signed distance to the bound in the direction of the inequality
    /// (positive means satisfied), evaluated at the enclosure endpoints.
    pub margin: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

fn margin(lower: &Enclosure, upper: &Enclosure) -> f64 {
    (&upper.lo - &lower.hi).to_f64().unwrap_or(f64::NAN)
}

/// Records `value <= bound` (or `>=` when `value_below` is false); strict
/// checks need a positive gap between the enclosures.
fn push_le(
    rows: &mut Vec<BoundRow>,
    fam: &LimitFamily,
    check: String,
    value: &Enclosure,
    bound: &Enclosure,
    value_below: bool,
    strict: bool,
) {
    let (lower, upper) = if value_below { (value, bound) } else { (bound, value) };
    rows.push(BoundRow {
        kind: fam.kind,
        q: fam.q,
        t: fam.t,
        check,
        value: value.clone(),
        bound: bound.clone(),
        margin: margin(lower, upper),
        passed: if strict { lower.hi < upper.lo } else { lower.certainly_le(upper) },
    });
}

/// Bounds on the limiting proportions:
/// every family limit lies strictly in `(0, 1)`, the GL limit is at most
/// `exp(-1/2)`, and each GL per-degree factor `prod_i (1 - q^{-ij})^{N(q;j)}`
/// together with `prod_i (1 - q^{-i})^q` is at least `exp(-8/3)`.
pub fn bound_suite(qs: &[u64], ts: &[usize], tol: f64) -> Result<BoundReport> {
    let zero = Enclosure::exact(BigRational::zero());
    let one = Enclosure::exact(BigRational::one());
    let inv_sqrt_e = exp_enclosure(&BigRational::new((-1).into(), 2.into()))?;
    let floor = exp_enclosure(&BigRational::new((-8).into(), 3.into()))?;
    let mut rows = Vec::new();
    let mut cache = CountCache::new();
    for &q in qs {
        for &t in ts {
            for kind in LimitKind::ALL {
                let fam = match LimitFamily::new(kind, q, t) {
                    Ok(f) => f,
                    Err(_) => continue, // parity mismatch
                };
                let v = limit_value_cached(&fam, tol, &mut cache)?;
                push_le(&mut rows, &fam, "limit > 0".into(), &v, &zero, false, true);
                push_le(&mut rows, &fam, "limit < 1".into(), &v, &one, true, true);
                if kind == LimitKind::GlProdu {
                    push_le(&mut rows, &fam, "limit <= exp(-1/2)".into(), &v, &inv_sqrt_e, true, false);
                    for j in 1..=t {
                        let part = gl_degree_factor(q, j, None, tol)?;
                        push_le(&mut rows, &fam, format!("degree-{j} factor >= exp(-8/3)"), &part, &floor, false, false);
                    }
                }
            }
            let per = gl_degree_factor(q, 1, Some(q as u128), tol)?;
            let fam = LimitFamily { kind: LimitKind::GlProdu, q, t };
            push_le(&mut rows, &fam, "prod_i (1-q^-i)^q >= exp(-8/3)".into(), &per, &floor, false, false);
        }
    }
    Ok(BoundReport { rows })
}

/// `prod_i (1 - q^{-ij})^m` with `m = N(q;j)` unless overridden.
pub fn gl_degree_factor(q: u64, j: usize, mult: Option<u128>, tol: f64) -> Result<Enclosure> {
    let tol_r = tolerance_rational(tol)?;
    let mult = match mult {
        Some(m) => m,
        None => count(CountFamily::N, q, j, CountSource::Auto)?,
    };
    let c = Component { mult, a: j as u64, b: 0, sign: Sign::Minus };
    let mut truncation = 4;
    loop {
        let e = component_enclosure(q, &c, truncation)?.to_enclosure(Some(truncation));
        if e.width() <= tol_r || truncation >= 4096 {
            return Ok(e);
        }
        truncation *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_q2_t1_value() {
        let fam = LimitFamily::new(LimitKind::GlProdu, 2, 1).unwrap();
        let e = limit_value(&fam, 1e-6).unwrap();
        assert!(e.lo_f64() < 0.28878810 && 0.28878809 < e.hi_f64());
        assert!(e.width() <= tolerance_rational(1e-6).unwrap());
    }

    #[test]
    fn parity_is_enforced() {
        assert!(LimitFamily::new(LimitKind::SpOdd, 2, 1).is_err());
        assert!(LimitFamily::new(LimitKind::SpEven, 3, 1).is_err());
        assert!(LimitFamily::new(LimitKind::SuProductu, 6, 1).is_err());
        assert!(LimitFamily::new(LimitKind::GlProdu, 1, 1).is_err());
    }

    #[test]
    fn orthogonal_is_half_symplectic() {
        let o = limit_value_at_truncation(&LimitFamily::new(LimitKind::OHalf, 3, 2).unwrap(), 30).unwrap();
        let s = limit_value_at_truncation(&LimitFamily::new(LimitKind::SpOdd, 3, 2).unwrap(), 30).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(o.lo, &s.lo * &half);
        assert_eq!(o.hi, &s.hi * &half);
    }

    #[test]
    fn refinement_stays_inside() {
        let fam = LimitFamily::new(LimitKind::SuProductu, 3, 3).unwrap();
        let mut prev = limit_value_at_truncation(&fam, 2).unwrap();
        for i in [3, 5, 8, 13, 21] {
            let e = limit_value_at_truncation(&fam, i).unwrap();
            assert!(prev.contains_enclosure(&e) || (e.lo <= prev.hi && prev.lo <= e.hi));
            prev = e;
        }
    }

    #[test]
    fn closed_forms() {
        assert!((q_infinity_limit(AsymptoticFamily::Gl, 1) - 0.36787944).abs() < 1e-8);
        assert!((q_infinity_limit(AsymptoticFamily::Gl, 2) - libm::exp(-1.5)).abs() < 1e-15);
        assert!((q_infinity_limit(AsymptoticFamily::Sp, 1) - libm::exp(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn constant_series_limit_is_exact() {
        let s = TruncatedSeries::from_coeffs(Rationals, alloc::vec![BigRational::one(); 5]).unwrap();
        let e = limit_from_series(&s).unwrap();
        assert_eq!(e.lo, e.hi);
        assert!(!e.rigorous);
    }
}
