//! Rigorous real enclosures. Internally values are dyadic intervals
//! `[lo, hi] / 2^PREC` with outward rounding; the public type carries
//! exact rational endpoints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

/// Working precision in bits.
pub const PREC: usize = 256;

/// `lo <= x <= hi` for the value `x` being enclosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Number of explicit product factors used per component, if any.
    pub truncation: Option<usize>,
    /// False for heuristic estimates (e.g. a last series coefficient).
    pub rigorous: bool,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Enclosure { lo: x.clone(), hi: x, truncation: None, rigorous: true }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True iff `other` lies inside `self`.
    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Certainly below: every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Enclosure) -> bool {
        self.hi <= other.lo
    }

    /// Multiplication by a nonnegative rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        assert!(!c.is_negative());
        Enclosure { lo: &self.lo * c, hi: &self.hi * c, truncation: self.truncation, rigorous: self.rigorous }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// Nonnegative dyadic interval at precision `PREC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    lo: BigInt,
    hi: BigInt,
}

fn scale_up(r: &BigRational) -> BigRational {
    r * BigRational::from_integer(BigInt::one() << PREC)
}

impl Interval {
    pub(crate) fn one() -> Self {
        let u = BigInt::one() << PREC;
        Interval { lo: u.clone(), hi: u }
    }

    /// Outward-rounded enclosure of a nonnegative rational.
    pub(crate) fn from_rational(r: &BigRational) -> Self {
        Self::from_bounds(r, r)
    }

    pub(crate) fn from_bounds(lo: &BigRational, hi: &BigRational) -> Self {
        debug_assert!(!lo.is_negative() && lo <= hi);
        Interval { lo: scale_up(lo).floor().to_integer(), hi: scale_up(hi).ceil().to_integer() }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let lo = (&self.lo * &other.lo) >> PREC;
        let prod = &self.hi * &other.hi;
        let (q, r) = prod.div_rem(&(BigInt::one() << PREC));
        let hi = if r.is_zero() { q } else { q + 1 };
        Interval { lo, hi }
    }

    pub(crate) fn pow(&self, mut k: u128) -> Self {
        let mut acc = Interval::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub(crate) fn to_enclosure(&self, truncation: Option<usize>) -> Enclosure {
        let den = BigInt::one() << PREC;
        Enclosure {
            lo: BigRational::new(self.lo.clone(), den.clone()),
            hi: BigRational::new(self.hi.clone(), den),
            truncation,
            rigorous: true,
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Rigorous enclosure of `exp(x)` for rational `x` with `|x| <= 64`.
pub fn exp_enclosure(x: &BigRational) -> Result<Enclosure> {
    if x.abs() > BigRational::from_integer(64.into()) {
        bail!(Argument, "exp argument out of the supported range");
    }
    // y = x / 2^k with |y| <= 1/2
    let half = BigRational::new(1.into(), 2.into());
    let mut k = 0u32;
    let mut y = x.clone();
    while y.abs() > half {
        y /= BigRational::from_integer(2.into());
        k += 1;
    }
    // Taylor to degree n; |remainder| <= 2 |y|^{n+1}/(n+1)! since e^{|y|} < 2.
    let n = 80u32;
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for i in 0..=n {
        if i > 0 {
            term = term * &y / BigRational::from_integer(i.into());
        }
        sum += &term;
    }
    let rem = BigRational::from_integer(2.into()) * num_traits::pow(y.abs(), (n + 1) as usize)
        / BigRational::from_integer(factorial(n + 1));
    let mut iv = Interval::from_bounds(&(&sum - &rem), &(&sum + &rem));
    for _ in 0..k {
        iv = iv.mul(&iv);
    }
    Ok(iv.to_enclosure(None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_brackets_known_values() {
        let e = exp_enclosure(&r(1, 1)).unwrap();
        assert!(e.lo_f64() <= core::f64::consts::E && core::f64::consts::E <= e.hi_f64());
        assert!(e.width() < r(1, 1_000_000_000_000));
        let s = exp_enclosure(&r(-1, 2)).unwrap();
        let expected = libm::exp(-0.5);
        assert!((s.mid_f64() - expected).abs() < 1e-15);
        let f = exp_enclosure(&r(-8, 3)).unwrap();
        assert!((f.mid_f64() - libm::exp(-8.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn interval_pow_brackets_exact_power() {
        let x = r(3, 4);
        let p = Interval::from_rational(&x).pow(1000).to_enclosure(None);
        let exact = num_traits::pow(x, 1000);
        assert!(p.contains(&exact));
    }
}
