//! Truncated power series in `u` with exact coefficients, and the generating
//! functions for eigenvalue-free style proportions in GL and SL cosets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counts::{count_n, r_value_census};
use crate::error::{bail, Result};
use crate::field::{prime_power, Field, MAX_FIELD_SIZE};
use crate::poly::{conjugate_tilde, monic_irreducibles};
use crate::ring::{Cyclotomic, CyclotomicField, Rationals, Ring};

/// `c_0 + c_1 u + ... + c_N u^N`, exact up to order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

pub type RationalSeries = TruncatedSeries<Rationals>;

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncatedSeries { ring, coeffs }
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        s
    }

    /// Builds from coefficients `c_0..c_N`; an empty list is rejected.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            bail!(Argument, "a truncated series needs at least the constant term");
        }
        Ok(TruncatedSeries { ring, coeffs })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R::Elem {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            bail!(Argument, "series orders differ ({} vs {})", self.order(), other.order());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect();
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        TruncatedSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![self.ring.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !self.ring.is_zero(b) {
                    out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
                }
            }
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: out })
    }

    /// Multiplies by `1/(1-u)`, i.e. takes partial sums.
    pub fn div_one_minus_u(&self) -> Self {
        let mut acc = self.ring.zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc = self.ring.add(&acc, c);
                acc.clone()
            })
            .collect();
        TruncatedSeries { ring: self.ring.clone(), coeffs }
    }

    /// `self^m` for any integer `m`, by the power recurrence
    /// `n a_0 b_n = sum_{k=1}^n ((m+1)k - n) a_k b_{n-k}`.
    /// Needs an invertible constant term unless `m >= 0`.
    pub fn pow(&self, m: i64) -> Result<Self> {
        let n = self.order();
        if m == 0 {
            return Ok(Self::one(self.ring.clone(), n));
        }
        let a0 = &self.coeffs[0];
        if self.ring.is_zero(a0) {
            if m < 0 {
                bail!(Domain, "negative power of a series with zero constant term");
            }
            return self.pow_by_squaring(m as u64);
        }
        let a0_inv = self.ring.inv(a0)?;
        let mut b = Vec::with_capacity(n + 1);
        b.push(self.pow_elem(a0, m)?);
        let m1 = BigInt::from(m) + 1;
        for k in 1..=n {
            let mut acc = self.ring.zero();
            for i in 1..=k {
                let ai = &self.coeffs[i];
                if self.ring.is_zero(ai) {
                    continue;
                }
                let w = BigRational::from_integer(&m1 * BigInt::from(i) - BigInt::from(k));
                if w.is_zero() {
                    continue;
                }
                let term = self.ring.mul(ai, &b[k - i]);
                acc = self.ring.add(&acc, &self.ring.mul(&term, &self.ring.from_rational(&w)));
            }
            let scale = self.ring.from_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
            b.push(self.ring.mul(&self.ring.mul(&acc, &scale), &a0_inv));
        }
        Ok(TruncatedSeries { ring: self.ring.clone(), coeffs: b })
    }

    fn pow_elem(&self, a: &R::Elem, m: i64) -> Result<R::Elem> {
        let mut base = if m < 0 { self.ring.inv(a)? } else { a.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.ring.mul(&acc, &base);
            }
            base = self.ring.mul(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    fn pow_by_squaring(&self, mut k: u64) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone(), self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn recip(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// True iff the series is `1 + O(u^{N+1})`.
    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.ring.one() && self.coeffs[1..].iter().all(|c| self.ring.is_zero(c))
    }
}

fn q_pow_neg(q: u64, e: u64) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(q), e as usize))
}

/// `prod_{i>=1} (1 - w u^j q^{-ij})` to order `N`, via Euler's identity
/// `prod_{i>=1}(1 - x a^i) = sum_k (-1)^k a^{k(k+1)/2} x^k / prod_{r<=k}(1 - a^r)`.
fn euler_base<R: Ring>(ring: &R, q: u64, j: usize, w: &R::Elem, order: usize) -> TruncatedSeries<R> {
    let mut s = TruncatedSeries::zero(ring.clone(), order);
    let a = q_pow_neg(q, j as u64);
    // term_k = (-1)^k a^{k(k+1)/2} / prod_{r<=k} (1 - a^r), as a rational
    let mut term = BigRational::one();
    let mut a_k = BigRational::one();
    let mut w_k = ring.one();
    for k in 0..=order / j {
        if k > 0 {
            a_k = &a_k * &a; // a^k
            term = -term * &a_k / (BigRational::one() - &a_k);
            w_k = ring.mul(&w_k, w);
        }
        s.coeffs[k * j] = ring.mul(&w_k, &ring.from_rational(&term));
    }
    s
}

/// `prod_{i>=1} (1 - u^j q^{-ij})^m` to order `N`, exactly.
pub fn euler_factor_series(q: u64, j: usize, m: i64, order: usize) -> Result<RationalSeries> {
    if q < 2 {
        bail!(Argument, "q must be at least 2");
    }
    if j < 1 {
        bail!(Argument, "degree j must be at least 1");
    }
    euler_base(&Rationals, q, j, &BigRational::one(), order).pow(m)
}

/// Direct truncated product `prod_{i=1}^{I} (1 - u^j q^{-ij})^m`, an
/// independent oracle for `euler_factor_series`.
pub fn euler_factor_truncated_product(q: u64, j: usize, m: i64, factors: usize, order: usize) -> Result<RationalSeries> {
    let mut acc = RationalSeries::one(Rationals, order);
    for i in 1..=factors {
        let mut f = RationalSeries::one(Rationals, order);
        if j <= order {
            f.coeffs[j] = -q_pow_neg(q, (i * j) as u64);
        }
        acc = acc.mul(&f)?;
    }
    acc.pow(m)
}

fn check_prime_power(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        bail!(Argument, "q = {q} is not a prime power");
    }
    Ok(())
}

/// `(1/(1-u)) prod_{j<=t} E_j^{N(q;j)}`: the coefficient of `u^n` is the
/// proportion of `GL_n(q)` whose characteristic polynomial has no
/// irreducible factor of degree at most `t`.
pub fn gl_no_small_factor_series(q: u64, t: usize, order: usize) -> Result<RationalSeries> {
    check_prime_power(q)?;
    if t < 1 {
        bail!(Argument, "t must be at least 1");
    }
    let mut acc = RationalSeries::one(Rationals, order);
    for j in 1..=t.min(order.max(1)) {
        let n = count_n(q, j)?;
        let n = i64::try_from(n).map_err(|_| crate::Error::Argument("count too large".into()))?;
        acc = acc.mul(&euler_factor_series(q, j, n, order)?)?;
    }
    Ok(acc.div_one_minus_u())
}

fn field_for(q: u64) -> Result<Field> {
    check_prime_power(q)?;
    if q > MAX_FIELD_SIZE as u64 {
        bail!(Argument, "q = {q} exceeds the field-table cap {MAX_FIELD_SIZE}");
    }
    Field::new(q as u32)
}

/// Series whose `u^n` coefficient (`n >= 1`) is the proportion, relative to
/// `|SL_n(q)|`, of elements of the determinant coset `det = zeta^label` with
/// no characteristic-polynomial factor of degree at most `t`. Coefficient 0
/// is 1 for the trivial coset and 0 otherwise.
///
/// Computed as `sum_{e} zeta_m^{-e label} K_{zeta_m^e}` over Q(zeta_{q-1}),
/// then checked to be rational.
pub fn sl_coset_series(q: u64, t: usize, label: u64, order: usize) -> Result<RationalSeries> {
    let field = field_for(q)?;
    if t < 1 {
        bail!(Argument, "t must be at least 1");
    }
    let m = (q - 1) as usize;
    if label >= m as u64 {
        bail!(Argument, "coset label {label} out of range Z/{m}");
    }
    let k = CyclotomicField::new(m)?;
    let degrees = t.min(order.max(1));
    let census: Vec<Vec<u64>> = (1..=degrees).map(|j| r_value_census(&field, j)).collect::<Result<_>>()?;

    let mut total = TruncatedSeries::zero(k.clone(), order);
    for e in 0..m {
        // K_omega = prod_j prod_rho E(j, omega^rho)^{c_{j,rho}}, grouped by the power of zeta
        let mut kw = TruncatedSeries::one(k.clone(), order);
        for (jm1, row) in census.iter().enumerate() {
            let mut by_power = vec![0i64; m];
            for (rho, &c) in row.iter().enumerate() {
                by_power[(e * rho) % m] += c as i64;
            }
            for (pw, &c) in by_power.iter().enumerate() {
                if c != 0 {
                    let w = k.root_power(pw as i64);
                    kw = kw.mul(&euler_base(&k, q, jm1 + 1, &w, order).pow(c)?)?;
                }
            }
        }
        if e == 0 {
            kw = kw.div_one_minus_u();
        }
        let weight = k.root_power(-((e as i64) * label as i64));
        total = total.add(&kw.scale(&weight))?;
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for (n, c) in total.coeffs.iter().enumerate() {
        match k.as_rational(c) {
            Some(r) => coeffs.push(r),
            None => bail!(Internal, "coset series coefficient {n} is not rational"),
        }
    }
    coeffs[0] = if label == 0 { BigRational::one() } else { BigRational::zero() };
    RationalSeries::from_coeffs(Rationals, coeffs)
}

/// Outcome of a product-equals-one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub q: u64,
    pub degree_bound: usize,
    pub roots_checked: usize,
    /// `(e, n)`: root exponent and the first nonzero coefficient beyond `u^0`.
    pub failures: Vec<(usize, usize)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn first_nonunit(s: &TruncatedSeries<CyclotomicField>) -> Option<usize> {
    let r = s.ring();
    if s.coeff(0) != &r.one() {
        return Some(0);
    }
    (1..=s.order()).find(|&n| !r.is_zero(s.coeff(n)))
}

/// For every `omega != 1` in the `(q-1)`-th roots of unity, checks that
/// `prod_{phi != z, deg phi <= D} (1 - omega^{r(phi)} u^{deg phi}) = 1 + O(u^{D+1})`.
pub fn linear_identity_check(q: u64, degree_bound: usize) -> Result<IdentityCheck> {
    let field = field_for(q)?;
    let m = (q - 1) as usize;
    let k = CyclotomicField::new(m)?;
    let census: Vec<Vec<u64>> = (1..=degree_bound).map(|j| r_value_census(&field, j)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for e in 1..m {
        let mut acc = TruncatedSeries::one(k.clone(), degree_bound);
        for (jm1, row) in census.iter().enumerate() {
            for (rho, &c) in row.iter().enumerate() {
                if c > 0 {
                    let f = linear_factor(&k, k.root_power((e * rho) as i64), jm1 + 1, degree_bound);
                    acc = acc.mul(&f.pow(c as i64)?)?;
                }
            }
        }
        if let Some(n) = first_nonunit(&acc) {
            failures.push((e, n));
        }
    }
    Ok(IdentityCheck { q, degree_bound, roots_checked: m.saturating_sub(1), failures })
}

fn linear_factor(k: &CyclotomicField, w: Cyclotomic, deg: usize, order: usize) -> TruncatedSeries<CyclotomicField> {
    let mut f = TruncatedSeries::one(k.clone(), order);
    if deg <= order {
        f.coeffs[deg] = k.neg(&w);
    }
    f
}

/// Unitary analogue over GF(q^2): for `omega != 1` a `(q+1)`-th root of
/// unity, self-conjugate irreducibles contribute `1 - omega^{s} u^{deg}` and
/// conjugate pairs `1 - omega^{s} u^{2 deg}`, where `zeta_U^s` is
/// `(-1)^deg phi(0)` or `phi(0) phi~(0)` respectively.
pub fn unitary_identity_check(q: u64, degree_bound: usize) -> Result<IdentityCheck> {
    check_prime_power(q)?;
    let field = field_for(q * q)?;
    let m = (q + 1) as usize;
    let k = CyclotomicField::new(m)?;
    let qq1 = q - 1;
    let s_value = |v| -> Result<usize> {
        let l = field.discrete_log(v)? as u64;
        if !l.is_multiple_of(qq1) {
            bail!(Internal, "norm-one value expected in the unitary identity");
        }
        Ok(((l / qq1) % (q + 1)) as usize)
    };
    // (degree in u, s) pairs with multiplicity
    let mut factors: Vec<(usize, usize)> = Vec::new();
    for d in 1..=degree_bound {
        for f in monic_irreducibles(&field, d) {
            if f.constant_term().is_zero() {
                continue;
            }
            let ft = conjugate_tilde(&f, &field)?;
            if ft == f {
                let c = f.constant_term();
                let v = if d % 2 == 1 { field.neg(c) } else { c };
                factors.push((d, s_value(v)?));
            } else if 2 * d <= degree_bound && f.coeffs() < ft.coeffs() {
                let v = field.mul(f.constant_term(), ft.constant_term());
                factors.push((2 * d, s_value(v)?));
            }
        }
    }
    let mut failures = Vec::new();
    for e in 1..m {
        let mut acc = TruncatedSeries::one(k.clone(), degree_bound);
        for &(deg, s) in &factors {
            acc = acc.mul(&linear_factor(&k, k.root_power((e * s) as i64), deg, degree_bound))?;
        }
        if let Some(n) = first_nonunit(&acc) {
            failures.push((e, n));
        }
    }
    Ok(IdentityCheck { q, degree_bound, roots_checked: m - 1, failures })
}
