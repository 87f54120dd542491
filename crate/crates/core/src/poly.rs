//! Dense univariate polynomials over a [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};

/// Polynomial with ascending coefficients; the zero polynomial has no
/// coefficients and the leading coefficient is never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DensePoly {
    coeffs: Vec<FieldElement>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// Build from coefficient indices (ascending), e.g. `[1, 1, 1]` is `z^2 + z + 1`.
    pub fn from_indices(field: &Field, idx: &[u32]) -> Self {
        Self::new(idx.iter().map(|&i| field.element(i)).collect())
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![FieldElement::ONE] }
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        DensePoly { coeffs: vec![FieldElement::ZERO, FieldElement::ONE] }
    }

    /// `z - a`.
    pub fn linear(field: &Field, a: FieldElement) -> Self {
        DensePoly { coeffs: vec![field.neg(a), FieldElement::ONE] }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0)
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: FieldElement, field: &Field) -> Self {
        Self::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; dividing by zero is a domain error.
    pub fn div_rem(&self, divisor: &Self, field: &Field) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            bail!(Domain, "polynomial division by zero");
        };
        let lead_inv = field.inv_nonzero(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(rem[k + i], field.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self, field: &Field) -> Result<Self> {
        self.div_rem(divisor, field).map(|(_, r)| r)
    }

    pub fn make_monic(&self, field: &Field) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(field.inv_nonzero(self.leading()), field)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self, field: &Field) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &Self, field: &Field) -> Result<Self> {
        let mut base = self.rem(m, field)?;
        let mut acc = Self::one().rem(m, field)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, field).rem(m, field)?;
            }
            base = base.mul(&base, field).rem(m, field)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Apply a field map to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(FieldElement) -> FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `z^n f(1/z)` for `n = deg f`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `r(f) = log((-1)^deg f * f(0))` in Z/(q-1).
    pub fn r_value(&self, field: &Field) -> Result<u32> {
        let Some(d) = self.degree() else {
            bail!(Domain, "r(.) of the zero polynomial");
        };
        let c = self.constant_term();
        let signed = if d % 2 == 1 { field.neg(c) } else { c };
        field.discrete_log(signed)
    }
}

/// True iff the monic `f` has an irreducible factor of degree at most `t`
/// (equivalently, a divisor of some degree `1..=t`). The factor `z` counts.
///
/// Distinct-degree sieve: `gcd(f, z^{q^d} - z)` is nonconstant for some `d <= t`.
pub fn has_small_degree_factor(f: &DensePoly, t: usize, field: &Field) -> Result<bool> {
    if t < 1 {
        bail!(Argument, "factor degree bound t must be at least 1");
    }
    let Some(n) = f.degree() else {
        bail!(Argument, "zero polynomial has no factorization");
    };
    if n == 0 {
        bail!(Argument, "constant polynomial has no factorization");
    }
    if !f.is_monic() {
        bail!(Argument, "polynomial must be monic");
    }
    if f.constant_term().is_zero() {
        return Ok(true);
    }
    let q = field.size() as u64;
    let z = DensePoly::z();
    let mut h = z.rem(f, field)?;
    for _ in 1..=t.min(n) {
        h = h.pow_mod(q, f, field)?;
        let g = f.gcd(&h.sub(&z, field), field);
        if g.degree().unwrap_or(0) >= 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Irreducibility of a monic polynomial of degree at least one.
pub fn is_irreducible(f: &DensePoly, field: &Field) -> Result<bool> {
    match f.degree() {
        None | Some(0) => bail!(Argument, "irreducibility needs degree at least 1"),
        Some(1) => Ok(true),
        Some(n) => has_small_degree_factor(f, n / 2, field).map(|b| !b),
    }
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-q
/// digits of `idx`.
pub fn monic_from_index(field: &Field, d: usize, mut idx: u64) -> DensePoly {
    let q = field.size() as u64;
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(FieldElement((idx % q) as u8));
        idx /= q;
    }
    c.push(FieldElement::ONE);
    DensePoly { coeffs: c }
}

/// All monic irreducible polynomials of degree `d` over `field`, including
/// `z` when `d = 1`, in index order.
pub fn monic_irreducibles(field: &Field, d: usize) -> Vec<DensePoly> {
    let q = field.size() as u64;
    let total = q.pow(d as u32);
    (0..total)
        .map(|i| monic_from_index(field, d, i))
        .filter(|f| is_irreducible(f, field).unwrap_or(false))
        .collect()
}

/// `f*(z) = f(0)^{-1} z^n f(1/z)`, the conjugate attached to symplectic and
/// orthogonal groups.
pub fn conjugate_star(f: &DensePoly, field: &Field) -> Result<DensePoly> {
    check_conjugable(f)?;
    let c = field.inv(f.constant_term())?;
    Ok(f.reversed().scale(c, field))
}

/// `f~(z) = f(0)^{-s} z^n f^s(1/z)` over GF(q0^2), where `s` is `x -> x^{q0}`.
/// This is the conjugate attached to unitary groups.
pub fn conjugate_tilde(f: &DensePoly, field: &Field) -> Result<DensePoly> {
    check_conjugable(f)?;
    let q0 = unitary_base(field)?;
    let sigma = |x: FieldElement| field.pow(x, q0 as u64);
    let c = field.inv(sigma(f.constant_term()))?;
    Ok(f.map_coeffs(sigma).reversed().scale(c, field))
}

fn check_conjugable(f: &DensePoly) -> Result<()> {
    if f.degree().is_none() || !f.is_monic() {
        bail!(Argument, "conjugation needs a monic polynomial");
    }
    if f.constant_term().is_zero() {
        bail!(Domain, "conjugation needs a nonzero constant term");
    }
    Ok(())
}

/// `q0` with `field.size() == q0^2`.
pub fn unitary_base(field: &Field) -> Result<u32> {
    if !field.degree().is_multiple_of(2) {
        bail!(Argument, "GF({}) is not a quadratic extension", field.size());
    }
    Ok(field.characteristic().pow(field.degree() / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(f: &Field, idx: &[u32]) -> DensePoly {
        DensePoly::from_indices(f, idx)
    }

    /// Full factorization by trial division with every monic irreducible of
    /// degree up to `t`; independent of the gcd sieve.
    fn trial_division_small_factor(f: &DensePoly, t: usize, field: &Field) -> bool {
        (1..=t).any(|d| {
            monic_irreducibles(field, d)
                .iter()
                .any(|g| f.rem(g, field).unwrap().is_zero())
        })
    }

    #[test]
    fn small_factor_examples() {
        let f2 = Field::new(2).unwrap();
        let irr2 = p(&f2, &[1, 1, 1]);
        assert!(!has_small_degree_factor(&irr2, 1, &f2).unwrap());
        assert!(has_small_degree_factor(&irr2, 2, &f2).unwrap());
        let prod = irr2.mul(&p(&f2, &[1, 1, 0, 1]), &f2);
        assert!(has_small_degree_factor(&prod, 2, &f2).unwrap());
        assert!(!has_small_degree_factor(&prod, 1, &f2).unwrap());
        assert!(has_small_degree_factor(&DensePoly::z(), 1, &f2).unwrap());
        assert!(has_small_degree_factor(&irr2, 0, &f2).is_err());
    }

    #[test]
    fn conjugates() {
        let f3 = Field::new(3).unwrap();
        let zm1 = p(&f3, &[2, 1]);
        assert_eq!(conjugate_star(&zm1, &f3).unwrap(), zm1);
        let f5 = Field::new(5).unwrap();
        assert_eq!(conjugate_star(&p(&f5, &[3, 1]), &f5).unwrap(), p(&f5, &[2, 1]));
        // Over GF(4) = GF(2^2): (z - a)~ = z - a^{-2}; zeta has norm 1.
        let f4 = Field::new(4).unwrap();
        let zeta = f4.generator();
        let lin = DensePoly::linear(&f4, zeta);
        assert_eq!(conjugate_tilde(&lin, &f4).unwrap(), lin);
        assert!(conjugate_star(&DensePoly::z(), &f5).is_err());
        assert!(conjugate_tilde(&p(&f3, &[1, 1]), &f3).is_err());
    }

    #[test]
    fn r_value_of_linear() {
        let f5 = Field::new(5).unwrap();
        // r(z - 4) = log(4) = 2 with generator 2.
        assert_eq!(p(&f5, &[1, 1]).r_value(&f5).unwrap(), 2);
    }

    #[test]
    fn divisor_sum_identity() {
        // sum over d | J of d * (#monic irreducibles of degree d) = q^J
        for q in [2u32, 3, 4, 5] {
            let f = Field::new(q).unwrap();
            let counts: Vec<u64> = (1..=6).map(|d| monic_irreducibles(&f, d).len() as u64).collect();
            for big_j in 1..=6usize {
                if (q as u64).pow(big_j as u32) > 20_000 {
                    continue;
                }
                let s: u64 = (1..=big_j).filter(|d| big_j % d == 0).map(|d| d as u64 * counts[d - 1]).sum();
                assert_eq!(s, (q as u64).pow(big_j as u32), "q={q} J={big_j}");
            }
        }
    }

    #[test]
    fn conjugations_are_involutions() {
        for q in [3u32, 5, 7] {
            let f = Field::new(q).unwrap();
            for d in 1..=3 {
                for g in monic_irreducibles(&f, d).iter().filter(|g| !g.constant_term().is_zero()) {
                    let s = conjugate_star(g, &f).unwrap();
                    assert!(s.is_monic() && s.degree() == Some(d));
                    assert_eq!(conjugate_star(&s, &f).unwrap(), *g);
                }
            }
        }
        for q in [4u32, 9, 16] {
            let f = Field::new(q).unwrap();
            for d in 1..=2 {
                for g in monic_irreducibles(&f, d).iter().filter(|g| !g.constant_term().is_zero()) {
                    let s = conjugate_tilde(g, &f).unwrap();
                    assert!(s.is_monic() && s.degree() == Some(d));
                    assert_eq!(conjugate_tilde(&s, &f).unwrap(), *g);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn sieve_matches_trial_division(
            q in prop::sample::select(vec![2u32, 3, 4, 5]),
            deg in 1usize..=12,
            t in 1usize..=4,
            seed in any::<u64>(),
        ) {
            let f = Field::new(q).unwrap();
            let mut s = seed;
            let mut coeffs = Vec::new();
            for _ in 0..deg {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs.push(FieldElement(((s >> 33) % q as u64) as u8));
            }
            coeffs.push(FieldElement::ONE);
            let poly = DensePoly::new(coeffs);
            prop_assert_eq!(
                has_small_degree_factor(&poly, t, &f).unwrap(),
                trial_division_small_factor(&poly, t, &f)
            );
        }
    }
}
