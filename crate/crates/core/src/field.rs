//! Table-driven arithmetic in small finite fields GF(p^e).
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! of its coefficient vector in the polynomial basis `1, z, ..., z^{e-1}`
//! modulo the defining polynomial. All operations go through precomputed
//! tables, so a [`Field`] is built once and then shared by reference.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Error, Result};

/// Largest field size accepted by [`Field::new`]. Elements fit in a `u8`.
pub const MAX_FIELD_SIZE: u32 = 256;

/// An element of a [`Field`], identified by its coefficient-vector index.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub(crate) u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(q) with `q = p^e`, together with a fixed primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial over GF(p), ascending coefficients, length `e + 1`.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `exp[k] = generator^k` for `0 <= k < q - 1`.
    exp: Vec<u8>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u16>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for Field {}

/// Factor `q` as `p^e`, or `None` if it is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn is_prime(n: u32) -> bool {
    matches!(prime_power(n as u64), Some((_, 1)))
}

// Small helpers for polynomials over the prime field, used only while the
// extension tables are being built.
fn prime_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

/// True if the monic polynomial `m` (ascending coefficients) of degree `e`
/// has no monic divisor of degree `1..=e/2` over GF(p).
fn prime_poly_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                div.push((k % p as u64) as u32);
                k /= p as u64;
            }
            div.push(1);
            if prime_poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(q) using the least monic irreducible of degree `e` over GF(p) as
    /// modulus, ordered by coefficient-vector index.
    pub fn new(q: u32) -> Result<Field> {
        let Some((p, e)) = prime_power(q as u64) else {
            bail!(Argument, "field size {q} is not a prime power");
        };
        if q > MAX_FIELD_SIZE {
            bail!(Argument, "field size {q} exceeds the supported maximum {MAX_FIELD_SIZE}");
        }
        let p = p as u32;
        if e == 1 {
            return Field::with_modulus(p, &[0, 1]);
        }
        let count = (p as u64).pow(e);
        for idx in 0..count {
            let mut m = Vec::with_capacity(e as usize + 1);
            let mut k = idx;
            for _ in 0..e {
                m.push((k % p as u64) as u32);
                k /= p as u64;
            }
            m.push(1);
            if m[0] != 0 && prime_poly_irreducible(&m, p) {
                return Field::with_modulus(p, &m);
            }
        }
        bail!(Internal, "no irreducible polynomial of degree {e} over GF({p})")
    }

    /// GF(p^e) defined by the given monic modulus (ascending coefficients).
    /// The modulus is checked for irreducibility by trial division.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            bail!(Argument, "characteristic {p} is not prime");
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            bail!(Argument, "modulus must be monic of degree at least 1");
        }
        if modulus.iter().any(|&c| c >= p) {
            bail!(Argument, "modulus coefficients must be reduced mod {p}");
        }
        let e = (modulus.len() - 1) as u32;
        let q64 = (p as u64).pow(e);
        if q64 > MAX_FIELD_SIZE as u64 {
            bail!(Argument, "field size {q64} exceeds the supported maximum {MAX_FIELD_SIZE}");
        }
        if e > 1 && !prime_poly_irreducible(modulus, p) {
            bail!(Domain, "modulus is reducible over GF({p})");
        }
        let q = q64 as u32;
        let qs = q as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut k = x;
            for _ in 0..e {
                v.push(k % p);
                k /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> u8 {
            let mut x = 0u32;
            for &c in v.iter().rev() {
                x = x * p + c;
            }
            x as u8
        };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = undigits(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if e == 1 { prod } else { prime_poly_rem(&prod, modulus, p) };
                r.resize(e as usize, 0);
                mul[a as usize * qs + b as usize] = undigits(&r);
            }
        }
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        // Least primitive element by index.
        let mut generator = None;
        for g in 1..qs {
            let mut x = 1usize;
            let mut order = 0usize;
            loop {
                x = mul[x * qs + g] as usize;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == qs - 1 {
                generator = Some(g);
                break;
            }
        }
        let g = generator.ok_or_else(|| Error::Internal(alloc::format!("GF({q}) has no primitive element")))?;
        let mut exp = vec![0u8; qs - 1];
        let mut log = vec![0u16; qs];
        let mut x = 1usize;
        for k in 0..qs - 1 {
            exp[k] = x as u8;
            log[x] = k as u16;
            x = mul[x * qs + g] as usize;
        }
        Ok(Field {
            p,
            e,
            q,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
            exp,
            log,
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over GF(p), ascending coefficients.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Element with the given index; panics if out of range.
    #[inline]
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range for GF({})", self.q);
        FieldElement(index as u8)
    }

    /// The image of an integer under Z -> GF(p) <= GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u8))
    }

    /// The fixed primitive element: the least generator of GF(q)^x by index.
    #[inline]
    pub fn generator(&self) -> FieldElement {
        if self.q == 2 {
            FieldElement::ONE
        } else {
            FieldElement(self.exp[1])
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    /// Multiplicative inverse; inverting zero is a domain error.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            bail!(Domain, "inversion of zero in GF({})", self.q);
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    /// Inverse for callers that have already excluded zero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(!a.is_zero());
        FieldElement(self.inv[a.index()])
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.index()] as u64;
        FieldElement(self.exp[((l * (k % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize])
    }

    /// `x -> x^p`, which generates Gal(GF(q)/GF(p)).
    #[inline]
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// The element `r` of Z/(q-1) with `generator^r = a`.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            bail!(Domain, "discrete logarithm of zero");
        }
        Ok(self.log[a.index()] as u32)
    }

    /// `generator^k`.
    pub fn exp(&self, k: i64) -> FieldElement {
        let m = self.q as i64 - 1;
        FieldElement(self.exp[k.rem_euclid(m) as usize])
    }

    /// True if `a` is a square in GF(q).
    pub fn is_square(&self, a: FieldElement) -> bool {
        a.is_zero() || self.p == 2 || self.log[a.index()].is_multiple_of(2)
    }

    /// Absolute trace to GF(p), as an integer in `0..p`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        let mut s = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.e {
            s = self.add(s, x);
            x = self.frobenius(x);
        }
        s.0 as u32
    }

    /// Coefficient vector over GF(p), ascending.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut k = a.0 as u32;
        for _ in 0..self.e {
            v.push(k % self.p);
            k /= self.p;
        }
        v
    }

    /// Subfield of size `q0` (where `q = q0^r`): its elements are the fixed
    /// points of `x -> x^{q0}`.
    pub fn in_subfield(&self, a: FieldElement, q0: u32) -> bool {
        self.pow(a, q0 as u64) == a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_characteristic() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.inv(f.element(2)).unwrap(), f.element(2));
    }

    #[test]
    fn gf4_generator_squared() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // zeta has index 2 (coefficients [0, 1]); zeta + 1 has index 3.
        let z = f.element(2);
        assert_eq!(f.mul(z, z), f.element(3));
        assert_eq!(f.generator(), z);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let f = Field::new(5).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::Domain(_))));
        assert!(matches!(f.discrete_log(FieldElement::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn discrete_logs() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.generator(), f3.element(2));
        assert_eq!(f3.discrete_log(f3.element(2)).unwrap(), 1);
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.discrete_log(FieldElement::ONE).unwrap(), 0);
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.generator(), f5.element(2));
        assert_eq!(f5.discrete_log(f5.element(4)).unwrap(), 2);
    }

    #[test]
    fn field_axioms_and_frobenius_order() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                let mut x = a;
                for _ in 0..f.degree() {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                    let r = f.discrete_log(a).unwrap();
                    assert_eq!(f.pow(f.generator(), r as u64), a);
                }
                for b in f.elements().step_by(3) {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(5) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_sizes_and_moduli() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(512).is_err());
        // z^2 + 1 = (z + 1)^2 over GF(2)
        assert!(matches!(Field::with_modulus(2, &[1, 0, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(10007), Some((10007, 1)));
        assert_eq!(prime_power(10000), None);
        assert_eq!(prime_power(1), None);
    }
}
