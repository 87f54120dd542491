//! Exact coefficient rings for truncated power series: the rationals and the
//! cyclotomic fields Q(zeta_m), the latter stored as coefficient vectors of
//! length phi(m) modulo the m-th cyclotomic polynomial.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{bail, Result};

/// A commutative ring with exact arithmetic, carried as a value so that
/// rings with parameters (the conductor `m`) need no global state.
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;
    /// Multiplicative inverse; zero is a domain error.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
}

/// The field Q with arbitrary-precision reduced fractions.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            bail!(Domain, "inverse of zero rational");
        }
        Ok(a.recip())
    }
}

/// Q(zeta_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    m: usize,
    /// Monic integer cyclotomic polynomial Phi_m, ascending, degree phi(m).
    modulus: Vec<BigInt>,
}

/// Element of Q(zeta_m) as `sum_i c_i zeta^i`, `i < phi(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic(pub Vec<BigRational>);

/// Integer polynomial `Phi_m` via `x^m - 1 = prod_{d | m} Phi_d`.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    num[0] = BigInt::from(-1);
    num[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = int_poly_exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn int_poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b is monic
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone();
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

impl CyclotomicField {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            bail!(Argument, "cyclotomic conductor must be positive");
        }
        Ok(CyclotomicField { m, modulus: cyclotomic_polynomial(m) })
    }

    pub fn conductor(&self) -> usize {
        self.m
    }

    /// phi(m), the dimension over Q.
    pub fn dimension(&self) -> usize {
        self.modulus.len() - 1
    }

    /// `zeta^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(self.m as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        self.reduce(v)
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Cyclotomic {
        let d = self.dimension();
        while v.len() > d {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            // x^{shift + d} = -sum_{i<d} Phi_i x^{shift + i}
            for (i, mi) in self.modulus[..d].iter().enumerate() {
                v[shift + i] -= &c * BigRational::from_integer(mi.clone());
            }
        }
        v.resize(d, BigRational::zero());
        Cyclotomic(v)
    }

    /// The rational value of `a`, if all irrational coordinates vanish.
    pub fn as_rational(&self, a: &Cyclotomic) -> Option<BigRational> {
        a.0[1..].iter().all(|c| c.is_zero()).then(|| a.0[0].clone())
    }
}

fn rpoly_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rpoly_trim(&mut out);
    out
}

fn rpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    rpoly_trim(&mut out);
    out
}

fn rpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    rpoly_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    rpoly_trim(&mut rem);
    rpoly_trim(&mut quot);
    (quot, rem)
}

impl Ring for CyclotomicField {
    type Elem = Cyclotomic;

    fn zero(&self) -> Cyclotomic {
        Cyclotomic(vec![BigRational::zero(); self.dimension()])
    }
    fn one(&self) -> Cyclotomic {
        self.from_rational(&BigRational::one())
    }
    fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let d = self.dimension();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }
    fn neg(&self, a: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().map(|x| -x).collect())
    }
    fn is_zero(&self, a: &Cyclotomic) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }
    fn from_rational(&self, r: &BigRational) -> Cyclotomic {
        let mut v = vec![BigRational::zero(); self.dimension()];
        v[0] = r.clone();
        Cyclotomic(v)
    }
    fn inv(&self, a: &Cyclotomic) -> Result<Cyclotomic> {
        if self.is_zero(a) {
            bail!(Domain, "inverse of zero in Q(zeta_{})", self.m);
        }
        // Extended Euclid in Q[x] on (Phi_m, a); Phi_m is irreducible so the gcd is a unit.
        let modulus: Vec<BigRational> = self.modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut r0 = modulus;
        let mut r1 = a.0.clone();
        rpoly_trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (qt, r) = rpoly_divrem(&r0, &r1);
            let s = rpoly_sub(&s0, &rpoly_mul(&qt, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            bail!(Internal, "cyclotomic inverse: non-unit gcd");
        }
        let c = r0[0].clone();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
        Ok(self.reduce(scaled))
    }
}
