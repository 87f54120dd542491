//! Seeded uniform samplers for `GL_n(q)` and its determinant cosets, plus a
//! bit-packed GF(2) path for larger `n`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::monic_irreducibles;

/// The generator used by every stochastic routine.
pub type SampleRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `i` derived from a base seed.
pub fn substream(seed: u64, i: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(i);
    r
}

pub fn random_matrix<R: Rng + ?Sized>(n: usize, f: &Field, rng: &mut R) -> Matrix {
    let q = f.size();
    Matrix::from_fn(n, |_, _| f.element(rng.gen_range(0..q)))
}

/// Uniform element of `GL_n(q)` by rejection from all matrices.
pub fn random_gl<R: Rng + ?Sized>(n: usize, f: &Field, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(n, f, rng);
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// Uniform element of the determinant coset `det = ζ^label`, by correcting a
/// uniform element of `GL_n(q)` with a diagonal matrix.
pub fn random_coset_gl<R: Rng + ?Sized>(n: usize, f: &Field, label: u32, rng: &mut R) -> Result<Matrix> {
    let order = f.size() - 1;
    if label >= order {
        bail!(Argument, "determinant label {label} out of range for GF({})", f.size());
    }
    let g = random_gl(n, f, rng);
    let have = f.discrete_log(g.det(f))?;
    let fix = (label + order - have) % order;
    let mut d = alloc::vec![FieldElement::ONE; n];
    d[0] = f.exp(fix as i64);
    Ok(g.mul(&Matrix::diagonal(&d), f))
}

/// `n x n` matrix over GF(2) with rows packed into `u64` (`n <= 64`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    n: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Self {
        Gf2Matrix { n, rows: (0..n).map(|i| 1u64 << i).collect() }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n <= 64);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Gf2Matrix { n, rows: (0..n).map(|_| rng.gen::<u64>() & mask).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut r = 0;
        for c in 0..self.n {
            let bit = 1u64 << c;
            let Some(p) = (r..self.n).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r];
            for row in rows.iter_mut().skip(r + 1) {
                if *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn add(&self, other: &Self) -> Self {
        Gf2Matrix { n: self.n, rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&a| {
                let mut acc = 0u64;
                let mut bits = a;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc ^= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Gf2Matrix { n: self.n, rows }
    }

    /// `p(self)` for coefficients listed from the constant term up.
    pub fn eval_poly(&self, coeffs: &[bool]) -> Self {
        let mut acc = Gf2Matrix { n: self.n, rows: alloc::vec![0; self.n] };
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self);
            if c {
                acc = acc.add(&Gf2Matrix::identity(self.n));
            }
        }
        acc
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| if self.rows[i] >> j & 1 == 1 { FieldElement::ONE } else { FieldElement::ZERO })
    }
}

/// Uniform element of `GL_n(2)`.
pub fn random_gl2<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Gf2Matrix {
    loop {
        let m = Gf2Matrix::random(n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Irreducible polynomials over GF(2) of degree `1..=t` other than `z`, as
/// coefficient lists; `φ(g)` is singular iff `φ` divides the charpoly.
pub fn gf2_sieve_polys(t: usize) -> Vec<Vec<bool>> {
    let f = Field::new(2).expect("GF(2)");
    let mut out = Vec::new();
    for d in 1..=t {
        for p in monic_irreducibles(&f, d) {
            if p.coeff(0).is_zero() {
                continue;
            }
            out.push(p.coeffs().iter().map(|c| !c.is_zero()).collect());
        }
    }
    out
}

/// An invertible GF(2) matrix fixes no subspace of dimension `<= t`.
pub fn gf2_fixes_no_small_subspace(g: &Gf2Matrix, sieve: &[Vec<bool>]) -> bool {
    sieve.iter().all(|p| g.eval_poly(p).is_invertible())
}
