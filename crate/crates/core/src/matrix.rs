//! Square matrices and subspaces over a small finite field.
//!
//! Matrices act on column vectors. A subspace is kept as the nonzero rows of
//! its reduced row echelon basis, which is canonical and hashes exactly.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};
use crate::poly::DensePoly;

/// `n x n` matrix with entries in a [`Field`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    e: Vec<FieldElement>,
}

pub type Vector = Vec<FieldElement>;

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, e: vec![FieldElement::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Row-major entries as field-element indices.
    pub fn from_indices(field: &Field, n: usize, idx: &[u32]) -> Result<Self> {
        if idx.len() != n * n {
            bail!(Argument, "expected {} entries, got {}", n * n, idx.len());
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= field.size()) {
            bail!(Argument, "entry index {bad} out of range for GF({})", field.size());
        }
        Ok(Matrix { n, e: idx.iter().map(|&i| field.element(i)).collect() })
    }

    pub fn from_entries(n: usize, e: Vec<FieldElement>) -> Self {
        assert_eq!(e.len(), n * n);
        Matrix { n, e }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        Matrix { n, e }
    }

    /// Diagonal matrix.
    pub fn diagonal(d: &[FieldElement]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { d[i] } else { FieldElement::ZERO })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.e[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.e[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.e
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.e[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let o = &mut out[i * n + j];
                    *o = f.add(*o, f.mul(a, other.e[k * n + j]));
                }
            }
        }
        Matrix { n, e: out }
    }

    pub fn add(&self, other: &Matrix, f: &Field) -> Matrix {
        Matrix { n: self.n, e: self.e.iter().zip(&other.e).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Matrix, f: &Field) -> Matrix {
        Matrix { n: self.n, e: self.e.iter().zip(&other.e).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: FieldElement, f: &Field) -> Matrix {
        self.map(|a| f.mul(a, c))
    }

    /// Entrywise image, e.g. a field automorphism.
    pub fn map(&self, g: impl Fn(FieldElement) -> FieldElement) -> Matrix {
        Matrix { n: self.n, e: self.e.iter().map(|&a| g(a)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `g v` for a column vector `v`.
    pub fn apply(&self, v: &[FieldElement], f: &Field) -> Vector {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut k: u64, f: &Field) -> Matrix {
        let mut acc = Matrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// True for `c I`, `c` any field element.
    pub fn is_scalar(&self) -> bool {
        let c = self.e.first().copied().unwrap_or(FieldElement::ONE);
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { FieldElement::ZERO }))
    }

    pub fn det(&self, f: &Field) -> FieldElement {
        let mut rows: Vec<Vector> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        let mut det = FieldElement::ONE;
        for c in 0..self.n {
            let Some(p) = (c..self.n).find(|&r| !rows[r][c].is_zero()) else {
                return FieldElement::ZERO;
            };
            if p != c {
                rows.swap(p, c);
                det = f.neg(det);
            }
            let pv = rows[c][c];
            det = f.mul(det, pv);
            let inv = f.inv_nonzero(pv);
            for r in c + 1..self.n {
                let m = f.mul(rows[r][c], inv);
                if !m.is_zero() {
                    for j in c..self.n {
                        rows[r][j] = f.sub(rows[r][j], f.mul(m, rows[c][j]));
                    }
                }
            }
        }
        det
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut rows: Vec<Vector> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        rref(&mut rows, f)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        !self.det(f).is_zero()
    }

    /// Inverse by Gauss-Jordan elimination; singular input is a domain error.
    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        let n = self.n;
        let mut a: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }));
                r
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                bail!(Domain, "matrix is singular");
            };
            a.swap(p, c);
            let inv = f.inv_nonzero(a[c][c]);
            for x in a[c].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let m = a[r][c];
                    for j in 0..2 * n {
                        let v = f.mul(m, a[c][j]);
                        a[r][j] = f.sub(a[r][j], v);
                    }
                }
            }
        }
        Ok(Matrix { n, e: a.into_iter().flat_map(|r| r[n..].to_vec()).collect() })
    }

    /// Characteristic polynomial `det(z I - g)`, monic of degree `n`, via
    /// reduction to upper Hessenberg form by similarity.
    pub fn charpoly(&self, f: &Field) -> DensePoly {
        let n = self.n;
        let mut h: Vec<Vector> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if piv != m {
                h.swap(piv, m);
                for row in h.iter_mut() {
                    row.swap(piv, m);
                }
            }
            let inv = f.inv_nonzero(h[m][m - 1]);
            for i in m + 1..n {
                let u = f.mul(h[i][m - 1], inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(u, h[m][j]);
                    h[i][j] = f.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = f.mul(u, row[i]);
                    row[m] = f.add(row[m], v);
                }
            }
        }
        // p_k = (z - h_{k-1,k-1}) p_{k-1} - sum_i (prod of subdiagonal) h_{k-1-i,k-1} p_{k-1-i}
        let mut p: Vec<DensePoly> = vec![DensePoly::one()];
        for k in 1..=n {
            let lin = DensePoly::linear(f, h[k - 1][k - 1]);
            let mut pk = lin.mul(&p[k - 1], f);
            let mut t = FieldElement::ONE;
            for i in 1..k {
                t = f.mul(t, h[k - i][k - i - 1]);
                if t.is_zero() {
                    break;
                }
                let c = f.mul(t, h[k - 1 - i][k - 1]);
                if !c.is_zero() {
                    pk = pk.sub(&p[k - 1 - i].scale(c, f), f);
                }
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }

    /// Base-`q` packing of the entries; `None` if it does not fit in a `u64`.
    pub fn key(&self, q: u32) -> Option<u64> {
        let mut k: u64 = 0;
        for &x in self.e.iter().rev() {
            k = k.checked_mul(q as u64)?.checked_add(x.index() as u64)?;
        }
        Some(k)
    }

    pub fn from_key(n: usize, q: u32, mut key: u64) -> Matrix {
        let q = q as u64;
        let mut e = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            e.push(FieldElement((key % q) as u8));
            key /= q;
        }
        Matrix { n, e }
    }
}

/// True iff `q^{n^2}` packed keys fit in a `u64`.
pub fn keys_fit(n: usize, q: u32) -> bool {
    (q as u128).checked_pow((n * n) as u32).is_some_and(|v| v - 1 <= u64::MAX as u128)
}

/// In-place reduced row echelon form; zero rows are dropped and the rank returned.
pub fn rref(rows: &mut Vec<Vector>, f: &Field) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = f.inv_nonzero(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let m = rows[i][c];
                for j in c..ncols {
                    let v = f.mul(m, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    r
}

/// Basis (in reduced form) of `{x : R x = 0}` for the given rows `R`.
pub fn null_space(rows: &[Vector], ncols: usize, f: &Field) -> Vec<Vector> {
    let mut r = rows.to_vec();
    rref(&mut r, f);
    let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    let _ = rref(&mut basis, f);
    basis
}

/// A subspace of GF(q)^n stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

impl Subspace {
    /// Span of the given vectors.
    pub fn span(n: usize, vectors: &[Vector], f: &Field) -> Self {
        let mut rows = vectors.to_vec();
        rref(&mut rows, f);
        Subspace { n, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    /// `g U`.
    pub fn image(&self, g: &Matrix, f: &Field) -> Self {
        let imgs: Vec<Vector> = self.rows.iter().map(|v| g.apply(v, f)).collect();
        Self::span(self.n, &imgs, f)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self, f: &Field) -> Self {
        Subspace { n: self.n, rows: null_space(&self.rows, self.n, f) }
    }

    pub fn contains(&self, v: &[FieldElement], f: &Field) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(&mut rows, f) == self.rows.len()
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &Field) -> bool {
        self.rows.iter().all(|v| other.contains(v, f))
    }

    pub fn intersects_trivially(&self, other: &Subspace, f: &Field) -> bool {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        rref(&mut rows, f) == self.dim() + other.dim()
    }

    /// Base-`q` packing of the reduced basis; `None` on overflow. Subspaces
    /// of different dimension in the same ambient space have distinct keys
    /// only together with their dimension.
    pub fn key(&self, q: u32) -> Option<u64> {
        let mut k: u64 = 0;
        for row in self.rows.iter().rev() {
            for &x in row.iter().rev() {
                k = k.checked_mul(q as u64)?.checked_add(x.index() as u64)?;
            }
        }
        Some(k)
    }
}

/// All `k`-dimensional subspaces of GF(q)^n, enumerated through their
/// reduced echelon forms (pivot set, then free entries).
pub fn all_subspaces(n: usize, k: usize, f: &Field) -> Vec<Subspace> {
    let q = f.size() as u64;
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: row r, column c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pivots[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![FieldElement::ZERO; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = FieldElement::ONE;
            }
            for &(r, c) in &free {
                rows[r][c] = FieldElement((idx % q) as u8);
                idx /= q;
            }
            out.push(Subspace { n, rows });
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// All vectors of GF(q)^n in index order.
pub fn all_vectors(n: usize, f: &Field) -> impl Iterator<Item = Vector> + '_ {
    let q = f.size() as u64;
    (0..q.pow(n as u32)).map(move |mut i| {
        (0..n)
            .map(|_| {
                let x = FieldElement((i % q) as u8);
                i /= q;
                x
            })
            .collect()
    })
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}
