//! Classical forms on GF(q)^n and their standard models.
//!
//! A quadratic form is stored as an upper-triangular matrix `U` with
//! `Q(x) = x^T U x`; its polar form has Gram matrix `U + U^T` in every
//! characteristic. Hermitian forms live over GF(q0^2) with `σ(x) = x^{q0}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{rref, Matrix, Subspace, Vector};
use crate::poly::{is_irreducible, DensePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    /// Odd dimension.
    Circ,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Circ => "o",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    None,
    Symplectic,
    /// Hermitian over GF(q0^2); `q0` is the fixed-field order.
    Unitary { q0: u32 },
    Quadratic(Sign),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub kind: FormKind,
    pub gram: Matrix,
    /// Upper-triangular coefficient matrix of the quadratic form.
    pub quadratic: Option<Matrix>,
}

impl FormSpec {
    pub fn none(n: usize) -> Self {
        FormSpec { kind: FormKind::None, gram: Matrix::zero(n), quadratic: None }
    }

    /// `B = [[0, I], [-I, 0]]` on the basis `e_1..e_m, f_1..f_m`.
    pub fn symplectic(n: usize, f: &Field) -> Result<Self> {
        if n % 2 == 1 || n == 0 {
            bail!(Argument, "symplectic dimension must be even and positive, got {n}");
        }
        let m = n / 2;
        let mut g = Matrix::zero(n);
        for i in 0..m {
            g.set(i, m + i, FieldElement::ONE);
            g.set(m + i, i, f.neg(FieldElement::ONE));
        }
        Ok(FormSpec { kind: FormKind::Symplectic, gram: g, quadratic: None })
    }

    /// Antidiagonal hermitian form over `f = GF(q0^2)`.
    pub fn unitary(n: usize, f: &Field) -> Result<Self> {
        let q0 = subfield_root(f)?;
        let g = Matrix::from_fn(n, |i, j| if i + j + 1 == n { FieldElement::ONE } else { FieldElement::ZERO });
        Ok(FormSpec { kind: FormKind::Unitary { q0 }, gram: g, quadratic: None })
    }

    /// Standard quadratic form of the given type: hyperbolic pairs
    /// `x_i y_i`, plus `x^2 + xy + αy^2` (anisotropic) for minus type or `x^2`
    /// for odd dimension.
    pub fn quadratic(n: usize, sign: Sign, f: &Field) -> Result<Self> {
        let odd = n % 2 == 1;
        match (sign, odd) {
            (Sign::Circ, false) | (Sign::Plus | Sign::Minus, true) => {
                bail!(Argument, "quadratic type {} does not exist in dimension {n}", sign.symbol())
            }
            _ => {}
        }
        if n == 0 {
            bail!(Argument, "dimension must be positive");
        }
        let m = n / 2;
        let mut u = Matrix::zero(n);
        let pairs = if sign == Sign::Minus { m - 1 } else { m };
        for i in 0..pairs {
            u.set(i, m + i, FieldElement::ONE);
        }
        match sign {
            Sign::Minus => {
                let (x, y) = (m - 1, n - 1);
                u.set(x, x, FieldElement::ONE);
                u.set(x, y, FieldElement::ONE);
                u.set(y, y, anisotropic_constant(f));
            }
            Sign::Circ => u.set(n - 1, n - 1, FieldElement::ONE),
            Sign::Plus => {}
        }
        let gram = u.add(&u.transpose(), f);
        Ok(FormSpec { kind: FormKind::Quadratic(sign), gram, quadratic: Some(u) })
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    /// `B(x, y)`, semilinear in `y` for hermitian forms.
    pub fn bilinear(&self, x: &[FieldElement], y: &[FieldElement], f: &Field) -> FieldElement {
        let y: Vector = match self.kind {
            FormKind::Unitary { q0 } => y.iter().map(|&a| f.pow(a, q0 as u64)).collect(),
            _ => y.to_vec(),
        };
        let gy = self.gram.apply(&y, f);
        dot(x, &gy, f)
    }

    /// `Q(x)`; for other kinds `B(x, x)`.
    pub fn q_value(&self, x: &[FieldElement], f: &Field) -> FieldElement {
        match &self.quadratic {
            Some(u) => dot(x, &u.apply(x, f), f),
            None => self.bilinear(x, x, f),
        }
    }

    /// True iff `g` is an isometry.
    pub fn preserved_by(&self, g: &Matrix, f: &Field) -> bool {
        match self.kind {
            FormKind::None => true,
            FormKind::Unitary { q0 } => {
                let gs = g.map(|a| f.pow(a, q0 as u64));
                g.transpose().mul(&self.gram, f).mul(&gs, f) == self.gram
            }
            FormKind::Symplectic => g.transpose().mul(&self.gram, f).mul(g, f) == self.gram,
            FormKind::Quadratic(_) => {
                let u = self.quadratic.as_ref().unwrap();
                upper_canonical(&g.transpose().mul(u, f).mul(g, f), f) == *u
            }
        }
    }

    /// Gram matrix of the form restricted to a subspace, in its basis.
    pub fn restricted_gram(&self, s: &Subspace, f: &Field) -> Vec<Vector> {
        let b = s.basis();
        b.iter().map(|x| b.iter().map(|y| self.bilinear(x, y, f)).collect()).collect()
    }

    /// The subspace is totally singular (totally isotropic for forms without `Q`).
    pub fn is_totally_singular(&self, s: &Subspace, f: &Field) -> bool {
        let b = s.basis();
        if self.kind == FormKind::None {
            return true;
        }
        let q_ok = self.quadratic.is_none() || b.iter().all(|x| self.q_value(x, f).is_zero());
        q_ok && self.restricted_gram(s, f).iter().flatten().all(|x| x.is_zero())
    }

    /// The restriction of the polar form is nondegenerate.
    pub fn is_nondegenerate(&self, s: &Subspace, f: &Field) -> bool {
        if self.kind == FormKind::None {
            return false;
        }
        let mut g = self.restricted_gram(s, f);
        rref(&mut g, f) == s.dim()
    }
}

fn dot(x: &[FieldElement], y: &[FieldElement], f: &Field) -> FieldElement {
    x.iter().zip(y).fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Upper-triangular representative of the quadratic form `x^T M x`.
pub fn upper_canonical(m: &Matrix, f: &Field) -> Matrix {
    let n = m.dim();
    Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Less => f.add(m.get(i, j), m.get(j, i)),
        core::cmp::Ordering::Equal => m.get(i, i),
        core::cmp::Ordering::Greater => FieldElement::ZERO,
    })
}

/// Least `α` (by index) with `z^2 + z + α` irreducible.
pub fn anisotropic_constant(f: &Field) -> FieldElement {
    f.elements()
        .find(|&a| is_irreducible(&DensePoly::new(vec![a, FieldElement::ONE, FieldElement::ONE]), f).unwrap_or(false))
        .expect("every finite field has an irreducible quadratic")
}

/// `q0` with `|f| = q0^2`.
pub fn subfield_root(f: &Field) -> Result<u32> {
    if f.degree() % 2 == 1 {
        bail!(Argument, "GF({}) is not a quadratic extension", f.size());
    }
    Ok(f.characteristic().pow(f.degree() / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::all_vectors;

    fn singular_count(form: &FormSpec, f: &Field) -> usize {
        all_vectors(form.dim(), f).filter(|v| form.q_value(v, f).is_zero()).count()
    }

    #[test]
    fn quadratic_types_by_singular_count() {
        // q^{2m-1} + ε(q^m - q^{m-1}) zeros, counting the origin
        for q in [2u32, 3, 4, 5] {
            let f = Field::new(q).unwrap();
            let qq = q as i64;
            for m in 1..=2u32 {
                let base = qq.pow(2 * m - 1);
                let d = qq.pow(m) - qq.pow(m - 1);
                let plus = FormSpec::quadratic(2 * m as usize, Sign::Plus, &f).unwrap();
                let minus = FormSpec::quadratic(2 * m as usize, Sign::Minus, &f).unwrap();
                assert_eq!(singular_count(&plus, &f) as i64, base + d);
                assert_eq!(singular_count(&minus, &f) as i64, base - d);
            }
        }
        let f = Field::new(3).unwrap();
        let o = FormSpec::quadratic(3, Sign::Circ, &f).unwrap();
        assert_eq!(singular_count(&o, &f), 9);
        assert!(FormSpec::quadratic(3, Sign::Plus, &f).is_err());
    }

    #[test]
    fn symplectic_and_unitary_forms() {
        let f = Field::new(3).unwrap();
        let s = FormSpec::symplectic(4, &f).unwrap();
        for v in all_vectors(4, &f) {
            assert!(s.bilinear(&v, &v, &f).is_zero());
        }
        let f4 = Field::new(4).unwrap();
        let u = FormSpec::unitary(3, &f4).unwrap();
        // hermitian: H(y, x) = σ(H(x, y))
        let vs: Vec<_> = all_vectors(3, &f4).collect();
        for x in vs.iter().step_by(7) {
            for y in vs.iter().step_by(5) {
                assert_eq!(u.bilinear(y, x, &f4), f4.pow(u.bilinear(x, y, &f4), 2));
            }
        }
        assert!(FormSpec::unitary(2, &f).is_err());
    }
}
