//! The element sets `A_n(q,t,C,I)`: elements of a coset fixing no subspace
//! of dimension at most `t`, with the orthogonal and inverse-transpose
//! variants.
//!
//! An invertible matrix fixes a `k`-space iff its characteristic polynomial
//! has a degree-`k` factor, so the linear kinds reduce to the degree sieve.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};
use crate::group::{GroupFamily, GroupTable};
use crate::matrix::Matrix;
use crate::poly::{has_small_degree_factor, DensePoly};

/// Which part of the group an element set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coset {
    /// The whole group.
    All,
    /// The coset of `L_n(q)` with this label.
    Label(u32),
    /// `GL_n(q)τ` for the inverse-transpose automorphism.
    Tau,
    /// Orthogonal `S`-set (inside `L_n(q)`).
    OrthogonalS,
    /// Orthogonal `O`-set (outside `L_n(q)`).
    OrthogonalO,
}

/// `g` fixes no subspace of dimension `1..=t`.
pub fn fixes_no_small_subspace(g: &Matrix, t: usize, f: &Field) -> bool {
    !has_small_factor(&g.charpoly(f), t, f)
}

/// Strip the factor `z - c` as often as it divides; returns the multiplicity.
fn strip_root(p: &DensePoly, c: FieldElement, f: &Field) -> (usize, DensePoly) {
    let lin = DensePoly::linear(f, c);
    let mut p = p.clone();
    let mut a = 0;
    loop {
        let (quo, rem) = p.div_rem(&lin, f).expect("nonzero divisor");
        if !rem.is_zero() || p.degree() == Some(0) {
            return (a, p);
        }
        p = quo;
        a += 1;
    }
}

/// Small-factor test that treats constants as having no factors.
fn has_small_factor(p: &DensePoly, t: usize, f: &Field) -> bool {
    p.degree().unwrap_or(0) > 0 && has_small_degree_factor(p, t, f).expect("monic")
}

pub(crate) fn nullity(m: &Matrix, f: &Field) -> usize {
    m.dim() - m.rank(f)
}

/// Membership of `gτ` in `A_n(q,t,GLτ,GL)`, with `h = g g^τ = g g^{-T}`.
/// For even `n`, `h` fixes no subspace of dimension at most `t`. For odd
/// `n`, `h` fixes a vector and no other subspace of dimension at most `t`,
/// read as: the 1-primary part of `h` is one-dimensional and the rest has no
/// factor of degree `<= t`. (A larger unipotent Jordan block also fixes a
/// single 1-space, but counting it breaks the identity with `Sp_{n-1}`.)
pub fn gl_tau_member(g: &Matrix, t: usize, f: &Field) -> bool {
    let h = g.mul(&g.inverse(f).expect("invertible").transpose(), f);
    let cp = h.charpoly(f);
    if g.dim().is_multiple_of(2) {
        return !has_small_factor(&cp, t, f);
    }
    let (a, rest) = strip_root(&cp, FieldElement::ONE, f);
    a == 1 && !has_small_factor(&rest, t, f)
}

/// Orthogonal `S`/`O` membership for an isometry `g` of a quadratic form.
///
/// * even `n`, `S`: no invariant subspace of dimension `<= t`;
/// * even `n`, `O`: a reflection on a nondegenerate 2-space `W` and no small
///   invariant subspace on `W^⊥`; for odd `q` the characteristic polynomial
///   is `(z-1)(z+1)h`, for even `q` it is `(z+1)^2 h` with `g != 1` on the
///   1-primary part;
/// * odd `n`: `1` (for `S`) or `-1` (for `O`) on a nondegenerate 1-space and
///   no small invariant subspace on its complement.
///
/// In each case `h` has no factor of degree `<= t`; the primary parts are
/// then mutually orthogonal, which forces the nondegeneracy conditions.
pub fn orthogonal_member(g: &Matrix, t: usize, coset: Coset, f: &Field) -> Result<bool> {
    let n = g.dim();
    let cp = g.charpoly(f);
    let small = |p: &DensePoly| has_small_factor(p, t, f);
    let one = FieldElement::ONE;
    let minus = f.neg(one);
    Ok(match (coset, n.is_multiple_of(2)) {
        (Coset::OrthogonalS, true) => !small(&cp),
        (Coset::OrthogonalO, true) => {
            if f.characteristic() == 2 {
                let (a, rest) = strip_root(&cp, one, f);
                a == 2 && !small(&rest) && nullity(&g.sub(&Matrix::identity(n), f), f) == 1
            } else {
                let (a, r1) = strip_root(&cp, one, f);
                let (b, rest) = strip_root(&r1, minus, f);
                a == 1 && b == 1 && !small(&rest)
            }
        }
        (Coset::OrthogonalS | Coset::OrthogonalO, false) => {
            if f.characteristic() == 2 {
                bail!(Argument, "odd-dimensional orthogonal sets need odd q");
            }
            let c = if coset == Coset::OrthogonalS { one } else { minus };
            let (a, rest) = strip_root(&cp, c, f);
            a == 1 && !small(&rest)
        }
        _ => bail!(Argument, "not an orthogonal coset: {coset:?}"),
    })
}

/// Indices of the elements of `A_n(q,t,C,I)` in an enumerated group.
pub fn membership_set(table: &GroupTable, t: usize, coset: Coset) -> Result<Vec<usize>> {
    if t == 0 {
        bail!(Argument, "t must be at least 1");
    }
    let Some(spec) = table.spec() else {
        bail!(Argument, "membership sets need a group built from a spec");
    };
    let f = table.field();
    let orthogonal = matches!(spec.family, GroupFamily::O(_) | GroupFamily::So(_) | GroupFamily::Omega(_));
    let mut out = Vec::new();
    match coset {
        Coset::All | Coset::Label(_) => {
            if let Coset::Label(l) = coset {
                if l >= spec.label_count() {
                    bail!(Argument, "label {l} out of range for {}", spec.describe());
                }
            }
            for i in 0..table.len() {
                if matches!(coset, Coset::Label(l) if table.label(i) != l) {
                    continue;
                }
                if fixes_no_small_subspace(&table.element(i), t, f) {
                    out.push(i);
                }
            }
        }
        Coset::OrthogonalS | Coset::OrthogonalO => {
            if !orthogonal {
                bail!(Argument, "{} is not orthogonal", spec.describe());
            }
            for i in 0..table.len() {
                if orthogonal_member(&table.element(i), t, coset, f)? {
                    out.push(i);
                }
            }
        }
        Coset::Tau => bail!(Argument, "the τ-coset is streamed, not tabulated; use gl_tau_member"),
    }
    Ok(out)
}
