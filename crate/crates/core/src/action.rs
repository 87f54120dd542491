//! Permutation actions of matrix groups on subspaces, flags, antiflags and
//! quadratic forms.
//!
//! The inverse-transpose automorphism `τ` acts by `U -> U^⊥` for the standard
//! dot product, so an element `gτ` sends `U` to `g(U^⊥)`. On `k`-spaces this
//! only makes sense when `2k = n`; on flags and antiflags it swaps the roles
//! of the two members.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{bail, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{upper_canonical, FormKind, FormSpec, Sign};
use crate::matrix::{all_subspaces, all_vectors, gaussian_binomial, Matrix, Subspace};

/// Default limit on the number of points of an enumerated action.
pub const DEFAULT_POINT_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubspaceKind {
    Any,
    TotallySingular,
    Nondegenerate,
    /// Nondegenerate of the given type; even `k`, quadratic forms only.
    NondegenerateOfType(Sign),
    /// 1-spaces spanned by a vector with `Q(v) != 0`.
    Nonsingular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionSpec {
    Subspaces { k: usize, kind: SubspaceKind },
    /// Pairs `U <= W` with `dim U = k`, `dim W = n - k`.
    Flags { k: usize },
    /// Pairs with `U ∩ W = 0`, `dim U = k`, `dim W = n - k`.
    Antiflags { k: usize },
    /// Quadratic forms polarizing to the symplectic form (even `q`), by type.
    QuadraticForms { sign: Option<Sign> },
}

/// A point of an action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Space(Subspace),
    /// `(U, W)`, smaller dimension first; equal dimensions sorted.
    Pair(Subspace, Subspace),
    /// Upper-triangular coefficient matrix.
    Form(Matrix),
}

fn pair(a: Subspace, b: Subspace) -> Point {
    if a.dim() < b.dim() || (a.dim() == b.dim() && a <= b) {
        Point::Pair(a, b)
    } else {
        Point::Pair(b, a)
    }
}

/// The full point set of an action with an index.
#[derive(Clone, Debug)]
pub struct ActionDomain {
    pub spec: ActionSpec,
    n: usize,
    field: Field,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    /// Distinct subspaces occurring in the points, and each point's members.
    parts: Vec<Subspace>,
    part_index: HashMap<Subspace, usize>,
    members: Vec<(usize, usize)>,
}

impl ActionDomain {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// True iff `gτ` acts on this point set.
    pub fn supports_tau(&self) -> bool {
        match self.spec {
            ActionSpec::Subspaces { k, kind: SubspaceKind::Any } => 2 * k == self.n,
            ActionSpec::Flags { .. } | ActionSpec::Antiflags { .. } => true,
            _ => false,
        }
    }

    /// Image of a point under `g` (or `gτ` when `tau`). Forms are moved by
    /// `Q -> Q ∘ g^{-1}`.
    pub fn image(&self, g: &Matrix, tau: bool, p: &Point) -> Point {
        let f = &self.field;
        let map = |u: &Subspace| if tau { u.perp(f).image(g, f) } else { u.image(g, f) };
        match p {
            Point::Space(u) => Point::Space(map(u)),
            Point::Pair(u, w) => pair(map(u), map(w)),
            Point::Form(u) => {
                let gi = g.inverse(f).expect("group elements are invertible");
                Point::Form(upper_canonical(&gi.transpose().mul(u, f).mul(&gi, f), f))
            }
        }
    }

    fn fixes(&self, g: &Matrix, tau: bool, p: &Point) -> bool {
        let f = &self.field;
        match p {
            Point::Form(u) => upper_canonical(&g.transpose().mul(u, f).mul(g, f), f) == *u,
            _ => self.image(g, tau, p) == *p,
        }
    }

    /// Number of points fixed by `g` (or `gτ`).
    pub fn fixed_points(&self, g: &Matrix, tau: bool) -> usize {
        self.fixed_mask(g, tau).into_iter().filter(|&b| b).count()
    }

    /// Indices of the fixed points.
    pub fn fixed_set(&self, g: &Matrix, tau: bool) -> Vec<usize> {
        self.fixed_mask(g, tau).into_iter().enumerate().filter_map(|(i, b)| b.then_some(i)).collect()
    }

    /// Fixed-point indicator per point. Subspace members are mapped once each.
    pub fn fixed_mask(&self, g: &Matrix, tau: bool) -> Vec<bool> {
        if self.parts.is_empty() {
            return self.points.iter().map(|p| self.fixes(g, tau, p)).collect();
        }
        let f = &self.field;
        let img: Vec<usize> = self
            .parts
            .iter()
            .map(|u| {
                let v = if tau { u.perp(f).image(g, f) } else { u.image(g, f) };
                self.part_index.get(&v).copied().unwrap_or(usize::MAX)
            })
            .collect();
        self.members
            .iter()
            .zip(&self.points)
            .map(|(&(a, b), p)| match p {
                Point::Space(_) => img[a] == a,
                _ => {
                    let (u, w) = if tau { (img[b], img[a]) } else { (img[a], img[b]) };
                    (u == a && w == b) || (u == b && w == a)
                }
            })
            .collect()
    }

    /// Orbits under the group generated by `gens` (pairs of element and τ flag).
    pub fn orbits(&self, gens: &[(Matrix, bool)]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let p = &self.points[orbit[i]];
                for (g, tau) in gens {
                    let j = self.index[&self.image(g, *tau, p)];
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// Enumerate the points of an action for the group preserving `form`.
pub fn enumerate_action(form: &FormSpec, f: &Field, action: ActionSpec, cap: usize) -> Result<ActionDomain> {
    let n = form.dim();
    let q = f.size() as u64;
    let check_size = |size: u128| -> Result<()> {
        if size > cap as u128 {
            bail!(Resource, "action has {size} points, above the cap {cap}");
        }
        Ok(())
    };
    let points: Vec<Point> = match action {
        ActionSpec::Subspaces { k, kind } => {
            if k == 0 || k > n {
                bail!(Argument, "subspace dimension {k} out of range for n = {n}");
            }
            check_size(gaussian_binomial(n, k, q))?;
            if form.kind == FormKind::None && !matches!(kind, SubspaceKind::Any | SubspaceKind::TotallySingular) {
                bail!(Argument, "only plain subspaces exist without a form");
            }
            if matches!(kind, SubspaceKind::Nonsingular) && (k != 1 || form.quadratic.is_none()) {
                bail!(Argument, "nonsingular spaces are 1-spaces of a quadratic form");
            }
            if let SubspaceKind::NondegenerateOfType(_) = kind {
                if k % 2 == 1 || form.quadratic.is_none() {
                    bail!(Argument, "typed nondegenerate spaces need even k and a quadratic form");
                }
            }
            all_subspaces(n, k, f)
                .into_iter()
                .filter(|u| match kind {
                    SubspaceKind::Any => true,
                    SubspaceKind::TotallySingular => form.is_totally_singular(u, f),
                    SubspaceKind::Nondegenerate => form.is_nondegenerate(u, f),
                    SubspaceKind::NondegenerateOfType(s) => {
                        form.is_nondegenerate(u, f) && restricted_type(form, u, f) == s
                    }
                    SubspaceKind::Nonsingular => !form.q_value(&u.basis()[0], f).is_zero(),
                })
                .map(Point::Space)
                .collect()
        }
        ActionSpec::Flags { k } | ActionSpec::Antiflags { k } => {
            if k == 0 || 2 * k > n {
                bail!(Argument, "flag dimension {k} must satisfy 1 <= k <= n/2");
            }
            let flag = matches!(action, ActionSpec::Flags { .. });
            let size = if flag {
                gaussian_binomial(n, k, q) * gaussian_binomial(n - k, k, q)
            } else {
                let c = gaussian_binomial(n, k, q) * (q as u128).pow((k * (n - k)) as u32);
                if 2 * k == n {
                    c / 2
                } else {
                    c
                }
            };
            check_size(size)?;
            let small = all_subspaces(n, k, f);
            let large = if 2 * k == n { small.clone() } else { all_subspaces(n, n - k, f) };
            let mut pts = Vec::new();
            for u in &small {
                for w in &large {
                    let ok = if flag { u.is_subspace_of(w, f) } else { u.intersects_trivially(w, f) };
                    if ok && (2 * k != n || flag || u < w) {
                        pts.push(pair(u.clone(), w.clone()));
                    }
                }
            }
            pts
        }
        ActionSpec::QuadraticForms { sign } => {
            if form.kind != FormKind::Symplectic || f.characteristic() != 2 {
                bail!(Argument, "quadratic-form actions need a symplectic form over even q");
            }
            check_size((q as u128).pow(n as u32))?;
            let m = n / 2;
            let mut base = Matrix::zero(n);
            for i in 0..m {
                base.set(i, m + i, FieldElement::ONE);
            }
            all_vectors(n, f)
                .map(|d| {
                    let mut u = base.clone();
                    for (i, &x) in d.iter().enumerate() {
                        u.set(i, i, x);
                    }
                    u
                })
                .filter(|u| sign.is_none_or(|s| form_type(u, f) == s))
                .map(Point::Form)
                .collect()
        }
    };
    let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parts = Vec::new();
    let mut part_index: HashMap<Subspace, usize> = HashMap::new();
    let mut intern = |u: &Subspace| {
        *part_index.entry(u.clone()).or_insert_with(|| {
            parts.push(u.clone());
            parts.len() - 1
        })
    };
    let members = points
        .iter()
        .map(|p| match p {
            Point::Space(u) => {
                let a = intern(u);
                (a, a)
            }
            Point::Pair(u, w) => (intern(u), intern(w)),
            Point::Form(_) => (0, 0),
        })
        .collect();
    if let ActionSpec::Flags { k } | ActionSpec::Antiflags { k } = action {
        // under τ a member maps to a space of the complementary dimension
        for d in [k, n - k] {
            for u in all_subspaces(n, d, f) {
                intern(&u);
            }
        }
    }
    Ok(ActionDomain { spec: action, n, field: f.clone(), points, index, parts, part_index, members })
}

/// Type of a nondegenerate quadratic form in even dimension `2m`, from the
/// number `q^{2m-1} ± (q^m - q^{m-1})` of its zeros.
pub fn form_type(u: &Matrix, f: &Field) -> Sign {
    let n = u.dim();
    let zeros = all_vectors(n, f).filter(|v| {
        let uv = u.apply(v, f);
        v.iter().zip(&uv).fold(FieldElement::ZERO, |a, (&x, &y)| f.add(a, f.mul(x, y))).is_zero()
    });
    let q = f.size() as u64;
    if zeros.count() as u64 > q.pow(n as u32 - 1) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Type of the restriction of the quadratic form to an even-dimensional subspace.
pub fn restricted_type(form: &FormSpec, u: &Subspace, f: &Field) -> Sign {
    let b = u.basis();
    let k = b.len();
    let full = form.quadratic.as_ref().expect("quadratic form");
    // coefficients of Q(Σ c_i b_i) in the basis b
    let m = Matrix::from_fn(k, |i, j| {
        let bi = &b[i];
        let ub = full.apply(&b[j], f);
        bi.iter().zip(&ub).fold(FieldElement::ZERO, |a, (&x, &y)| f.add(a, f.mul(x, y)))
    });
    form_type(&upper_canonical(&m, f), f)
}

/// Closed-form number of points, where one is known.
pub fn expected_point_count(form: &FormSpec, f: &Field, action: ActionSpec) -> Option<u128> {
    let n = form.dim();
    let q = f.size() as u128;
    Some(match action {
        ActionSpec::Subspaces { k, kind: SubspaceKind::Any } => gaussian_binomial(n, k, q as u64),
        ActionSpec::Flags { k } => gaussian_binomial(n, k, q as u64) * gaussian_binomial(n - k, k, q as u64),
        ActionSpec::Antiflags { k } => {
            let c = gaussian_binomial(n, k, q as u64) * q.pow((k * (n - k)) as u32);
            if 2 * k == n {
                c / 2
            } else {
                c
            }
        }
        ActionSpec::Subspaces { k: 1, kind: SubspaceKind::TotallySingular } => match form.kind {
            FormKind::None | FormKind::Symplectic => (q.pow(n as u32) - 1) / (q - 1),
            FormKind::Unitary { q0 } => {
                let q0 = q0 as i128;
                let n = n as u32;
                let s = |e: u32| if e.is_multiple_of(2) { 1i128 } else { -1 };
                ((q0.pow(n) - s(n)) * (q0.pow(n - 1) - s(n - 1)) / (q0 * q0 - 1)) as u128
            }
            FormKind::Quadratic(s) => {
                let m = (n / 2) as u32;
                match s {
                    Sign::Plus => (q.pow(m) - 1) * (q.pow(m - 1) + 1) / (q - 1),
                    Sign::Minus => (q.pow(m) + 1) * (q.pow(m - 1) - 1) / (q - 1),
                    Sign::Circ => (q.pow(2 * m) - 1) / (q - 1),
                }
            }
        },
        ActionSpec::QuadraticForms { sign } => {
            let m = (n / 2) as u32;
            let plus = q.pow(m) * (q.pow(m) + 1) / 2;
            let minus = q.pow(m) * (q.pow(m) - 1) / 2;
            match sign {
                None => q.pow(n as u32),
                Some(Sign::Plus) => plus,
                Some(Sign::Minus) => minus,
                Some(Sign::Circ) => 0,
            }
        }
        _ => return None,
    })
}
