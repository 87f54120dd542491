//! Enumeration of small classical groups by generator closure.
//!
//! Groups are closed with Dimino's algorithm: each new generator extends the
//! current group `H` by whole right cosets `H r`, so the work is one product
//! per new element plus one membership test per (coset, generator) pair.
//! Generators are taken greedily from a family-specific list of candidates
//! (transvections, reflections, Eichler maps, diagonal elements) and skipped
//! when already present; the result is validated against the order formula.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{bail, Error, Result};
use crate::field::{prime_power, Field, FieldElement};
use crate::forms::{FormSpec, Sign};
use crate::matrix::{all_vectors, keys_fit, Matrix, Vector};

/// Default limit on the number of elements of an enumerated group.
pub const DEFAULT_CAP: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    Gl,
    Sl,
    Sp,
    Gu,
    Su,
    O(Sign),
    /// Determinant-one subgroup; odd `q` only.
    So(Sign),
    /// Dickson-invariant kernel; even `q` only.
    Omega(Sign),
}

fn sign_suffix(s: Sign) -> &'static str {
    match s {
        Sign::Circ => "",
        _ => s.symbol(),
    }
}

impl GroupFamily {
    pub fn name(self) -> String {
        match self {
            GroupFamily::Gl => "gl".into(),
            GroupFamily::Sl => "sl".into(),
            GroupFamily::Sp => "sp".into(),
            GroupFamily::Gu => "gu".into(),
            GroupFamily::Su => "su".into(),
            GroupFamily::O(s) => format!("o{}", sign_suffix(s)),
            GroupFamily::So(s) => format!("so{}", sign_suffix(s)),
            GroupFamily::Omega(s) => format!("omega{}", sign_suffix(s)),
        }
    }

    /// Inverse of [`GroupFamily::name`]; `o`, `so`, `omega` without a sign
    /// mean odd dimension.
    pub fn parse(s: &str) -> Option<Self> {
        let sign = |rest: &str| match rest {
            "+" | "plus" => Some(Sign::Plus),
            "-" | "minus" => Some(Sign::Minus),
            "" | "o" | "circ" => Some(Sign::Circ),
            _ => None,
        };
        Some(match s {
            "gl" => GroupFamily::Gl,
            "sl" => GroupFamily::Sl,
            "sp" => GroupFamily::Sp,
            "gu" => GroupFamily::Gu,
            "su" => GroupFamily::Su,
            _ => {
                if let Some(r) = s.strip_prefix("omega") {
                    GroupFamily::Omega(sign(r)?)
                } else if let Some(r) = s.strip_prefix("so") {
                    GroupFamily::So(sign(r)?)
                } else {
                    let r = s.strip_prefix('o')?;
                    GroupFamily::O(sign(r)?)
                }
            }
        })
    }

    fn sign(self) -> Option<Sign> {
        match self {
            GroupFamily::O(s) | GroupFamily::So(s) | GroupFamily::Omega(s) => Some(s),
            _ => None,
        }
    }
}

/// A classical group `I_n(q)`. For unitary families `q` is the order of the
/// fixed field and matrices have entries in GF(q^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub n: usize,
    pub q: u32,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize, q: u32) -> Result<Self> {
        let Some((p, _)) = prime_power(q as u64) else {
            bail!(Argument, "q = {q} is not a prime power");
        };
        if n == 0 {
            bail!(Argument, "dimension must be positive");
        }
        match family {
            GroupFamily::Sp if n % 2 == 1 => bail!(Argument, "Sp needs even dimension, got {n}"),
            GroupFamily::Gu | GroupFamily::Su if q * q > crate::field::MAX_FIELD_SIZE => {
                bail!(Argument, "GF({}) exceeds the supported field size", q * q)
            }
            _ => {}
        }
        if let Some(s) = family.sign() {
            if (s == Sign::Circ) != (n % 2 == 1) {
                bail!(Argument, "type {} is incompatible with dimension {n}", s.symbol());
            }
            if n % 2 == 1 && p == 2 {
                bail!(Argument, "odd-dimensional orthogonal groups need odd q");
            }
            match family {
                GroupFamily::So(_) if p == 2 => bail!(Argument, "SO at even q is not separate from O; use omega"),
                GroupFamily::Omega(_) if p != 2 => {
                    bail!(Argument, "Omega at odd q needs the spinor norm, which is not computed")
                }
                _ => {}
            }
        }
        Ok(GroupSpec { family, n, q })
    }

    /// Field of matrix entries.
    pub fn field(&self) -> Result<Field> {
        match self.family {
            GroupFamily::Gu | GroupFamily::Su => Field::new(self.q * self.q),
            _ => Field::new(self.q),
        }
    }

    pub fn form(&self, f: &Field) -> Result<FormSpec> {
        match self.family {
            GroupFamily::Gl | GroupFamily::Sl => Ok(FormSpec::none(self.n)),
            GroupFamily::Sp => FormSpec::symplectic(self.n, f),
            GroupFamily::Gu | GroupFamily::Su => FormSpec::unitary(self.n, f),
            GroupFamily::O(s) | GroupFamily::So(s) | GroupFamily::Omega(s) => FormSpec::quadratic(self.n, s, f),
        }
    }

    /// The full isometry group this family is cut out of.
    pub fn ambient(&self) -> GroupSpec {
        let family = match self.family {
            GroupFamily::Sl => GroupFamily::Gl,
            GroupFamily::Su => GroupFamily::Gu,
            GroupFamily::So(s) | GroupFamily::Omega(s) => GroupFamily::O(s),
            f => f,
        };
        GroupSpec { family, ..*self }
    }

    /// The subgroup `L_n(q)` (SL, Sp, SU, SO or Omega) whose cosets the labels index.
    pub fn kernel(&self) -> GroupSpec {
        let p2 = self.q.is_multiple_of(2);
        let family = match self.family {
            GroupFamily::Gl | GroupFamily::Sl => GroupFamily::Sl,
            GroupFamily::Gu | GroupFamily::Su => GroupFamily::Su,
            GroupFamily::Sp => GroupFamily::Sp,
            GroupFamily::O(s) | GroupFamily::So(s) | GroupFamily::Omega(s) => {
                if p2 {
                    GroupFamily::Omega(s)
                } else {
                    GroupFamily::So(s)
                }
            }
        };
        GroupSpec { family, ..*self }
    }

    /// Classical order formula.
    pub fn order(&self) -> u128 {
        let q = self.q as u128;
        let n = self.n as u32;
        let m = n / 2;
        let prod = |r: core::ops::RangeInclusive<u32>, f: &dyn Fn(u32) -> u128| r.fold(1u128, |a, i| a * f(i));
        let gl = q.pow(n * (n - 1) / 2) * prod(1..=n, &|i| q.pow(i) - 1);
        let gu = q.pow(n * (n - 1) / 2) * prod(1..=n, &|i| if i % 2 == 0 { q.pow(i) - 1 } else { q.pow(i) + 1 });
        let sp_like = |m: u32| q.pow(m * m) * prod(1..=m, &|i| q.pow(2 * i) - 1);
        let o = |s: Sign| match s {
            Sign::Circ => 2 * sp_like(m),
            Sign::Plus => 2 * q.pow(m * (m - 1)) * (q.pow(m) - 1) * prod(1..=m - 1, &|i| q.pow(2 * i) - 1),
            Sign::Minus => 2 * q.pow(m * (m - 1)) * (q.pow(m) + 1) * prod(1..=m - 1, &|i| q.pow(2 * i) - 1),
        };
        match self.family {
            GroupFamily::Gl => gl,
            GroupFamily::Sl => gl / (q - 1),
            GroupFamily::Sp => sp_like(m),
            GroupFamily::Gu => gu,
            GroupFamily::Su => gu / (q + 1),
            GroupFamily::O(s) => o(s),
            GroupFamily::So(s) | GroupFamily::Omega(s) => o(s) / 2,
        }
    }

    /// Number of distinct labels, i.e. `|I_n(q) : L_n(q)|`.
    pub fn label_count(&self) -> u32 {
        match self.ambient().family {
            GroupFamily::Gl => self.q - 1,
            GroupFamily::Gu => self.q + 1,
            GroupFamily::Sp => 1,
            _ => 2,
        }
    }

    /// Coset label of `g` in `I_n(q) / L_n(q)`.
    pub fn label(&self, g: &Matrix, f: &Field) -> u32 {
        match self.ambient().family {
            GroupFamily::Gl => f.discrete_log(g.det(f)).expect("invertible"),
            GroupFamily::Gu => f.discrete_log(g.det(f)).expect("invertible") / (self.q - 1),
            GroupFamily::Sp => 0,
            _ => {
                if self.q.is_multiple_of(2) {
                    let rank = g.sub(&Matrix::identity(self.n), f).rank(f);
                    (rank % 2) as u32
                } else {
                    u32::from(g.det(f) != FieldElement::ONE)
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        format!("{}_{}({})", self.family.name(), self.n, self.q)
    }
}

/// Immutable list of group elements with a hash index and coset labels.
#[derive(Clone, Debug)]
pub struct GroupTable {
    spec: Option<GroupSpec>,
    field: Field,
    n: usize,
    projective: bool,
    data: Vec<u8>,
    index: HashMap<u64, u32>,
    labels: Vec<u32>,
    generators: Vec<Matrix>,
}

impl GroupTable {
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Elements are normalized representatives modulo scalars.
    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.n * self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn element(&self, i: usize) -> Matrix {
        let nn = self.n * self.n;
        Matrix::from_entries(self.n, self.data[i * nn..(i + 1) * nn].iter().map(|&b| FieldElement(b)).collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn index_of(&self, g: &Matrix) -> Option<usize> {
        let g = if self.projective { normalize(g, &self.field) } else { g.clone() };
        self.index.get(&g.key(self.field.size())?).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Matrix) -> bool {
        self.index_of(g).is_some()
    }

    /// Coset labels; empty for tables without a spec.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> u32 {
        self.labels.get(i).copied().unwrap_or(0)
    }

    /// Generators actually used by the closure.
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Generators of the label-0 subgroup `L_n(q)`.
    pub fn kernel_generators(&self) -> Vec<Matrix> {
        match self.spec {
            Some(spec) if self.labels.iter().any(|&l| l != 0) => restrict_to_label(self, spec.kernel(), 0).generators,
            _ => self.generators.clone(),
        }
    }

    /// Indices of elements with the given label.
    pub fn coset(&self, label: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.label(i) == label).collect()
    }

    /// Product in the table's group (normalized when projective).
    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let p = a.mul(b, &self.field);
        if self.projective {
            normalize(&p, &self.field)
        } else {
            p
        }
    }

    /// Binary serialization: magic, layout tag, spec, element count, entries.
    pub fn encode(&self) -> Result<Vec<u8>> {
        let Some(spec) = self.spec else {
            bail!(Argument, "only tables built from a spec can be serialized");
        };
        let mut out = Vec::with_capacity(32 + self.data.len());
        out.extend_from_slice(CACHE_MAGIC);
        out.push(CACHE_LAYOUT);
        let (fam, sign) = family_code(spec.family);
        out.extend_from_slice(&[fam, sign, spec.n as u8]);
        out.extend_from_slice(&spec.q.to_le_bytes());
        out.extend_from_slice(&(self.len() as u64).to_le_bytes());
        out.extend_from_slice(&self.data);
        for g in &self.generators {
            out.extend(g.entries().iter().map(|e| e.0));
        }
        Ok(out)
    }

    /// Inverse of [`GroupTable::encode`]; the element count must match
    /// `expected` and the order formula.
    pub fn decode(bytes: &[u8], expected: &GroupSpec) -> Result<Self> {
        let bad = || Error::Domain("malformed group-table cache".into());
        if bytes.len() < 24 || &bytes[..8] != CACHE_MAGIC || bytes[8] != CACHE_LAYOUT {
            return Err(bad());
        }
        let family = family_from_code(bytes[9], bytes[10]).ok_or_else(bad)?;
        let n = bytes[11] as usize;
        let q = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
        let count = u64::from_le_bytes(bytes[16..24].try_into().unwrap()) as usize;
        let spec = GroupSpec::new(family, n, q)?;
        if spec != *expected {
            bail!(Domain, "cache holds {} instead of {}", spec.describe(), expected.describe());
        }
        if count as u128 != spec.order() {
            bail!(Domain, "cached element count {count} differs from the order formula");
        }
        let nn = n * n;
        let body = &bytes[24..];
        if body.len() < count * nn || !(body.len() - count * nn).is_multiple_of(nn) {
            return Err(bad());
        }
        let field = spec.field()?;
        let data = body[..count * nn].to_vec();
        if data.iter().any(|&b| b as u32 >= field.size()) {
            return Err(bad());
        }
        let generators = body[count * nn..]
            .chunks(nn)
            .map(|c| Matrix::from_entries(n, c.iter().map(|&b| FieldElement(b)).collect()))
            .collect();
        let mut t = GroupTable {
            spec: Some(spec),
            field,
            n,
            projective: false,
            data,
            index: HashMap::new(),
            labels: Vec::new(),
            generators,
        };
        t.reindex();
        if t.index.len() != count {
            return Err(bad());
        }
        t.relabel();
        Ok(t)
    }

    fn reindex(&mut self) {
        let q = self.field.size();
        let nn = self.n * self.n;
        self.index = self.data.chunks(nn).enumerate().map(|(i, c)| (raw_key(c, q), i as u32)).collect();
    }

    fn relabel(&mut self) {
        if let Some(spec) = self.spec {
            self.labels = (0..self.len()).map(|i| spec.label(&self.element(i), &self.field)).collect();
        }
    }
}

const CACHE_MAGIC: &[u8; 8] = b"FXFGRP01";
const CACHE_LAYOUT: u8 = 1;

fn family_code(f: GroupFamily) -> (u8, u8) {
    let s = |s: Sign| match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
        Sign::Circ => 2,
    };
    match f {
        GroupFamily::Gl => (0, 0),
        GroupFamily::Sl => (1, 0),
        GroupFamily::Sp => (2, 0),
        GroupFamily::Gu => (3, 0),
        GroupFamily::Su => (4, 0),
        GroupFamily::O(x) => (5, s(x)),
        GroupFamily::So(x) => (6, s(x)),
        GroupFamily::Omega(x) => (7, s(x)),
    }
}

fn family_from_code(a: u8, b: u8) -> Option<GroupFamily> {
    let s = match b {
        0 => Sign::Plus,
        1 => Sign::Minus,
        2 => Sign::Circ,
        _ => return None,
    };
    Some(match a {
        0 => GroupFamily::Gl,
        1 => GroupFamily::Sl,
        2 => GroupFamily::Sp,
        3 => GroupFamily::Gu,
        4 => GroupFamily::Su,
        5 => GroupFamily::O(s),
        6 => GroupFamily::So(s),
        7 => GroupFamily::Omega(s),
        _ => return None,
    })
}

#[inline]
fn raw_key(entries: &[u8], q: u32) -> u64 {
    entries.iter().rev().fold(0u64, |k, &x| k * q as u64 + x as u64)
}

fn mul_raw(a: &[u8], b: &[u8], out: &mut [u8], n: usize, f: &Field) {
    for i in 0..n {
        for j in 0..n {
            let mut s = FieldElement::ZERO;
            for k in 0..n {
                s = f.add(s, f.mul(FieldElement(a[i * n + k]), FieldElement(b[k * n + j])));
            }
            out[i * n + j] = s.0;
        }
    }
}

fn normalize_raw(m: &mut [u8], f: &Field) {
    if let Some(&lead) = m.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = f.inv_nonzero(FieldElement(lead));
            for x in m.iter_mut() {
                *x = f.mul(FieldElement(*x), inv).0;
            }
        }
    }
}

/// Representative of `g` modulo scalars: first nonzero entry equal to 1.
pub fn normalize(g: &Matrix, f: &Field) -> Matrix {
    let mut raw: Vec<u8> = g.entries().iter().map(|e| e.0).collect();
    normalize_raw(&mut raw, f);
    Matrix::from_entries(g.dim(), raw.into_iter().map(FieldElement).collect())
}

/// Result of a closure with a size cap.
#[derive(Clone, Debug)]
pub enum ClosureOutcome {
    Complete(GroupTable),
    /// More than `cap` elements were generated.
    CapExceeded { reached: usize },
}

struct Dimino<'a> {
    f: &'a Field,
    n: usize,
    projective: bool,
    data: Vec<u8>,
    index: HashMap<u64, u32>,
    gens: Vec<Matrix>,
}

impl<'a> Dimino<'a> {
    fn new(n: usize, f: &'a Field, projective: bool) -> Result<Self> {
        if !keys_fit(n, f.size()) {
            bail!(Resource, "{n}x{n} matrices over GF({}) do not fit the 64-bit key", f.size());
        }
        let id: Vec<u8> = Matrix::identity(n).entries().iter().map(|e| e.0).collect();
        let mut index = HashMap::new();
        index.insert(raw_key(&id, f.size()), 0);
        Ok(Dimino { f, n, projective, data: id, index, gens: Vec::new() })
    }

    fn len(&self) -> usize {
        self.data.len() / (self.n * self.n)
    }

    fn prepare(&self, g: &Matrix) -> Vec<u8> {
        let mut raw: Vec<u8> = g.entries().iter().map(|e| e.0).collect();
        if self.projective {
            normalize_raw(&mut raw, self.f);
        }
        raw
    }

    fn contains_raw(&self, raw: &[u8]) -> bool {
        self.index.contains_key(&raw_key(raw, self.f.size()))
    }

    /// Add all of `H x` for the current `H = data[..h_len]`.
    fn add_coset(&mut self, x: &[u8], h_len: usize, cap: usize) -> bool {
        let nn = self.n * self.n;
        let q = self.f.size();
        let mut buf = vec![0u8; nn];
        for h in 0..h_len {
            mul_raw(&self.data[h * nn..(h + 1) * nn], x, &mut buf, self.n, self.f);
            if self.projective {
                normalize_raw(&mut buf, self.f);
            }
            let k = raw_key(&buf, q);
            let next = self.len() as u32;
            if self.index.insert(k, next).is_none() {
                self.data.extend_from_slice(&buf);
                if self.len() > cap {
                    return false;
                }
            }
        }
        true
    }

    /// Extend by a generator; false once the cap is exceeded.
    fn extend(&mut self, g: &Matrix, cap: usize) -> bool {
        let graw = self.prepare(g);
        if self.contains_raw(&graw) {
            return true;
        }
        self.gens.push(g.clone());
        let nn = self.n * self.n;
        let h_len = self.len();
        let mut reps: Vec<Vec<u8>> = vec![self.data[..nn].to_vec()];
        if !self.add_coset(&graw, h_len, cap) {
            return false;
        }
        reps.push(graw);
        let gens: Vec<Vec<u8>> = self.gens.iter().map(|s| self.prepare(s)).collect();
        let mut buf = vec![0u8; nn];
        let mut i = 0;
        while i < reps.len() {
            for s in &gens {
                mul_raw(&reps[i], s, &mut buf, self.n, self.f);
                if self.projective {
                    normalize_raw(&mut buf, self.f);
                }
                if !self.contains_raw(&buf) {
                    let x = buf.clone();
                    if !self.add_coset(&x, h_len, cap) {
                        return false;
                    }
                    reps.push(x);
                }
            }
            i += 1;
        }
        true
    }

    fn into_table(self, spec: Option<GroupSpec>) -> GroupTable {
        let mut t = GroupTable {
            spec,
            field: self.f.clone(),
            n: self.n,
            projective: self.projective,
            data: self.data,
            index: self.index,
            labels: Vec::new(),
            generators: self.gens,
        };
        t.relabel();
        t
    }
}

/// The group generated by `gens`, or a cap signal once it has more than
/// `cap` elements. With `projective`, matrices are taken modulo scalars.
pub fn subgroup_closure(gens: &[Matrix], f: &Field, cap: usize, projective: bool) -> Result<ClosureOutcome> {
    let n = gens.first().map_or(1, |g| g.dim());
    for g in gens {
        if g.dim() != n {
            bail!(Argument, "generators of different dimensions");
        }
        if !g.is_invertible(f) {
            bail!(Argument, "generator is singular");
        }
    }
    let mut d = Dimino::new(n, f, projective)?;
    for g in gens {
        if !d.extend(g, cap) {
            return Ok(ClosureOutcome::CapExceeded { reached: d.len() });
        }
    }
    Ok(ClosureOutcome::Complete(d.into_table(None)))
}

/// Enumerate `I_n(q)` for a spec, checking the order formula and form
/// preservation of every element.
pub fn build_group(spec: &GroupSpec, cap: u64) -> Result<GroupTable> {
    let order = spec.order();
    let ambient = spec.ambient();
    if ambient.order() > cap as u128 {
        bail!(Resource, "{} has {} elements, above the cap {cap}", ambient.describe(), ambient.order());
    }
    let f = spec.field()?;
    let form = spec.form(&f)?;
    let (build, filter) = match spec.family {
        GroupFamily::Sl => (*spec, false),
        GroupFamily::Su | GroupFamily::So(_) | GroupFamily::Omega(_) => (ambient, true),
        _ => (*spec, false),
    };
    let target = build.order() as usize;
    let mut d = Dimino::new(spec.n, &f, false)?;
    for c in candidates(&build, &f, &form) {
        if d.len() == target {
            break;
        }
        if !d.extend(&c, target) {
            bail!(Construction, "closure of {} exceeded the order formula {target}", build.describe());
        }
    }
    if d.len() != target {
        bail!(Construction, "generators of {} give {} elements, expected {target}", build.describe(), d.len());
    }
    let mut table = d.into_table(Some(build));
    if filter {
        table = restrict_to_label(&table, *spec, 0);
    }
    if table.len() as u128 != order {
        bail!(Construction, "{} has {} elements, expected {order}", spec.describe(), table.len());
    }
    let id = Matrix::identity(spec.n);
    for g in table.elements() {
        if !form.preserved_by(&g, &f) {
            bail!(Construction, "element of {} does not preserve the form", spec.describe());
        }
        debug_assert!(g != id || table.index_of(&g) == Some(0));
    }
    Ok(table)
}

fn restrict_to_label(t: &GroupTable, spec: GroupSpec, label: u32) -> GroupTable {
    let nn = t.n * t.n;
    let mut data = Vec::new();
    for i in 0..t.len() {
        if t.label(i) == label {
            data.extend_from_slice(&t.data[i * nn..(i + 1) * nn]);
        }
    }
    let mut out = GroupTable {
        spec: Some(spec),
        field: t.field.clone(),
        n: t.n,
        projective: false,
        data,
        index: HashMap::new(),
        labels: Vec::new(),
        generators: Vec::new(),
    };
    out.reindex();
    out.relabel();
    out.generators = generators_within(&out);
    out
}

/// Greedy generating set for an already enumerated group.
fn generators_within(t: &GroupTable) -> Vec<Matrix> {
    let Ok(mut d) = Dimino::new(t.n, &t.field, t.projective) else {
        return Vec::new();
    };
    for g in t.elements() {
        if d.len() == t.len() {
            break;
        }
        d.extend(&g, t.len());
    }
    d.gens
}

/// `I + c v w^T`.
fn rank_one_update(v: &[FieldElement], w: &[FieldElement], c: FieldElement, f: &Field) -> Matrix {
    let n = v.len();
    Matrix::from_fn(n, |i, j| {
        let d = if i == j { FieldElement::ONE } else { FieldElement::ZERO };
        f.add(d, f.mul(c, f.mul(v[i], w[j])))
    })
}

/// Candidate generators, in the order they are tried.
fn candidates(spec: &GroupSpec, f: &Field, form: &FormSpec) -> Vec<Matrix> {
    let n = spec.n;
    let zeta = f.generator();
    let e = f.degree();
    let mut out = Vec::new();
    let nonzero = || all_vectors(n, f).filter(|v| v.iter().any(|x| !x.is_zero()));
    match spec.family {
        GroupFamily::Gl | GroupFamily::Sl => {
            if spec.family == GroupFamily::Gl {
                let mut d = vec![FieldElement::ONE; n];
                d[0] = zeta;
                out.push(Matrix::diagonal(&d));
            }
            for k in 0..e {
                let a = f.exp(k as i64);
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let mut t = Matrix::identity(n);
                            t.set(i, j, a);
                            out.push(t);
                        }
                    }
                }
            }
        }
        GroupFamily::Sp => {
            // x -> x + a B(x, v) v
            let scalars: Vec<FieldElement> =
                if f.characteristic() == 2 { vec![FieldElement::ONE] } else { vec![FieldElement::ONE, zeta] };
            for v in nonzero() {
                // B(x, v) = x^T J v = (J v) . x
                let jv = form.gram.apply(&v, f);
                for &a in &scalars {
                    out.push(rank_one_update(&v, &jv, a, f));
                }
            }
        }
        GroupFamily::Gu | GroupFamily::Su => {
            let q0 = spec.q as u64;
            let sigma = |x: FieldElement| f.pow(x, q0);
            let trace_zero: Vec<FieldElement> =
                f.elements().filter(|&a| !a.is_zero() && f.add(a, sigma(a)).is_zero()).collect();
            let lambda = f.exp((spec.q - 1) as i64);
            for v in nonzero() {
                let sv: Vector = v.iter().map(|&x| sigma(x)).collect();
                let w = form.gram.apply(&sv, f);
                let h = form.bilinear(&v, &v, f);
                if h.is_zero() {
                    for &a in &trace_zero {
                        out.push(rank_one_update(&v, &w, a, f));
                    }
                } else {
                    let c = f.mul(f.sub(lambda, FieldElement::ONE), f.inv_nonzero(h));
                    out.push(rank_one_update(&v, &w, c, f));
                }
            }
        }
        GroupFamily::O(_) | GroupFamily::So(_) | GroupFamily::Omega(_) => {
            // reflections (odd q) or orthogonal transvections (even q):
            // x -> x - B(x, v)/Q(v) v
            for v in nonzero() {
                let qv = form.q_value(&v, f);
                if qv.is_zero() {
                    continue;
                }
                let bv = form.gram.apply(&v, f);
                out.push(rank_one_update(&v, &bv, f.neg(f.inv_nonzero(qv)), f));
            }
            if f.characteristic() == 2 {
                // Eichler maps x -> x + B(x,u) w - B(x,w) u - Q(w) B(x,u) u
                let singular: Vec<Vector> = nonzero().filter(|u| form.q_value(u, f).is_zero()).collect();
                for u in &singular {
                    let bu = form.gram.apply(u, f);
                    for w in nonzero() {
                        if !form.bilinear(&w, u, f).is_zero() {
                            continue;
                        }
                        let bw = form.gram.apply(&w, f);
                        let qw = form.q_value(&w, f);
                        let m = rank_one_update(&w, &bu, FieldElement::ONE, f)
                            .add(&rank_one_update(u, &bw, f.neg(FieldElement::ONE), f), f)
                            .sub(&Matrix::identity(n), f)
                            .add(&rank_one_update(u, &bu, f.neg(qw), f), f)
                            .sub(&Matrix::identity(n), f);
                        if m.is_invertible(f) && !m.is_identity() {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Visit every element of `GL_n(q)` without storing the group. Rows are
/// chosen one at a time outside the span of the previous rows.
pub fn for_each_gl(n: usize, f: &Field, visit: impl FnMut(&Matrix)) {
    for_each_gl_shard(n, f, 0, 1, visit);
}

/// The part of [`for_each_gl`] whose first row has index `≡ shard (mod shards)`;
/// the shards partition the group.
pub fn for_each_gl_shard(n: usize, f: &Field, shard: usize, shards: usize, mut visit: impl FnMut(&Matrix)) {
    let vectors: Vec<Vector> = all_vectors(n, f).collect();
    let mut rows: Vec<usize> = Vec::with_capacity(n);
    // echelon[i]: reduced copies of rows[..=i] with pivot columns
    let mut echelon: Vec<(Vector, usize)> = Vec::with_capacity(n);
    let mut m = Matrix::identity(n);
    fn reduce(v: &[FieldElement], ech: &[(Vector, usize)], f: &Field) -> Vector {
        let mut v = v.to_vec();
        for (r, p) in ech {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        shard: (usize, usize),
        depth: usize,
        n: usize,
        f: &Field,
        vectors: &[Vector],
        rows: &mut Vec<usize>,
        ech: &mut Vec<(Vector, usize)>,
        m: &mut Matrix,
        visit: &mut dyn FnMut(&Matrix),
    ) {
        if depth == n {
            visit(m);
            return;
        }
        for (vi, v) in vectors.iter().enumerate() {
            if depth == 0 && vi % shard.1 != shard.0 {
                continue;
            }
            let r = reduce(v, ech, f);
            let Some(p) = r.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let inv = f.inv_nonzero(r[p]);
            let r: Vector = r.iter().map(|&x| f.mul(x, inv)).collect();
            for (j, &x) in v.iter().enumerate() {
                m.set(depth, j, x);
            }
            rows.push(vi);
            ech.push((r, p));
            rec(shard, depth + 1, n, f, vectors, rows, ech, m, visit);
            ech.pop();
            rows.pop();
        }
    }
    assert!(shard < shards);
    rec((shard, shards), 0, n, f, &vectors, &mut rows, &mut echelon, &mut m, &mut visit);
}
