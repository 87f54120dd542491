use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::action::{enumerate_action, ActionDomain, ActionSpec, SubspaceKind, DEFAULT_POINT_CAP};
use crate::error::{bail, Result};
use crate::forms::FormSpec;
use crate::group::{for_each_gl, GroupFamily, GroupTable};
use crate::matrix::Matrix;

/// Which upper bound applies to an action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `fpr < 2/q^k` on `k`-spaces, `k >= 2`, and on pairs whose smaller member is a `k`-space.
    Subspace,
    /// `fpr < 1/q + 1/q^{n-1}` on 1-spaces (and 1-flags/antiflags for `n < 4`).
    Point,
    /// `fpr < 1/q^2 + 4/q^{n-1}` on 1-flags and 1-antiflags, `n >= 4`.
    Improvement,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Subspace => "2/q^k",
            BoundKind::Point => "1/q+1/q^(n-1)",
            BoundKind::Improvement => "1/q^2+4/q^(n-1)",
        }
    }
}

fn inv_pow(q: u64, e: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(q).pow(e as u32))
}

/// The bound and its value for `GL_n(q)` acting on `action`. Pairs are
/// bounded through their smaller member: a fixed pair fixes that member.
pub fn fpr_bound(n: usize, q: u64, action: ActionSpec) -> Result<(BoundKind, BigRational)> {
    let (k, pair) = match action {
        ActionSpec::Subspaces { k, kind: SubspaceKind::Any } => (k, false),
        ActionSpec::Flags { k } | ActionSpec::Antiflags { k } => (k, true),
        _ => bail!(Argument, "fixed point ratio bounds are checked on plain subspace actions"),
    };
    if k == 0 || 2 * k > n {
        bail!(Argument, "k = {k} out of range for n = {n}");
    }
    Ok(if k >= 2 {
        (BoundKind::Subspace, inv_pow(q, k) * BigInt::from(2))
    } else if pair && n >= 4 {
        (BoundKind::Improvement, inv_pow(q, 2) + inv_pow(q, n - 1) * BigInt::from(4))
    } else {
        (BoundKind::Point, inv_pow(q, 1) + inv_pow(q, n - 1))
    })
}

/// The actions checked for `GL_n`: `k`-spaces, `k`-flags and `k`-antiflags
/// for `k <= n/2` (flags with `2k = n` coincide with `k`-spaces and are skipped).
pub fn fpr_actions(n: usize) -> Vec<ActionSpec> {
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        out.push(ActionSpec::Subspaces { k, kind: SubspaceKind::Any });
        if 2 * k < n {
            out.push(ActionSpec::Flags { k });
        }
        out.push(ActionSpec::Antiflags { k });
    }
    out
}

/// The worst element found for one action.
#[derive(Clone, Debug, PartialEq)]
pub struct FprReport {
    pub action: ActionSpec,
    pub tau: bool,
    pub points: usize,
    /// Elements scanned.
    pub elements: usize,
    pub bound: BoundKind,
    pub bound_value: BigRational,
    /// Largest fixed point count among scanned elements, and one witness.
    pub max_fixed: usize,
    pub witness: Option<Matrix>,
    pub violations: usize,
}

impl FprReport {
    pub fn max_fpr(&self) -> BigRational {
        BigRational::new(BigInt::from(self.max_fixed), BigInt::from(self.points))
    }

    /// `bound - max fpr`, positive when the bound holds.
    pub fn margin(&self) -> f64 {
        (&self.bound_value - self.max_fpr()).to_f64().unwrap_or(f64::NAN)
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FprSummary {
    pub reports: Vec<FprReport>,
}

impl FprSummary {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(FprReport::passed)
    }
}

fn scan(domain: &ActionDomain, bound: (BoundKind, BigRational), tau: bool, elements: &mut dyn FnMut(&mut dyn FnMut(&Matrix))) -> FprReport {
    let (kind, value) = bound;
    let points = domain.len();
    // fp/|Ω| < a/b  <=>  fp·b < a·|Ω|
    let lhs_scale = value.denom().clone();
    let rhs = value.numer() * BigInt::from(points);
    let mut report = FprReport {
        action: domain.spec,
        tau,
        points,
        elements: 0,
        bound: kind,
        bound_value: value,
        max_fixed: 0,
        witness: None,
        violations: 0,
    };
    elements(&mut |g: &Matrix| {
        if !tau && g.is_scalar() {
            return;
        }
        let fp = domain.fixed_points(g, tau);
        report.elements += 1;
        if fp > report.max_fixed || report.witness.is_none() {
            report.max_fixed = fp;
            report.witness = Some(g.clone());
        }
        if BigInt::from(fp) * &lhs_scale >= rhs {
            report.violations += 1;
        }
    });
    report
}

/// Exhaustive check of the fixed point ratio bounds for `GL_n(q)` on each
/// action: every non-scalar `g`, and every `gτ` where `τ` acts (flags,
/// antiflags, and `k`-spaces with `2k = n`). Pass a table, or `None` to
/// stream the group.
pub fn fpr_bound_check(
    n: usize,
    q: u32,
    table: Option<&GroupTable>,
    actions: &[ActionSpec],
    include_tau: bool,
) -> Result<FprSummary> {
    if let Some(t) = table {
        if t.spec().map(|s| s.family) != Some(GroupFamily::Gl) || t.dim() != n || t.field().size() != q {
            bail!(Argument, "the table must be GL_{n}({q})");
        }
    }
    let f = crate::field::Field::new(q)?;
    let form = FormSpec::none(n);
    let mut reports = Vec::new();
    for &action in actions {
        let bound = fpr_bound(n, q as u64, action)?;
        let domain = enumerate_action(&form, &f, action, DEFAULT_POINT_CAP)?;
        let taus: &[bool] = if include_tau && domain.supports_tau() { &[false, true] } else { &[false] };
        for &tau in taus {
            let mut each = |visit: &mut dyn FnMut(&Matrix)| match table {
                Some(t) => t.elements().for_each(|g| visit(&g)),
                None => for_each_gl(n, &f, |g| visit(g)),
            };
            reports.push(scan(&domain, bound.clone(), tau, &mut each));
        }
    }
    Ok(FprSummary { reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_by_action() {
        let (k, v) = fpr_bound(4, 2, ActionSpec::Antiflags { k: 1 }).unwrap();
        assert_eq!(k, BoundKind::Improvement);
        assert_eq!(v, BigRational::new(3.into(), 4.into()));
        let (k, v) = fpr_bound(4, 2, ActionSpec::Subspaces { k: 2, kind: SubspaceKind::Any }).unwrap();
        assert_eq!(k, BoundKind::Subspace);
        assert_eq!(v, BigRational::new(1.into(), 2.into()));
        assert_eq!(fpr_bound(3, 3, ActionSpec::Flags { k: 1 }).unwrap().0, BoundKind::Point);
        assert!(fpr_bound(4, 2, ActionSpec::Subspaces { k: 3, kind: SubspaceKind::Any }).is_err());
    }

    #[test]
    fn gl3_over_gf2_passes() {
        let s = fpr_bound_check(3, 2, None, &fpr_actions(3), true).unwrap();
        assert!(s.all_passed(), "{s:?}");
        // scalars excluded: only the identity at q = 2
        let plain = s.reports.iter().find(|r| !r.tau).unwrap();
        assert_eq!(plain.elements, 167);
        // a transvection fixes 3 of the 7 points
        assert_eq!(plain.max_fixed, 3);
        assert!(s.reports.iter().any(|r| r.tau));
    }
}
