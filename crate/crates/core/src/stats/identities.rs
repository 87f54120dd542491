use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_rational::BigRational;

use super::{ratio, proportion::count_gl_stream, ProportionQuery};
use crate::error::{bail, Result};
use crate::forms::Sign;
use crate::group::{build_group, GroupFamily, GroupSpec, DEFAULT_CAP};
use crate::membership::{membership_set, Coset};

/// Both sides of an exact identity between enumerated statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// The individual terms making up the right side.
    pub terms: Vec<(String, BigRational)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn set_size(family: GroupFamily, n: usize, q: u32, t: usize, coset: Coset) -> Result<(u128, GroupSpec)> {
    let spec = GroupSpec::new(family, n, q)?;
    let table = build_group(&spec, DEFAULT_CAP)?;
    Ok((membership_set(&table, t, coset)?.len() as u128, spec))
}

/// `a_n(q,t,GLτ,GL) = a_{n-δ}(q,t,Sp)` with `δ = n mod 2`, both sides by
/// enumeration. The left side streams `GL_n(q)`; `count` may replace that
/// stream, e.g. by a sharded parallel one.
pub fn inverse_transpose_identity_check(
    n: usize,
    q: u32,
    t: usize,
    count: Option<&dyn Fn(&ProportionQuery) -> Result<u128>>,
) -> Result<IdentityReport> {
    let m = n - n % 2;
    if m == 0 {
        bail!(Argument, "n must be at least 2");
    }
    let query = ProportionQuery { family: GroupFamily::Gl, n, q, t, coset: Coset::Tau };
    let hits = match count {
        Some(c) => c(&query)?,
        None => count_gl_stream(&query, 0, 1)?,
    };
    let gl = GroupSpec::new(GroupFamily::Gl, n, q)?.order();
    let lhs = ratio(hits, gl);
    let (sp_hits, sp) = set_size(GroupFamily::Sp, m, q, t, Coset::All)?;
    let rhs = ratio(sp_hits, sp.order());
    Ok(IdentityReport {
        name: format!("inverse-transpose n={n} q={q} t={t}"),
        lhs,
        terms: alloc::vec![(format!("a_{m}({q},{t},Sp)"), rhs.clone())],
        rhs,
    })
}

/// `a_n(q,t,O,O^ε) = (a_{n-δ}(q,t,S,O^+) + a_{n-δ}(q,t,S,O^-)) / 2` with
/// `δ = gcd(2, n)`, for `n >= 5`. Each `a` is normalized by the kernel
/// (`SO` or `Ω`) of its own group.
pub fn orthogonal_reflection_identity_check(n: usize, q: u32, sign: Sign, t: usize) -> Result<IdentityReport> {
    if n < 5 {
        bail!(Argument, "the reflection identity needs n >= 5, got {n}");
    }
    let delta = if n.is_multiple_of(2) { 2 } else { 1 };
    let (o_hits, o) = set_size(GroupFamily::O(sign), n, q, t, Coset::OrthogonalO)?;
    let lhs = ratio(o_hits, o.kernel().order());
    let mut terms = Vec::new();
    for s in [Sign::Plus, Sign::Minus] {
        let (hits, spec) = set_size(GroupFamily::O(s), n - delta, q, t, Coset::OrthogonalS)?;
        terms.push((format!("a_{}({q},{t},S,O{})", n - delta, s.symbol()), ratio(hits, spec.kernel().order())));
    }
    let rhs = (&terms[0].1 + &terms[1].1) / BigRational::from_integer(2.into());
    Ok(IdentityReport { name: format!("orthogonal-reflection n={n} q={q} {} t={t}", sign.symbol()), lhs, rhs, terms })
}
