use anyhow::Result;
use fixfree_core::action::{enumerate_action, ActionSpec, SubspaceKind, DEFAULT_POINT_CAP};
use fixfree_core::forms::Sign;
use fixfree_core::group::{GroupFamily, GroupSpec, DEFAULT_CAP};
use fixfree_core::limits::bound_suite;
use fixfree_core::membership::{gl_tau_member, membership_set, Coset};
use fixfree_core::series::{gl_no_small_factor_series, linear_identity_check, sl_coset_series, unitary_identity_check};
use fixfree_core::stats::{
    brute_force_symmetric_a, brute_force_symmetric_expectation, coset_average_fixed_points, expectation_inequality,
    fpr_actions, fpr_bound_check, inverse_transpose_identity_check, orthogonal_reflection_identity_check,
    symmetric_a, symmetric_expectation, ProportionQuery, Twisted,
};
use num_traits::One;
use serde_json::{json, Value};

use super::{float, ratio, usage, Context};
use crate::args::{parse_action, parse_coset, parse_family, parse_sign, Suite, VerifyArgs};
use crate::parallel::sharded_count;
use crate::report::{rational, Report};

/// Largest `n` for which the symmetric suite enumerates `S_n`.
const SYMMETRIC_BRUTE_MAX: usize = 9;

struct Params<'a> {
    a: &'a VerifyArgs,
}

impl Params<'_> {
    fn n(&self, default: usize) -> usize {
        self.a.n.unwrap_or(default)
    }
    fn q(&self, default: u32) -> u32 {
        self.a.q.unwrap_or(default)
    }
    fn t(&self, default: usize) -> usize {
        self.a.t.unwrap_or(default)
    }
    fn family(&self) -> Result<GroupFamily> {
        let f = self.a.family.as_deref().ok_or_else(|| usage("this suite needs --family"))?;
        parse_family(f).map_err(usage)
    }
    fn sign(&self) -> Result<Sign> {
        let s = self.a.sign.as_deref().ok_or_else(|| usage("this suite needs --sign"))?;
        parse_sign(s).map_err(usage)
    }
    fn action(&self) -> Result<ActionSpec> {
        let s = self.a.action.as_deref().ok_or_else(|| usage("this suite needs --action"))?;
        parse_action(s).map_err(usage)
    }
    fn coset(&self) -> Result<Coset> {
        parse_coset(self.a.coset.as_deref().unwrap_or("all")).map_err(usage)
    }
}

pub fn verify(ctx: &Context, a: &VerifyArgs) -> Result<Report> {
    let p = Params { a };
    let mut r = match a.suite {
        Suite::ExactnessBridge => exactness_bridge(ctx, &p)?,
        Suite::Bounds => bounds(&p)?,
        Suite::Identities => identities(&p)?,
        Suite::InverseTranspose => inverse_transpose(ctx, &p)?,
        Suite::Orthogonal => orthogonal(&p)?,
        Suite::CosetAverage => coset_average(ctx, &p)?,
        Suite::Expectation => expectation(ctx, &p)?,
        Suite::Fpr => fpr(&p)?,
        Suite::Symmetric => symmetric(&p)?,
    };
    // a suite with nothing to check has not passed
    if r.passed.is_none() {
        r.require(false);
    }
    let failures = r.failing_rows().count();
    r.set("failures", failures);
    Ok(r)
}

fn verdict(ok: bool) -> Value {
    json!(ok)
}

/// Enumeration against the exact series, for `n = 1..=N`, the whole group
/// and every determinant coset.
fn exactness_bridge(ctx: &Context, p: &Params) -> Result<Report> {
    let (q, nmax, t) = (p.q(2), p.n(3), p.t(1));
    let mut r = Report::new("verify", &["n", "coset", "series", "enumeration", "passed"]);
    r.set("suite", "exactness-bridge");
    for n in 1..=nmax {
        let gl = gl_no_small_factor_series(q as u64, t, n)?;
        let mut cases = vec![(Coset::All, gl.coeff(n).clone())];
        for l in 0..q - 1 {
            cases.push((Coset::Label(l), sl_coset_series(q as u64, t, l as u64, n)?.coeff(n).clone()));
        }
        let spec = GroupSpec::new(GroupFamily::Gl, n, q)?;
        for (coset, series) in cases {
            let query = ProportionQuery { family: GroupFamily::Gl, n, q, t, coset };
            let hits = sharded_count(&query, ctx.threads)?;
            let denom = if coset == Coset::All { spec.order() } else { spec.kernel().order() };
            let exact = ratio(hits, denom);
            let ok = exact == series;
            r.require(ok);
            let name = match coset {
                Coset::Label(l) => format!("label:{l}"),
                _ => "all".into(),
            };
            r.row(vec![json!(n), json!(name), rational(&series), rational(&exact), verdict(ok)]);
        }
    }
    Ok(r)
}

fn bounds(p: &Params) -> Result<Report> {
    let qs = if p.a.qs.is_empty() { vec![2, 3, 4, 5, 7, 8, 9] } else { p.a.qs.clone() };
    let ts = if p.a.ts.is_empty() { vec![1, 2, 3, 4] } else { p.a.ts.clone() };
    let report = bound_suite(&qs, &ts, p.a.tol)?;
    let mut r = Report::new("verify", &["family", "q", "t", "check", "value_lo", "value_hi", "margin", "passed"]);
    r.set("suite", "bounds");
    for row in &report.rows {
        r.require(row.passed);
        r.row(vec![
            json!(row.kind.name()),
            json!(row.q),
            json!(row.t),
            json!(row.check),
            float(row.value.lo_f64()),
            float(row.value.hi_f64()),
            float(row.margin),
            verdict(row.passed),
        ]);
    }
    Ok(r)
}

/// The character-sum product identities behind the coset series.
fn identities(p: &Params) -> Result<Report> {
    // the unitary census enumerates polynomials over GF(q^2), so keep q^(2D) modest
    let qs = if p.a.qs.is_empty() { vec![2, 3, 4, 5] } else { p.a.qs.clone() };
    let degree = p.n(4);
    let mut r = Report::new("verify", &["identity", "q", "degree_bound", "roots_checked", "failures", "passed"]);
    r.set("suite", "identities");
    for &q in &qs {
        let checks = [("linear", linear_identity_check(q, degree)?), ("unitary", unitary_identity_check(q, degree)?)];
        for (name, c) in checks {
            r.require(c.holds());
            r.row(vec![
                json!(name),
                json!(q),
                json!(degree),
                json!(c.roots_checked),
                json!(format!("{:?}", c.failures)),
                verdict(c.holds()),
            ]);
        }
    }
    Ok(r)
}

fn identity_rows(r: &mut Report, rep: &fixfree_core::stats::IdentityReport) {
    r.set("identity", rep.name.clone()).set("lhs", rational(&rep.lhs)).set("rhs", rational(&rep.rhs));
    r.require(rep.holds());
    r.row(vec![json!("lhs"), rational(&rep.lhs), verdict(rep.holds())]);
    for (name, v) in &rep.terms {
        r.row(vec![json!(name), rational(v), Value::Null]);
    }
}

fn inverse_transpose(ctx: &Context, p: &Params) -> Result<Report> {
    let (n, q, t) = (p.n(4), p.q(2), p.t(1));
    let threads = ctx.threads;
    let count = move |query: &ProportionQuery| sharded_count(query, threads);
    let rep = inverse_transpose_identity_check(n, q, t, Some(&count))?;
    let mut r = Report::new("verify", &["term", "value", "passed"]);
    r.set("suite", "inverse-transpose");
    identity_rows(&mut r, &rep);
    Ok(r)
}

fn orthogonal(p: &Params) -> Result<Report> {
    let (n, q, t) = (p.n(6), p.q(2), p.t(1));
    let sign = match p.a.sign {
        Some(_) => p.sign()?,
        None if n % 2 == 1 => Sign::Circ,
        None => Sign::Plus,
    };
    let rep = orthogonal_reflection_identity_check(n, q, sign, t)?;
    let mut r = Report::new("verify", &["term", "value", "passed"]);
    r.set("suite", "orthogonal");
    identity_rows(&mut r, &rep);
    Ok(r)
}

fn table_and_domain(
    ctx: &Context,
    p: &Params,
) -> Result<(GroupSpec, fixfree_core::group::GroupTable, fixfree_core::action::ActionDomain)> {
    let spec = GroupSpec::new(p.family()?, p.n(3), p.q(2))?;
    let table = ctx.table(&spec, DEFAULT_CAP)?;
    let form = spec.form(table.field())?;
    let domain = enumerate_action(&form, table.field(), p.action()?, DEFAULT_POINT_CAP)?;
    Ok((spec, table, domain))
}

/// Average fixed points over each coset of the kernel. Transitive kernels
/// must give exactly 1; intransitive ones are reported without a verdict.
fn coset_average(ctx: &Context, p: &Params) -> Result<Report> {
    let (spec, table, domain) = table_and_domain(ctx, p)?;
    let mut r = Report::new("verify", &["label", "average", "kernel_orbits", "per_orbit", "passed"]);
    r.set("suite", "coset-average").set("group", spec.describe()).set("points", domain.len());
    for label in 0..spec.label_count() {
        let e = coset_average_fixed_points(&table, label, &domain)?;
        let ok = e.is_transitive().then(|| e.value.is_one());
        if let Some(ok) = ok {
            r.require(ok);
        }
        let per: Vec<String> = e.per_orbit.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect();
        r.row(vec![json!(label), rational(&e.value), json!(e.orbit_count), json!(per.join(" ")), json!(ok)]);
    }
    Ok(r)
}

/// `Pr[x and a share a fixed point] <= fpr(x) E[fp(a)]` for a spread of
/// nontrivial `x`, with the stability and transitivity preconditions.
fn expectation(ctx: &Context, p: &Params) -> Result<Report> {
    let (spec, table, domain) = table_and_domain(ctx, p)?;
    let (t, coset) = (p.t(1), p.coset()?);
    let subset: Vec<Twisted> = if coset == Coset::Tau {
        if spec.family != GroupFamily::Gl {
            return Err(usage("the τ-coset lives in GL"));
        }
        table.elements().filter(|g| gl_tau_member(g, t, table.field())).map(|g| (g, true)).collect()
    } else {
        membership_set(&table, t, coset)?.into_iter().map(|i| (table.element(i), false)).collect()
    };
    let kernel = table.kernel_generators();
    let nontrivial: Vec<usize> = (0..table.len()).filter(|&i| !table.element(i).is_identity()).collect();
    let samples = p.a.samples.clamp(1, nontrivial.len().max(1));
    let mut r = Report::new(
        "verify",
        &["x", "probability", "fpr_x", "expectation", "bound", "stable", "transitive", "passed"],
    );
    r.set("suite", "expectation").set("group", spec.describe()).set("subset_size", subset.len()).set("points", domain.len());
    for s in 0..samples {
        let x = nontrivial[s * nontrivial.len() / samples];
        let rep = expectation_inequality(&subset, &(table.element(x), false), &domain, &kernel)?;
        r.require(rep.verified());
        r.row(vec![
            json!(x),
            rational(&rep.probability),
            rational(&rep.fpr_x),
            rational(&rep.expectation),
            rational(&rep.bound()),
            json!(rep.stable),
            json!(rep.transitive),
            verdict(rep.verified()),
        ]);
    }
    Ok(r)
}

fn action_label(a: ActionSpec) -> String {
    match a {
        ActionSpec::Subspaces { k, kind: SubspaceKind::Any } => format!("space:{k}"),
        ActionSpec::Flags { k } => format!("flag:{k}"),
        ActionSpec::Antiflags { k } => format!("antiflag:{k}"),
        other => format!("{other:?}"),
    }
}

fn fpr(p: &Params) -> Result<Report> {
    let (n, q) = (p.n(3), p.q(2));
    let summary = fpr_bound_check(n, q, None, &fpr_actions(n), !p.a.no_tau)?;
    let mut r = Report::new(
        "verify",
        &["action", "tau", "points", "elements", "bound", "bound_value", "max_fixed", "max_fpr", "margin", "passed"],
    );
    r.set("suite", "fpr").set("group", format!("gl_{n}({q})"));
    for rep in &summary.reports {
        r.require(rep.passed());
        r.row(vec![
            json!(action_label(rep.action)),
            json!(rep.tau),
            json!(rep.points),
            json!(rep.elements),
            json!(rep.bound.name()),
            rational(&rep.bound_value),
            json!(rep.max_fixed),
            rational(&rep.max_fpr()),
            float(rep.margin()),
            verdict(rep.passed()),
        ]);
    }
    Ok(r)
}

/// Cycle-count recursion against brute force over `S_m`, `m <= n`.
fn symmetric(p: &Params) -> Result<Report> {
    let (n, t) = (p.n(8), p.t(1));
    if n > SYMMETRIC_BRUTE_MAX {
        return Err(usage(format!("brute force over S_n needs n <= {SYMMETRIC_BRUTE_MAX}")));
    }
    let mut r = Report::new("verify", &["quantity", "m", "k", "recursion", "brute_force", "passed"]);
    r.set("suite", "symmetric").set("t", t);
    for m in 1..=n {
        let (dp, bf) = (symmetric_a(m, t), brute_force_symmetric_a(m, t));
        r.require(dp == bf);
        r.row(vec![json!("a_m(t)"), json!(m), Value::Null, rational(&dp), rational(&bf), verdict(dp == bf)]);
        for k in t..m {
            if 2 * k >= m {
                break;
            }
            let dp = symmetric_expectation(m, k, t)?;
            let bf = brute_force_symmetric_expectation(m, k, t);
            r.require(dp == bf);
            r.row(vec![json!("fixed k-sets"), json!(m), json!(k), rational(&dp), rational(&bf), verdict(dp == bf)]);
        }
    }
    Ok(r)
}
