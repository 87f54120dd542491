use anyhow::Result;
use fixfree_core::group::{GroupFamily, GroupSpec, DEFAULT_CAP};
use fixfree_core::membership::{membership_set, Coset};
use fixfree_core::stats::{self, Estimate, Method, ProportionQuery};
use serde_json::{json, Value};

use super::{approx, float, ratio, usage, Context};
use crate::args::{parse_coset, parse_family, MethodArg, ProportionArgs};
use crate::parallel::sharded_count;
use crate::presets;
use crate::report::{rational, Report};

/// Explicit flags first, then the preset, then the defaults.
fn resolve(a: &ProportionArgs) -> Result<ProportionQuery> {
    let preset = match &a.preset {
        Some(name) => Some(presets::find(name).ok_or_else(|| usage(format!("unknown preset `{name}`")))?),
        None => None,
    };
    let family = a.family.clone().or_else(|| preset.as_ref().map(|p| p.family.clone()));
    let family = family.ok_or_else(|| usage("--family or --preset is required"))?;
    let q = a.q.or(preset.as_ref().map(|p| p.q)).ok_or_else(|| usage("--q or --preset is required"))?;
    let t = a.t.or(preset.as_ref().map(|p| p.t)).ok_or_else(|| usage("--t or --preset is required"))?;
    let coset = a.coset.clone().or_else(|| preset.as_ref().map(|p| p.coset.clone())).unwrap_or_else(|| "all".into());
    Ok(ProportionQuery {
        family: parse_family(&family).map_err(usage)?,
        n: a.n,
        q,
        t,
        coset: parse_coset(&coset).map_err(usage)?,
    })
}

fn coset_name(c: Coset) -> String {
    match c {
        Coset::All => "all".into(),
        Coset::Label(l) => format!("label:{l}"),
        Coset::Tau => "tau".into(),
        Coset::OrthogonalS => "s".into(),
        Coset::OrthogonalO => "o".into(),
    }
}

/// Exact enumeration, streaming GL on `ctx.threads` shards and using the
/// table cache for the other families.
fn enumerate(ctx: &Context, q: &ProportionQuery) -> Result<Estimate> {
    let spec = GroupSpec::new(q.family, q.n, q.q)?;
    let linear = matches!(q.family, GroupFamily::Gl | GroupFamily::Sl);
    if linear && !matches!(q.coset, Coset::OrthogonalS | Coset::OrthogonalO) {
        let hits = sharded_count(q, ctx.threads)?;
        let denom = match q.coset {
            Coset::Label(_) => spec.kernel().order(),
            _ => spec.order(),
        };
        return Ok(Estimate::Exact(ratio(hits, denom)));
    }
    if q.coset == Coset::Tau {
        return Err(usage("the τ-coset lives in GL"));
    }
    let table = ctx.table(&spec, DEFAULT_CAP)?;
    let hits = membership_set(&table, q.t, q.coset)?.len() as u128;
    let denom = if q.coset == Coset::All { spec.order() } else { spec.kernel().order() };
    Ok(Estimate::Exact(ratio(hits, denom)))
}

pub fn proportion(ctx: &Context, a: &ProportionArgs) -> Result<Report> {
    let query = resolve(a)?;
    if query.t == 0 {
        return Err(usage("t must be at least 1"));
    }
    let method = match a.method {
        MethodArg::Enumeration => Method::Enumeration,
        MethodArg::Series => Method::Series,
        MethodArg::Montecarlo => {
            let seed = a.seed.ok_or_else(|| usage("Monte Carlo needs --seed"))?;
            Method::MonteCarlo { trials: a.trials, seed }
        }
    };
    let estimate = match method {
        Method::Enumeration => enumerate(ctx, &query)?,
        _ => stats::proportion(&query, method)?.estimate,
    };
    let mut r = Report::new(
        "proportion",
        &["family", "n", "q", "t", "coset", "method", "value", "lo", "hi"],
    );
    let (value, lo, hi) = match &estimate {
        Estimate::Exact(x) => {
            r.set("approx", approx(x));
            (rational(x), Value::Null, Value::Null)
        }
        Estimate::Sampled { value, lo, hi, hits, trials } => {
            r.set("hits", *hits).set("trials", *trials).set("confidence", 0.99);
            (float(*value), float(*lo), float(*hi))
        }
    };
    r.row(vec![
        json!(query.family.name()),
        json!(query.n),
        json!(query.q),
        json!(query.t),
        json!(coset_name(query.coset)),
        json!(method.name()),
        value,
        lo,
        hi,
    ]);
    Ok(r)
}
