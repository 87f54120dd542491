use anyhow::Result;
use fixfree_core::group::{subgroup_closure, ClosureOutcome, GroupFamily, GroupSpec, GroupTable, DEFAULT_CAP};
use fixfree_core::stats::{three_halves_generation, weyl_exact, weyl_trend, Estimate};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{float, Context};
use crate::args::{ProbeArgs, WeylArgs};
use crate::report::{rational, Report};

/// Exact enumeration is only attempted up to this `m` (`m! 2^m` elements).
const WEYL_EXACT_MAX: usize = 8;

fn psl2(ctx: &Context, q: u32) -> Result<GroupTable> {
    let sl = ctx.table(&GroupSpec::new(GroupFamily::Sl, 2, q)?, DEFAULT_CAP)?;
    match subgroup_closure(sl.generators(), sl.field(), DEFAULT_CAP as usize, true)? {
        ClosureOutcome::Complete(t) => Ok(t),
        ClosureOutcome::CapExceeded { .. } => Err(fixfree_core::Error::Resource(format!("PSL_2({q}) exceeds the cap")).into()),
    }
}

fn sampled(e: &Option<Estimate>) -> [Value; 3] {
    match e {
        Some(Estimate::Sampled { value, lo, hi, .. }) => [float(*value), float(*lo), float(*hi)],
        _ => [Value::Null, Value::Null, Value::Null],
    }
}

pub fn probe(ctx: &Context, a: &ProbeArgs) -> Result<Report> {
    let g = psl2(ctx, a.q)?;
    let (every, classes) = three_halves_generation(&g, a.trials, a.seed.unwrap_or(0))?;
    let mut r = Report::new(
        "probe",
        &["element_order", "class_size", "exact", "sampled", "sampled_lo", "sampled_hi"],
    );
    r.set("group", format!("psl_2({})", a.q)).set("order", g.len()).set("three_halves_generated", every);
    r.require(every);
    for c in &classes {
        let positive = !c.exact.is_zero()
            && match &c.sampled {
                Some(Estimate::Sampled { lo, .. }) => *lo > 0.0,
                _ => true,
            };
        r.require(positive);
        let [v, lo, hi] = sampled(&c.sampled);
        r.row(vec![json!(c.element_order), json!(c.class_size), rational(&c.exact), v, lo, hi]);
    }
    Ok(r)
}

pub fn weyl(a: &WeylArgs) -> Result<Report> {
    let (rows, separated) = weyl_trend(&a.m, a.trials, a.seed)?;
    let mut r = Report::new("weyl", &["m", "exact", "estimate", "lo", "hi"]);
    r.set("trials", a.trials).set("decreasing_with_disjoint_intervals", separated);
    for (m, est) in rows {
        let exact = if m <= WEYL_EXACT_MAX { Some(weyl_exact(m)?) } else { None };
        let [v, lo, hi] = sampled(&Some(est.clone()));
        if let Some(e) = &exact {
            r.require(est.covers(e.to_f64().unwrap_or(f64::NAN)));
        }
        r.row(vec![
            json!(m),
            exact.as_ref().map_or(Value::Null, rational),
            v,
            lo,
            hi,
        ]);
    }
    Ok(r)
}
