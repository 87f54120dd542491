use anyhow::Result;
use fixfree_core::limits::{limit_value, q_infinity_limit, AsymptoticFamily, LimitFamily, LimitKind};
use fixfree_core::series::{gl_no_small_factor_series, sl_coset_series};
use serde_json::json;

use super::{approx, float, usage};
use crate::args::{LimitArgs, SeriesArgs};
use crate::report::{rational, Report};

fn q_infinity(kind: LimitKind, t: usize) -> f64 {
    match kind {
        LimitKind::GlProdu => q_infinity_limit(AsymptoticFamily::Gl, t),
        LimitKind::SuProductu => q_infinity_limit(AsymptoticFamily::Su, t),
        LimitKind::SpOdd | LimitKind::SpEven => q_infinity_limit(AsymptoticFamily::Sp, t),
        LimitKind::OHalf => q_infinity_limit(AsymptoticFamily::Sp, t) / 2.0,
    }
}

pub fn limit(a: &LimitArgs) -> Result<Report> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(usage(format!("tolerance must be positive, got {}", a.tol)));
    }
    let kind = LimitKind::parse(&a.family).ok_or_else(|| usage(format!("unknown limit family {}", a.family)))?;
    let fam = LimitFamily::new(kind, a.q, a.t)?;
    let e = limit_value(&fam, a.tol)?;
    let mut r = Report::new("limit", &["family", "q", "t", "lo", "hi", "lo_approx", "hi_approx"]);
    r.set("midpoint", float(e.mid_f64()))
        .set("width", approx(&e.width()))
        .set("truncation", json!(e.truncation))
        .set("rigorous", e.rigorous)
        .set("q_infinity_limit", float(q_infinity(kind, a.t)));
    r.row(vec![
        json!(kind.name()),
        json!(a.q),
        json!(a.t),
        rational(&e.lo),
        rational(&e.hi),
        float(e.lo_f64()),
        float(e.hi_f64()),
    ]);
    Ok(r)
}

pub fn series(a: &SeriesArgs) -> Result<Report> {
    let s = match (a.family.as_str(), a.label) {
        ("gl", None) => gl_no_small_factor_series(a.q, a.t, a.order)?,
        ("gl", Some(_)) => return Err(usage("--label selects an SL coset; use --family sl")),
        _ => sl_coset_series(a.q, a.t, a.label.unwrap_or(0), a.order)?,
    };
    let mut r = Report::new("series", &["n", "coefficient"]);
    for n in 1..=a.order {
        r.row(vec![json!(n), rational(s.coeff(n))]);
    }
    if a.order >= 1 {
        r.set("last", approx(s.coeff(a.order)));
    }
    Ok(r)
}
