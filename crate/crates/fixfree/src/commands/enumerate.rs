use anyhow::Result;
use fixfree_core::group::GroupSpec;
use fixfree_core::membership::{membership_set, Coset};
use serde_json::json;

use super::{big, ratio, Context};
use crate::args::{parse_family, EnumerateArgs};
use crate::presets;
use crate::report::{rational, Report};

pub fn enumerate(ctx: &Context, a: &EnumerateArgs) -> Result<Report> {
    let spec = GroupSpec::new(parse_family(&a.family).map_err(super::usage)?, a.n, a.q)?;
    let table = ctx.table(&spec, a.cap)?;
    let kernel = spec.kernel().order();
    let mut r = Report::new("enumerate", &["label", "coset_size", "members", "proportion"]);
    r.set("group", spec.describe())
        .set("elements", table.len())
        .set("formula_order", big(spec.order()))
        .set("kernel_order", big(kernel))
        .set("generators", table.generators().len())
        .set("labels", spec.label_count());
    r.require(table.len() as u128 == spec.order());
    for label in 0..spec.label_count() {
        let size = table.coset(label).len();
        let (members, prop) = match a.t {
            Some(t) => {
                let m = membership_set(&table, t, Coset::Label(label))?.len();
                (json!(m), rational(&ratio(m as u128, kernel)))
            }
            None => (json!(null), json!(null)),
        };
        r.row(vec![json!(label), json!(size), members, prop]);
    }
    Ok(r)
}

pub fn presets() -> Report {
    let mut r = Report::new("presets", &["name", "family", "q", "t", "coset", "note"]);
    for p in presets::presets() {
        r.row(vec![json!(p.name), json!(p.family), json!(p.q), json!(p.t), json!(p.coset), json!(p.note)]);
    }
    r
}
