use super::{load_group, read_file, CmdResult, Ctx};
use crate::report::{Check, GroupMeta, Report};
use qplab_core::group::families::GroupSpec;
use qplab_core::{conjugacy_classes, parse_cayley_table, write_cayley_table, Error};
use serde_json::json;
use std::path::Path;

/// `group build`: construct a named family and optionally write its table.
pub fn build(
    _ctx: &Ctx,
    family: &str,
    k: Option<usize>,
    q: Option<u32>,
    order_cap: Option<usize>,
    out_table: Option<&Path>,
) -> CmdResult {
    let descriptor = match (k, q) {
        (Some(k), None) => format!("{family} {k}"),
        (None, Some(q)) => format!("{family} {q}"),
        (None, None) => family.to_string(),
        (Some(_), Some(_)) => return Err("give at most one of --k and --q".into()),
    };
    let spec: GroupSpec = descriptor.parse().map_err(|e: Error| e.to_string())?;
    let group = match order_cap {
        Some(cap) => spec.build_capped(cap),
        None => spec.build(),
    }
    .map_err(|e| e.to_string())?;
    let mut report = Report::new("group build");
    report.group = Some(GroupMeta::of(&group));
    report.input("family", json!(descriptor));
    report.output("n", json!(group.n()));
    report.output("hash", json!(format!("{:016x}", group.hash())));
    report.output("validation", json!(group.validation().as_str()));
    if let Some(path) = out_table {
        std::fs::write(path, write_cayley_table(&group))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        report.output("table_file", json!(path.display().to_string()));
    }
    Ok(report)
}

/// `group info`: parse and summarize.
pub fn info(_ctx: &Ctx, path: &Path) -> CmdResult {
    let (group, action) = load_group(path)?;
    let classes = conjugacy_classes(&group);
    let mut report = Report::new("group info");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.output("n", json!(group.n()));
    report.output("hash", json!(format!("{:016x}", group.hash())));
    report.output("abelian", json!(group.is_abelian()));
    report.output("class_count", json!(classes.class_count()));
    report.output("class_sizes", json!(classes.sizes));
    report.output("validation", json!(group.validation().as_str()));
    if let Some(act) = action {
        report.output("natural_degree", json!(act.degree()));
        report.output("natural_transitive", json!(act.transitive()));
    }
    Ok(report)
}

/// `group validate`: law failures are reported as a failing check (exit 1),
/// while unparseable documents stay usage errors (exit 2).
pub fn validate(_ctx: &Ctx, path: &Path) -> CmdResult {
    let source = read_file(path)?;
    let mut report = Report::new("group validate");
    report.input("file", json!(path.display().to_string()));
    match parse_cayley_table(&source) {
        Ok(group) => {
            report.group = Some(GroupMeta::of(&group));
            report.output("validation", json!(group.validation().as_str()));
            report.check(Check::eq_flag("group_laws", true));
        }
        Err(Error::NotAGroup(msg)) => {
            report.output("failure", json!(msg));
            report.check(Check::eq_flag("group_laws", false));
        }
        Err(other) => return Err(format!("{}: {other}", path.display())),
    }
    Ok(report)
}
