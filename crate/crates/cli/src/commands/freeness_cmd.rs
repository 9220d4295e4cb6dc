use super::{load_group, load_subset, parse_rational, rational_str, CmdResult, Ctx};
use crate::report::{Check, GroupMeta, Report};
use qplab_core::freeness::{is_product_free, poor_certificate, poor_size_ratio, rational_to_f64};
use qplab_core::{max_product_free, SearchBudget, SearchMode};
use serde_json::json;
use std::path::Path;

/// `alpha`: maximum product-free subset search.
#[allow(clippy::too_many_arguments)]
pub fn alpha(
    ctx: &Ctx,
    path: &Path,
    heuristic: bool,
    node_cap: Option<u64>,
    time_cap: Option<f64>,
    exact_cap: Option<usize>,
) -> CmdResult {
    let (group, _) = load_group(path)?;
    let mut budget = SearchBudget {
        mode: if heuristic {
            SearchMode::Heuristic
        } else {
            SearchMode::Exact
        },
        exact_cap,
        seed: ctx.seed,
        ..SearchBudget::default()
    };
    if let Some(cap) = node_cap {
        budget.node_cap = cap;
    }
    if let Some(cap) = time_cap {
        budget.time_cap_s = cap;
    }
    let result = max_product_free(&group, &budget).map_err(|e| e.to_string())?;
    let free = is_product_free(&group, &result.witness);
    let mut report = Report::new("alpha");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.input("mode", json!(if heuristic { "heuristic" } else { "exact" }));
    report.output("alpha", json!(result.alpha));
    report.output("witness", json!(result.witness.as_indices()));
    report.output("exact", json!(result.exact));
    report.output("nodes", json!(result.nodes));
    report.check(Check::eq_flag("witness_product_free", free));
    Ok(report)
}

/// `poor`: certify a p-product-poor claim and report the size-ratio
/// constant when the claim is within the cube-root regime.
pub fn poor(_ctx: &Ctx, path: &Path, set_path: &Path, p: &str) -> CmdResult {
    let (group, _) = load_group(path)?;
    let set = load_subset(set_path, group.n())?;
    let claim = parse_rational(p)?;
    let cert = poor_certificate(&group, &set, claim.clone()).map_err(|e| e.to_string())?;
    let ratio = poor_size_ratio(&group, &set, claim.clone()).map_err(|e| e.to_string())?;
    let mut report = Report::new("poor");
    report.group = Some(GroupMeta::of(&group));
    report.input("set", json!(set_path.display().to_string()));
    report.input("p", json!(rational_str(&claim)));
    report.output("pair_count", json!(cert.pair_count));
    report.output("p_achieved", json!(rational_str(&cert.p_achieved)));
    report.output("p_achieved_f64", json!(rational_to_f64(&cert.p_achieved)));
    report.output("is_poor", json!(cert.is_poor));
    report.output("ratio_applicable", json!(ratio.applicable));
    if ratio.applicable {
        report.output("c_empirical", json!(ratio.c_empirical));
        report.output("delta", json!(ratio.delta));
    }
    // The decision itself is exact-rational; the lhs/rhs numbers are
    // renderings only.
    report.check(Check {
        name: "pair_count_within_claim".into(),
        lhs: cert.pair_count as f64,
        rhs: rational_to_f64(&cert.claim_p) * (set.len() as f64) * (set.len() as f64),
        relation: "<=".into(),
        holds: cert.is_poor,
    });
    Ok(report)
}
