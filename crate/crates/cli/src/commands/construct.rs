use super::{load_group, CmdResult, Ctx};
use crate::report::{Check, GroupMeta, Report};
use qplab_core::constructions::{coset_union_search, search_point_subsets, PointSearchMode};
use qplab_core::group::action::PermutationAction;
use qplab_core::{subgroups_and_min_index, MinIndex, SearchBudget};
use serde_json::json;
use std::path::Path;

/// `construct coset-union`: pick a proper subgroup (default: largest, i.e.
/// smallest index; `--index` filters), search the relation-free coset
/// union, and verify it product-free in G.
pub fn coset_union(
    ctx: &Ctx,
    path: &Path,
    index_filter: Option<usize>,
    node_cap: Option<u64>,
) -> CmdResult {
    let (group, _) = load_group(path)?;
    let mut budget = SearchBudget {
        seed: ctx.seed,
        ..SearchBudget::default()
    };
    if let Some(cap) = node_cap {
        budget.node_cap = cap;
    }
    let enumeration = subgroups_and_min_index(&group, &budget);
    let candidates: Vec<_> = enumeration
        .subgroups
        .iter()
        .filter(|h| h.is_proper() && h.order() > 1)
        .filter(|h| index_filter.map(|k| h.index() == k).unwrap_or(true))
        .collect();
    // Largest order first; the enumeration is sorted ascending, so take the
    // last. If only the trivial subgroup is proper (prime cyclic groups),
    // fall back to it.
    let chosen = match candidates.last() {
        Some(h) => *h,
        None => enumeration
            .subgroups
            .iter()
            .filter(|h| h.is_proper())
            .rfind(|h| index_filter.map(|k| h.index() == k).unwrap_or(true))
            .ok_or_else(|| "no proper subgroup matches the filter".to_string())?,
    };
    let union = coset_union_search(&group, chosen, &budget).map_err(|e| e.to_string())?;
    let mut report = Report::new("construct coset-union");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    if let Some(k) = index_filter {
        report.input("index", json!(k));
    }
    report.output("subgroup_order", json!(union.subgroup_order));
    report.output("index", json!(union.index));
    report.output("cosets", json!(union.chosen));
    report.output("union_size", json!(union.union_size));
    report.output("exact", json!(union.exact));
    report.output("achieved_ratio", json!(union.achieved_ratio));
    report.output(
        "min_proper_index",
        match enumeration.min_proper_index {
            MinIndex::Exact(m) => json!(m),
            MinIndex::Unknown => json!("unknown"),
        },
    );
    report.check(Check::eq_flag(
        "union_product_free",
        union.union_product_free,
    ));
    Ok(report)
}

/// `construct theorem25`: scan point subsets of a transitive action.
pub fn point_subsets(
    ctx: &Ctx,
    path: &Path,
    k: usize,
    action_kind: &str,
    sampled_trials: Option<usize>,
) -> CmdResult {
    let (group, natural) = load_group(path)?;
    let action = match action_kind {
        "regular" => PermutationAction::regular(&group),
        "natural" => natural.ok_or_else(|| {
            "--action natural needs a .gens input carrying its point action".to_string()
        })?,
        other => return Err(format!("unknown action kind {other:?}")),
    };
    let mode = match sampled_trials {
        Some(trials) => PointSearchMode::Sampled { trials },
        None => PointSearchMode::Exhaustive,
    };
    let rep =
        search_point_subsets(&group, &action, k, mode, ctx.seed).map_err(|e| e.to_string())?;
    let mut report = Report::new("construct theorem25");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.input("k", json!(k));
    report.input("action", json!(action_kind));
    if let Some(trials) = sampled_trials {
        report.input("trials", json!(trials));
    }
    report.output("m", json!(rep.m));
    report.output("k", json!(rep.k));
    // Points are 0-indexed internally; render 1-indexed.
    report.output(
        "t_best",
        json!(rep.t_best.iter().map(|p| p + 1).collect::<Vec<_>>()),
    );
    report.output("count_best", json!(rep.count_best));
    report.output("bound", json!(rep.bound));
    report.output("exhaustive", json!(rep.exhaustive));
    report.output("candidates", json!(rep.candidates.to_string()));
    if let Some(seed) = rep.seed {
        report.output("sample_seed", json!(seed));
    }
    report.check(Check::le(
        "count_within_bound",
        rep.count_best as f64,
        rep.bound,
    ));
    if rep.exhaustive {
        report.output("average_lhs", json!(rep.average_lhs.unwrap().to_string()));
        report.output("average_mid", json!(rep.average_mid.unwrap().to_string()));
        report.output("average_rhs", json!(rep.average_rhs.unwrap().to_string()));
        report.check(Check::eq_flag(
            "averaging_chain",
            rep.chain_holds.unwrap_or(false),
        ));
    }
    eprintln!(
        "min_count <= bound: {}",
        if (rep.count_best as f64) <= rep.bound {
            "PASS"
        } else {
            "FAIL"
        }
    );
    Ok(report)
}
