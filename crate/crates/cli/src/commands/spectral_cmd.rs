use super::{load_group, load_subset, CmdResult, Ctx};
use crate::cache::subset_digest;
use crate::report::{Check, GroupMeta, Report};
use qplab_core::spectral::{spectral_report, SpectralReport, DEGREE_BOUND_TOL};
use qplab_core::{characters, parallel, BitSubset, FiniteGroup, SplitMix64};
use serde_json::{json, Value};
use std::path::Path;

/// `delta`: character degrees and the minimal nontrivial degree. Cached by
/// group hash.
pub fn delta(ctx: &Ctx, path: &Path) -> CmdResult {
    let (group, _) = load_group(path)?;
    let (value, cache_hit) = ctx.cache.get_or_compute(group.hash(), "degrees", || {
        let table = characters::character_degrees(&group).map_err(|e| e.to_string())?;
        let square_sum: usize = table.degrees.iter().map(|d| d * d).sum();
        Ok::<Value, String>(json!({
            "degrees": table.degrees,
            "delta": table.delta,
            "residual": table.residual,
            "square_sum": square_sum,
        }))
    })?;
    let mut report = Report::new("delta");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.output("delta", value["delta"].clone());
    report.output("degrees", value["degrees"].clone());
    report.output("residual", value["residual"].clone());
    if cache_hit {
        eprintln!("cache: hit");
    }
    report.check(Check::le(
        "degree_residual",
        value["residual"].as_f64().unwrap_or(f64::NAN),
        1e-6,
    ));
    report.check(Check::eq_flag(
        "degree_squares_sum_to_order",
        value["square_sum"].as_u64() == Some(group.n() as u64),
    ));
    Ok(report)
}

fn one_report_checks(rep: &SpectralReport) -> (f64, f64, f64) {
    let sigma_dev = (rep.sigma_max - rep.set_size as f64).abs() / rep.set_size as f64;
    let trace_dev =
        (rep.eigenvalue_sum() - rep.expected_trace()).abs() / rep.expected_trace().max(1.0);
    let margin = rep.lambda2 - rep.bound;
    (sigma_dev, trace_dev, margin)
}

/// `spectral` with an explicit subset file: full spectrum summary plus the
/// three identities. Cached by (group, subset).
pub fn spectral_set(ctx: &Ctx, path: &Path, set_path: &Path, debug_matrix: bool) -> CmdResult {
    let (group, _) = load_group(path)?;
    let set = load_subset(set_path, group.n())?;
    if set.is_empty() {
        return Err(format!("{}: subset is empty", set_path.display()));
    }
    let comp = format!("spectral-{:016x}", subset_digest(&set.as_indices()));
    let (value, cache_hit) = ctx.cache.get_or_compute(group.hash(), &comp, || {
        let rep = spectral_report(&group, &set).map_err(|e| e.to_string())?;
        let (sigma_dev, trace_dev, margin) = one_report_checks(&rep);
        let head: Vec<f64> = rep.eigenvalues.iter().take(8).copied().collect();
        Ok::<Value, String>(json!({
            "sigma_max": rep.sigma_max,
            "lambda2": rep.lambda2,
            "bound": rep.bound,
            "delta": rep.delta,
            "set_size": rep.set_size,
            "spectrum_head": head,
            "sigma_rel_dev": sigma_dev,
            "trace_rel_dev": trace_dev,
            "bound_margin": margin,
        }))
    })?;
    let mut report = Report::new("spectral");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.input("set", json!(set_path.display().to_string()));
    for key in [
        "sigma_max",
        "lambda2",
        "bound",
        "delta",
        "set_size",
        "spectrum_head",
    ] {
        report.output(key, value[key].clone());
    }
    if cache_hit {
        eprintln!("cache: hit");
    }
    if debug_matrix {
        let m = qplab_core::spectral::gram_matrix(&group, &set);
        let rows: Vec<String> = (0..m.n)
            .map(|i| {
                (0..m.n)
                    .map(|j| format!("{:.0}", m.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        report.output("matrix_debug", json!(rows.join("\n")));
    }
    push_spectral_checks(
        &mut report,
        value["sigma_rel_dev"].as_f64().unwrap(),
        value["trace_rel_dev"].as_f64().unwrap(),
        value["bound_margin"].as_f64().unwrap(),
    );
    Ok(report)
}

/// `spectral` over a batch of seeded random nonempty subsets; checks report
/// the worst case over the batch. Parallel over subsets.
pub fn spectral_random(ctx: &Ctx, path: &Path, count: usize, size: Option<usize>) -> CmdResult {
    let (group, _) = load_group(path)?;
    let n = group.n();
    if count == 0 {
        return Err("--random-count must be positive".into());
    }
    if let Some(s) = size {
        if s == 0 || s > n {
            return Err(format!("--random-size must lie in 1..={n}"));
        }
    }
    // Precompute delta once so workers only eigensolve.
    characters::character_degrees(&group).map_err(|e| e.to_string())?;
    let mut rng = SplitMix64::new(ctx.seed);
    let subsets: Vec<BitSubset> = (0..count)
        .map(|_| {
            let k = size.unwrap_or_else(|| rng.below(n) + 1);
            BitSubset::random_of_size(n, k, &mut rng)
        })
        .collect();
    let results = parallel::map_indexed(subsets.len(), ctx.threads, |i| {
        let rep = spectral_report(&group, &subsets[i]).map_err(|e| e.to_string())?;
        Ok::<(f64, f64, f64), String>(one_report_checks(&rep))
    });
    let mut worst = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for r in results {
        let (s, t, m) = r?;
        worst = (worst.0.max(s), worst.1.max(t), worst.2.max(m));
    }
    let mut report = Report::new("spectral");
    report.group = Some(GroupMeta::of(&group));
    report.input("file", json!(path.display().to_string()));
    report.input("random_count", json!(count));
    if let Some(s) = size {
        report.input("random_size", json!(s));
    }
    report.output("subsets_checked", json!(count));
    report.output("max_sigma_rel_dev", json!(worst.0));
    report.output("max_trace_rel_dev", json!(worst.1));
    report.output("max_bound_margin", json!(worst.2));
    push_spectral_checks(&mut report, worst.0, worst.1, worst.2);
    Ok(report)
}

fn push_spectral_checks(report: &mut Report, sigma_dev: f64, trace_dev: f64, margin: f64) {
    report.check(Check::le("sigma_max_matches_set_size", sigma_dev, 1e-8));
    report.check(Check::le("trace_identity", trace_dev, 1e-8));
    report.check(Check::le(
        "second_eigenvalue_bound",
        margin,
        DEGREE_BOUND_TOL,
    ));
}

/// `triple`: counting plus both triple bounds and the exact density bound.
pub fn triple(_ctx: &Ctx, path: &Path, a_path: &Path, b_path: &Path, c_path: &Path) -> CmdResult {
    let (group, _) = load_group(path)?;
    let n = group.n();
    let a = load_subset(a_path, n)?;
    let b = load_subset(b_path, n)?;
    let c = load_subset(c_path, n)?;
    let tc = qplab_core::freeness::count_solutions(&group, &a, &b, &c);
    let mut report = Report::new("triple");
    report.group = Some(GroupMeta::of(&group));
    report.input("a", json!(a_path.display().to_string()));
    report.input("b", json!(b_path.display().to_string()));
    report.input("c", json!(c_path.display().to_string()));
    report.output("count", json!(tc.count));
    report.output("r", json!(super::rational_str(&tc.r)));
    report.output("s", json!(super::rational_str(&tc.s)));
    report.output("t", json!(super::rational_str(&tc.t)));
    if let Some(p) = &tc.p {
        report.output("p", json!(super::rational_str(p)));
        report.output("p_f64", json!(qplab_core::freeness::rational_to_f64(p)));
    }
    if !a.is_empty() && !b.is_empty() && !c.is_empty() {
        let db = qplab_core::freeness::check_density_bound(&group, &a, &b, &c)
            .map_err(|e| e.to_string())?;
        report.output("density_bound_lhs", json!(db.lhs_f64));
        report.check(Check::le("density_bound", db.lhs_f64, 1.0 + 1e-9));
    }
    if !a.is_empty() {
        let tb = qplab_core::spectral::check_triple_bound(&group, &a, &b, &c)
            .map_err(|e| e.to_string())?;
        report.output("triple_bound_applicable", json!(tb.applicable));
        if tb.applicable {
            report.output("lambda2", json!(tb.lambda2));
            report.check(Check::le(
                "solution_free_spectral_bound",
                tb.product,
                tb.spectral_rhs + tb.tolerance,
            ));
            report.check(Check::le(
                "solution_free_degree_bound",
                tb.product,
                tb.delta_rhs + tb.tolerance,
            ));
        }
    }
    Ok(report)
}

#[allow(dead_code)]
pub fn group_of(path: &Path) -> Result<FiniteGroup, String> {
    Ok(load_group(path)?.0)
}
