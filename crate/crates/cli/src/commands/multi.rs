use super::{load_group, load_subset, rational_str, read_file, CmdResult, Ctx};
use crate::report::{Check, GroupMeta, Report};
use qplab_core::multiparty::{
    check_gamma_hypotheses, check_m3_hypotheses, closed_form_f_table, find_witness_gamma,
    find_witness_m3, minimal_f_table, staged_witness_m3, validate_f_table, varset_indices,
    DensitySystem, FTable, WitnessResult,
};
use qplab_core::{BitSubset, FiniteGroup};
use serde::Deserialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const DEFAULT_M_CONST: f64 = 6.0;

#[derive(Deserialize)]
struct SystemFile {
    group: String,
    m: usize,
    constraints: Vec<ConstraintEntry>,
}

#[derive(Deserialize)]
struct ConstraintEntry {
    #[serde(rename = "F")]
    f: Vec<usize>,
    set: String,
}

pub type LoadedSystem = (FiniteGroup, usize, Vec<(Vec<usize>, BitSubset)>);

/// Parse a `.sys.json` document; set paths resolve relative to it, and the
/// literal "FULL" denotes the whole group.
pub fn load_system(path: &Path) -> Result<LoadedSystem, String> {
    let source = read_file(path)?;
    let parsed: SystemFile = serde_json::from_str(&source)
        .map_err(|e| format!("{}: line {}: {e}", path.display(), e.line()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let group_path: PathBuf = base.join(&parsed.group);
    let (group, _) = load_group(&group_path)?;
    let mut constraints = Vec::new();
    for entry in parsed.constraints {
        let set = if entry.set == "FULL" {
            BitSubset::full(group.n())
        } else {
            load_subset(&base.join(&entry.set), group.n())?
        };
        constraints.push((entry.f, set));
    }
    Ok((group, parsed.m, constraints))
}

fn witness_outputs(report: &mut Report, w: &WitnessResult) {
    report.output("found", json!(w.assignment.is_some()));
    report.output("assignment", json!(w.assignment));
    report.output(
        "satisfied",
        json!(w
            .satisfied
            .iter()
            .map(|&mask| varset_indices(mask))
            .collect::<Vec<_>>()),
    );
    report.output("nodes", json!(w.nodes));
    report.output("product_order", json!("ascending-index"));
}

/// `multi hypotheses`: the three pairwise products for m = 3 all-pairs
/// systems, plus the general (h,E) enumeration against f(m)/delta.
pub fn hypotheses(_ctx: &Ctx, system: &Path, m_const: Option<f64>, f2: Option<f64>) -> CmdResult {
    let (group, m, constraints) = load_system(system)?;
    let sys = DensitySystem::new(&group, m, constraints).map_err(|e| e.to_string())?;
    let mut report = Report::new("multi hypotheses");
    report.group = Some(GroupMeta::of(&group));
    report.input("system", json!(system.display().to_string()));
    let m_const = m_const.unwrap_or(DEFAULT_M_CONST);
    if sys.m() == 3 && sys.is_all_pairs() {
        let rep = check_m3_hypotheses(&sys, m_const).map_err(|e| e.to_string())?;
        report.input("m_const", json!(m_const));
        report.output("delta", json!(rep.delta));
        report.output("threshold", json!(rep.threshold));
        report.output("lambda", json!(rep.lambda));
        report.output("mu_interval", json!([rep.mu_interval.0, rep.mu_interval.1]));
        report.output("mu_mid", json!(rep.mu_mid));
        report.output(
            "m_const_below_minimum_warning",
            json!(rep.below_minimum_constant),
        );
        for (idx, name) in ["p1_p2_p12", "p1_p3_p13", "p2_p3_p23_p12_p13"]
            .iter()
            .enumerate()
        {
            report.output(
                &format!("product_{name}"),
                json!(rational_str(&rep.products[idx])),
            );
            report.check(Check::ge(
                &format!("hypothesis_{name}"),
                rep.products_f64[idx],
                rep.threshold,
            ));
        }
        report.check(Check::ge(
            "m_at_least_inv_mu_lambda_sq",
            m_const,
            1.0 / (rep.mu_mid * rep.lambda * rep.lambda),
        ));
    }
    if sys.m() < 2 {
        return Ok(report);
    }
    let f2 = f2.unwrap_or(2.0);
    let f = minimal_f_table(sys.m(), f2).map_err(|e| e.to_string())?;
    let gamma = check_gamma_hypotheses(&sys, &f).map_err(|e| e.to_string())?;
    report.output("h_m", json!(gamma.h_m));
    report.output("gamma_threshold", json!(gamma.threshold));
    report.output("gamma_entries", json!(gamma.entries.len()));
    report.output("gamma_skipped_empty", json!(gamma.skipped_empty));
    for entry in &gamma.entries {
        report.check(Check::ge(
            &format!("gamma_h{}_e{:?}", entry.h, varset_indices(entry.e)),
            entry.product_f64,
            gamma.threshold,
        ));
    }
    report.check(Check::eq_flag("f_table_recurrence_with_h", gamma.f_ok));
    Ok(report)
}

/// `multi witness`: exhaustive (default) or staged two-step search.
#[allow(clippy::too_many_arguments)]
pub fn witness(
    _ctx: &Ctx,
    system: &Path,
    staged: bool,
    m_const: Option<f64>,
    lambda: Option<f64>,
    mu: Option<f64>,
) -> CmdResult {
    let (group, m, constraints) = load_system(system)?;
    let sys = DensitySystem::new(&group, m, constraints).map_err(|e| e.to_string())?;
    let mut report = Report::new("multi witness");
    report.group = Some(GroupMeta::of(&group));
    report.input("system", json!(system.display().to_string()));
    report.input("staged", json!(staged));
    if staged {
        if sys.m() != 3 || !sys.is_all_pairs() {
            return Err("--staged needs an all-pairs system with m = 3".into());
        }
        let m_const = m_const.unwrap_or(DEFAULT_M_CONST);
        report.input("m_const", json!(m_const));
        let out = staged_witness_m3(&sys, m_const, lambda, mu).map_err(|e| e.to_string())?;
        report.output("staged_refused", json!(out.refused));
        if let Some(log) = &out.log {
            report.output("stage_x1", json!(log.x1));
            report.output("stage_b2_size", json!(log.b2_size));
            report.output("stage_b3_size", json!(log.b3_size));
            report.output("stage_q2", json!(log.q2));
            report.output("stage_q3", json!(log.q3));
            report.output("stage_final_product_delta", json!(log.final_product_delta));
            report.check(Check::ge(
                "stage_final_product_delta_at_least_one",
                log.final_product_delta,
                1.0,
            ));
        }
        if out.refused {
            // Hypotheses failed: fall back to the exhaustive search.
            let w = find_witness_m3(&sys).map_err(|e| e.to_string())?;
            report.output("fallback", json!("exhaustive"));
            witness_outputs(&mut report, &w);
            push_witness_check(&mut report, &sys, &w);
        } else {
            witness_outputs(&mut report, &out.witness);
            push_witness_check(&mut report, &sys, &out.witness);
        }
    } else {
        let w = if sys.m() == 3 {
            find_witness_m3(&sys).map_err(|e| e.to_string())?
        } else {
            find_witness_gamma(&sys).map_err(|e| e.to_string())?
        };
        witness_outputs(&mut report, &w);
        push_witness_check(&mut report, &sys, &w);
    }
    Ok(report)
}

fn push_witness_check(report: &mut Report, sys: &DensitySystem, w: &WitnessResult) {
    if let Some(assignment) = &w.assignment {
        let verified = sys.verify(assignment).len() == sys.gamma().count();
        report.check(Check::eq_flag(
            "witness_satisfies_all_constraints",
            verified,
        ));
    }
}

#[derive(Deserialize)]
struct UserTable(BTreeMap<String, f64>);

/// `multi fbound`: build/validate a threshold table. `--closed-form` and
/// `--check-file` exercise tables that can fail (exit 1).
pub fn fbound(
    _ctx: &Ctx,
    m_max: usize,
    f2: Option<f64>,
    closed_form: bool,
    check_file: Option<&Path>,
) -> CmdResult {
    if m_max < 2 {
        return Err("--m must be at least 2".into());
    }
    let f2 = f2.unwrap_or(2.0);
    let (table, origin) = match check_file {
        Some(path) => {
            let source = read_file(path)?;
            let parsed: UserTable =
                serde_json::from_str(&source).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut values = BTreeMap::new();
            for (k, v) in parsed.0 {
                let m: usize = k
                    .parse()
                    .map_err(|_| format!("{}: bad index {k:?}", path.display()))?;
                values.insert(m, v);
            }
            (FTable::from_values(values), "user")
        }
        None if closed_form => (closed_form_f_table(m_max, f2), "closed_form"),
        None => (
            minimal_f_table(m_max, f2).map_err(|e| e.to_string())?,
            "minimal",
        ),
    };
    let validation = validate_f_table(&table, m_max).map_err(|e| e.to_string())?;
    let mut report = Report::new("multi fbound");
    report.input("m", json!(m_max));
    report.input("f2", json!(f2));
    report.input("origin", json!(origin));
    let values: BTreeMap<String, f64> = table
        .values
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    report.output("f", json!(values));
    report.check(Check::eq_flag("f2_exceeds_one", validation.f2_ok));
    for row in &validation.rows {
        report.check(Check {
            name: format!("recurrence_m{}", row.m),
            lhs: row.lhs,
            rhs: row.f_prev,
            relation: ">=".into(),
            holds: row.holds,
        });
        report.output(&format!("slack_m{}", row.m), json!(row.slack));
        report.output(&format!("f_exceeds_m_{}", row.m), json!(row.f_exceeds_m));
    }
    Ok(report)
}
