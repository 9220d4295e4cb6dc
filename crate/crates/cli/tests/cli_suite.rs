//! CLI behaviors beyond the acceptance gate: error reporting with line
//! numbers, CSV projection, report merging, and the individual
//! subcommands' happy paths.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qplab")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

struct Fixture {
    dir: PathBuf,
}

impl Fixture {
    fn new(tag: &str) -> Fixture {
        let dir = std::env::temp_dir().join(format!("qplab-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        Fixture { dir }
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let path = self.dir.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }
}

impl Drop for Fixture {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

#[test]
fn malformed_set_reports_line_number() {
    let fx = Fixture::new("badset");
    fx.write("g.cay", "2\n0 1\n1 0\n");
    fx.write("a.set", "0\n# fine\nbanana\n");
    let out = run_in(&fx.dir, &["spectral", "g.cay", "--set", "a.set"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn group_validate_distinguishes_law_failure_from_parse_error() {
    let fx = Fixture::new("validate");
    // Valid Latin square, identity in place, but every element is an
    // involution at order 5: not associative.
    fx.write(
        "bad.cay",
        "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n",
    );
    let out = run_in(&fx.dir, &["group", "validate", "bad.cay"]);
    assert_eq!(out.status.code(), Some(1), "law failure is a failed check");
    let rep = json_of(&out);
    assert_eq!(rep["checks"][0]["holds"], Value::Bool(false));
    assert!(rep["outputs"]["failure"]
        .as_str()
        .unwrap()
        .contains("associativity"));

    fx.write("broken.cay", "2\n0 1\n");
    let out = run_in(&fx.dir, &["group", "validate", "broken.cay"]);
    assert_eq!(out.status.code(), Some(2), "parse failure is a usage error");
}

#[test]
fn gens_input_supports_natural_action_scan() {
    let fx = Fixture::new("gens");
    fx.write("s4.gens", "4\n1 2 3 0\n1 0 2 3\n");
    let out = run_in(
        &fx.dir,
        &[
            "construct",
            "theorem25",
            "s4.gens",
            "--k",
            "3",
            "--action",
            "natural",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    assert_eq!(rep["outputs"]["m"], 4);
    assert_eq!(rep["outputs"]["t_best"], serde_json::json!([2, 3, 4]));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("min_count <= bound: PASS"));
}

#[test]
fn sampled_scan_records_seed() {
    let fx = Fixture::new("sampled");
    let out = run_in(
        &fx.dir,
        &["group", "build", "--family", "cyclic", "--k", "60"],
    );
    assert_eq!(out.status.code(), Some(0));
    let fx_cay = fx.dir.join("z60.cay");
    std::fs::write(&fx_cay, {
        let g = qplab_core::build_named("cyclic 60").unwrap();
        qplab_core::write_cayley_table(&g)
    })
    .unwrap();
    let out = run_in(
        &fx.dir,
        &[
            "construct",
            "theorem25",
            "z60.cay",
            "--k",
            "5",
            "--trials",
            "2000",
            "--seed",
            "7",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    assert_eq!(rep["outputs"]["sample_seed"], 7);
    assert_eq!(rep["outputs"]["exhaustive"], Value::Bool(false));
    assert_eq!(rep["seed"], 7);
}

#[test]
fn report_command_merges_homogeneous_documents() {
    let fx = Fixture::new("merge");
    fx.write("g.cay", "2\n0 1\n1 0\n");
    fx.write("a.set", "1\n");
    for name in ["r1.json", "r2.json"] {
        let out = run_in(
            &fx.dir,
            &["spectral", "g.cay", "--set", "a.set", "--out", name],
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let out = run_in(&fx.dir, &["report", "r1.json", "r2.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.starts_with("command,group,n,"));

    // Mixed kinds are refused.
    let out = run_in(&fx.dir, &["delta", "g.cay", "--out", "d.json"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run_in(&fx.dir, &["report", "r1.json", "d.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alpha_cli_finds_odd_coset() {
    let fx = Fixture::new("alpha");
    fx.write(
        "z6.cay",
        &qplab_core::write_cayley_table(&qplab_core::build_named("cyclic 6").unwrap()),
    );
    let out = run_in(&fx.dir, &["alpha", "z6.cay", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    assert_eq!(rep["outputs"]["alpha"], 3);
    assert_eq!(rep["outputs"]["witness"], serde_json::json!([1, 3, 5]));
    assert_eq!(rep["outputs"]["exact"], Value::Bool(true));
}

#[test]
fn poor_cli_certifies_and_rejects() {
    let fx = Fixture::new("poor");
    fx.write(
        "z5.cay",
        &qplab_core::write_cayley_table(&qplab_core::build_named("cyclic 5").unwrap()),
    );
    fx.write("s.set", "1\n2\n");
    let ok = run_in(&fx.dir, &["poor", "z5.cay", "--set", "s.set", "--p", "1/4"]);
    assert_eq!(ok.status.code(), Some(0));
    let rep = json_of(&ok);
    assert_eq!(rep["outputs"]["pair_count"], 1);
    assert_eq!(rep["outputs"]["is_poor"], Value::Bool(true));

    let tight = run_in(&fx.dir, &["poor", "z5.cay", "--set", "s.set", "--p", "1/5"]);
    assert_eq!(tight.status.code(), Some(1), "failed claim exits 1");
}

#[test]
fn triple_cli_reports_exact_rationals() {
    let fx = Fixture::new("triple");
    fx.write(
        "z5.cay",
        &qplab_core::write_cayley_table(&qplab_core::build_named("cyclic 5").unwrap()),
    );
    fx.write("ab.set", "1\n2\n");
    let out = run_in(
        &fx.dir,
        &[
            "triple", "z5.cay", "--a", "ab.set", "--b", "ab.set", "--c", "ab.set",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    assert_eq!(rep["outputs"]["count"], 1);
    assert_eq!(rep["outputs"]["p"], "5/8");
    assert_eq!(
        rep["outputs"]["triple_bound_applicable"],
        Value::Bool(false)
    );
}

#[test]
fn coset_union_cli_on_s3() {
    let fx = Fixture::new("cosets");
    fx.write(
        "s3.cay",
        &qplab_core::write_cayley_table(&qplab_core::build_named("symmetric 3").unwrap()),
    );
    let out = run_in(&fx.dir, &["construct", "coset-union", "s3.cay"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    // Largest proper subgroup is A3 (order 3, index 2): one nontrivial
    // coset of size 3.
    assert_eq!(rep["outputs"]["subgroup_order"], 3);
    assert_eq!(rep["outputs"]["union_size"], 3);
    assert_eq!(rep["outputs"]["min_proper_index"], 2);
}

#[test]
fn staged_witness_cli_falls_back_when_hypotheses_fail() {
    let fx = Fixture::new("staged");
    fx.write(
        "g.cay",
        &qplab_core::write_cayley_table(&qplab_core::build_named("cyclic 6").unwrap()),
    );
    fx.write("full.set", "0\n1\n2\n3\n4\n5\n");
    fx.write(
        "sys.json",
        r#"{"group": "g.cay", "m": 3, "constraints": [
            {"F": [1], "set": "FULL"}, {"F": [2], "set": "FULL"}, {"F": [3], "set": "FULL"},
            {"F": [1,2], "set": "full.set"}, {"F": [1,3], "set": "FULL"}, {"F": [2,3], "set": "FULL"}
        ]}"#,
    );
    let out = run_in(
        &fx.dir,
        &["multi", "witness", "--system", "sys.json", "--staged"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep = json_of(&out);
    // delta(Z6) = 1 < M: hypotheses fail, fallback still finds (0,0,0).
    assert_eq!(rep["outputs"]["staged_refused"], Value::Bool(true));
    assert_eq!(rep["outputs"]["fallback"], "exhaustive");
    assert_eq!(rep["outputs"]["assignment"], serde_json::json!([0, 0, 0]));
}

#[test]
fn cache_env_var_overrides_flag() {
    let fx = Fixture::new("cacheenv");
    fx.write("g.cay", "2\n0 1\n1 0\n");
    let env_dir = fx.dir.join("envcache");
    let flag_dir = fx.dir.join("flagcache");
    let out = Command::new(bin())
        .current_dir(&fx.dir)
        .env("QPLAB_CACHE", &env_dir)
        .args(["delta", "g.cay", "--cache-dir"])
        .arg(&flag_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env_dir.exists(), "entries must land in $QPLAB_CACHE");
    assert!(!flag_dir.exists(), "the flag loses to the environment");
}

#[test]
fn csv_format_flag_projects_single_report() {
    let fx = Fixture::new("csv");
    fx.write("g.cay", "2\n0 1\n1 0\n");
    let out = run_in(&fx.dir, &["delta", "g.cay", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("command,group,n,"));
    assert!(header.contains("delta"));
    assert_eq!(lines.next().unwrap().split(',').next(), Some("delta"));
}
