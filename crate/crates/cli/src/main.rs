//! qplab: construct finite groups, compute character degrees and Cayley
//! graph spectra, certify product-free/product-poor subsets, and search for
//! multi-subset witnesses. Reports are deterministic JSON (or CSV).
//!
//! Exit codes: 0 = computed and every check holds; 1 = computed but some
//! check failed; 2 = usage or input error.

mod cache;
mod commands;
mod report;

use cache::Cache;
use clap::{Parser, Subcommand, ValueEnum};
use commands::Ctx;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qplab", version, about = "finite-group laboratory")]
struct Cli {
    /// Seed for anything sampled; fixed default for reproducible runs.
    #[arg(long, global = true, default_value_t = qplab_core::DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for batch checks (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for derived results (env QPLAB_CACHE overrides).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Include measured wall time in the JSON (breaks byte-reproducibility).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build, inspect, or validate groups.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Character degrees and the minimal nontrivial degree.
    Delta { group: PathBuf },
    /// Bipartite Cayley graph spectrum checks for one or many subsets.
    Spectral {
        group: PathBuf,
        #[arg(long)]
        set: Option<PathBuf>,
        /// Check this many seeded random nonempty subsets instead.
        #[arg(long)]
        random_count: Option<usize>,
        /// Fix the random subset size (default: random per draw).
        #[arg(long)]
        random_size: Option<usize>,
        /// Dump the dense Gram matrix into the report.
        #[arg(long)]
        debug_matrix: bool,
    },
    /// Count solutions of ab = c over three subsets and check the bounds.
    Triple {
        group: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
    },
    /// Maximum product-free subset search.
    Alpha {
        group: PathBuf,
        /// Exact branch-and-bound (default).
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long)]
        heuristic: bool,
        #[arg(long)]
        node_cap: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_cap: Option<f64>,
        /// Raise the exact-mode order cap (default 32).
        #[arg(long)]
        exact_cap: Option<usize>,
    },
    /// Certify a p-product-poor claim ("a/b" or integer p).
    Poor {
        group: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        p: String,
    },
    /// Product-free constructions.
    Construct {
        #[command(subcommand)]
        action: ConstructCmd,
    },
    /// Multi-subset systems: hypotheses, witnesses, threshold tables.
    Multi {
        #[command(subcommand)]
        action: MultiCmd,
    },
    /// Flatten saved JSON reports of one kind into CSV.
    Report { files: Vec<PathBuf> },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Build a named family; descriptors: cyclic k, dihedral k, symmetric
    /// k, alternating k, quaternion k, sl2 q, psl2 q, product(a, b).
    Build {
        /// Family name (with --k/--q) or a full descriptor string.
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        order_cap: Option<usize>,
    },
    Info {
        file: PathBuf,
    },
    Validate {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Product-free union of cosets of a proper subgroup.
    CosetUnion {
        group: PathBuf,
        /// Restrict to subgroups of this index.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Point-action subset scan over a transitive action.
    #[command(name = "theorem25")]
    Theorem25 {
        group: PathBuf,
        #[arg(long)]
        k: usize,
        /// regular (any input) or natural (.gens input).
        #[arg(long, default_value = "regular")]
        action: String,
        /// Sample this many subsets instead of exhausting.
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MultiCmd {
    /// Density-product hypotheses for a system file.
    Hypotheses {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        m_const: Option<f64>,
        #[arg(long)]
        f2: Option<f64>,
    },
    /// Witness search (exhaustive, or --staged two-step for m = 3).
    Witness {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        staged: bool,
        #[arg(long)]
        m_const: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Threshold table f(2..m) with validation.
    Fbound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        f2: Option<f64>,
        /// Use the closed-form recurrence (fails validation; documented).
        #[arg(long)]
        closed_form: bool,
        /// Validate a user-supplied table: JSON map {"2": 2.0, ...}.
        #[arg(long)]
        check_file: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let ctx = Ctx {
        seed: cli.seed,
        threads: cli.threads,
        cache: Cache::resolve(cli.cache_dir.clone()),
    };
    // `report` renders CSV from saved documents and has no report of its
    // own.
    if let Command::Report { files } = &cli.command {
        return match render_saved_reports(files) {
            Ok(csv) => {
                if let Some(path) = &cli.out {
                    if let Err(e) = std::fs::write(path, &csv) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                } else {
                    print!("{csv}");
                }
                ExitCode::SUCCESS
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        };
    }
    // `group build --out` names the table file, not the report file.
    let out_is_table = matches!(
        &cli.command,
        Command::Group {
            action: GroupCmd::Build { .. }
        }
    );
    let result = run(&ctx, &cli.command, cli.out.as_deref());
    let elapsed_ms = started.elapsed().as_millis() as u64;
    match result {
        Ok(mut rep) => {
            rep.seed = cli.seed;
            rep.timing_ms = if cli.timing { elapsed_ms } else { 0 };
            eprintln!("timing: {elapsed_ms} ms");
            let text = match cli.format {
                Format::Json => rep.to_json(),
                Format::Csv => match report::emit_table(&[rep.to_value()]) {
                    Ok(csv) => csv,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
            };
            match (&cli.out, out_is_table) {
                (Some(path), false) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                _ => print!("{text}"),
            }
            if rep.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, command: &Command, out: Option<&std::path::Path>) -> commands::CmdResult {
    match command {
        Command::Group { action } => match action {
            GroupCmd::Build {
                family,
                k,
                q,
                order_cap,
            } => commands::group_cmd::build(ctx, family, *k, *q, *order_cap, out),
            GroupCmd::Info { file } => commands::group_cmd::info(ctx, file),
            GroupCmd::Validate { file } => commands::group_cmd::validate(ctx, file),
        },
        Command::Delta { group } => commands::spectral_cmd::delta(ctx, group),
        Command::Spectral {
            group,
            set,
            random_count,
            random_size,
            debug_matrix,
        } => match (set, random_count) {
            (Some(set), None) => {
                commands::spectral_cmd::spectral_set(ctx, group, set, *debug_matrix)
            }
            (None, Some(count)) => {
                commands::spectral_cmd::spectral_random(ctx, group, *count, *random_size)
            }
            _ => Err("give exactly one of --set or --random-count".into()),
        },
        Command::Triple { group, a, b, c } => commands::spectral_cmd::triple(ctx, group, a, b, c),
        Command::Alpha {
            group,
            exact: _,
            heuristic,
            node_cap,
            time_cap,
            exact_cap,
        } => {
            commands::freeness_cmd::alpha(ctx, group, *heuristic, *node_cap, *time_cap, *exact_cap)
        }
        Command::Poor { group, set, p } => commands::freeness_cmd::poor(ctx, group, set, p),
        Command::Construct { action } => match action {
            ConstructCmd::CosetUnion {
                group,
                index,
                node_cap,
            } => commands::construct::coset_union(ctx, group, *index, *node_cap),
            ConstructCmd::Theorem25 {
                group,
                k,
                action,
                trials,
            } => commands::construct::point_subsets(ctx, group, *k, action, *trials),
        },
        Command::Multi { action } => match action {
            MultiCmd::Hypotheses {
                system,
                m_const,
                f2,
            } => commands::multi::hypotheses(ctx, system, *m_const, *f2),
            MultiCmd::Witness {
                system,
                staged,
                m_const,
                lambda,
                mu,
            } => commands::multi::witness(ctx, system, *staged, *m_const, *lambda, *mu),
            MultiCmd::Fbound {
                m,
                f2,
                closed_form,
                check_file,
            } => commands::multi::fbound(ctx, *m, *f2, *closed_form, check_file.as_deref()),
        },
        Command::Report { .. } => unreachable!("handled in main"),
    }
}

fn render_saved_reports(files: &[PathBuf]) -> Result<String, String> {
    let mut values = Vec::new();
    for path in files {
        let text = commands::read_file(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        values.push(value);
    }
    report::emit_table(&values)
}
