//! Budgets shared by the searching operations.

/// Default seed used across the tool for anything sampled. Fixed so that
/// published runs reproduce without flags.
pub const DEFAULT_SEED: u64 = 3_405_691_582;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Heuristic,
}

/// Caps for searches. `node_cap` counts expanded nodes (or closures, for
/// subgroup enumeration); exhausting either cap downgrades the result to
/// best-found rather than returning anything wrong.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap_s: f64,
    pub mode: SearchMode,
    /// Override of the operation's default exact-mode size cap.
    pub exact_cap: Option<usize>,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: 50_000_000,
            time_cap_s: 600.0,
            mode: SearchMode::Exact,
            exact_cap: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl SearchBudget {
    pub fn heuristic() -> Self {
        SearchBudget {
            mode: SearchMode::Heuristic,
            ..SearchBudget::default()
        }
    }
}
