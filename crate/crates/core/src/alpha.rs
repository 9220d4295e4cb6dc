//! Largest product-free subset search.

use crate::bits::BitSubset;
use crate::error::{Error, Result};
use crate::freeness::is_product_free;
use crate::group::subgroup::subgroups_and_min_index;
use crate::group::{limits, FiniteGroup};
use crate::rng::SplitMix64;
use crate::search::{SearchBudget, SearchMode};
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: BitSubset,
    /// True when the search provably visited every candidate.
    pub exact: bool,
    pub nodes: u64,
}

/// Branch-and-bound for the maximum product-free subset.
///
/// Exact mode enumerates subsets of {1..n-1} in lexicographic include-first
/// order (the identity is never usable), pruning with the remaining-element
/// bound; the first maximum found is therefore the lexicographically
/// smallest witness. Budget exhaustion downgrades to best-found with
/// `exact: false`. Heuristic mode seeds from nontrivial cosets of
/// enumerated subgroups and extends greedily with seeded random restarts.
pub fn max_product_free(group: &FiniteGroup, budget: &SearchBudget) -> Result<AlphaResult> {
    match budget.mode {
        SearchMode::Exact => {
            let cap = budget.exact_cap.unwrap_or(limits::ALPHA_EXACT_CAP);
            if group.n() > cap {
                return Err(Error::CapExceeded(format!(
                    "exact mode caps at order {cap}; order {} needs heuristic mode or a larger exact_cap",
                    group.n()
                )));
            }
            Ok(exact_search(group, budget))
        }
        SearchMode::Heuristic => Ok(heuristic_search(group, budget)),
    }
}

struct ExactState<'g> {
    group: &'g FiniteGroup,
    current: BitSubset,
    best: BitSubset,
    nodes: u64,
    aborted: bool,
    node_cap: u64,
    deadline: Instant,
}

fn exact_search(group: &FiniteGroup, budget: &SearchBudget) -> AlphaResult {
    let n = group.n();
    let mut st = ExactState {
        group,
        current: BitSubset::empty(n),
        best: BitSubset::empty(n),
        nodes: 0,
        aborted: false,
        node_cap: budget.node_cap,
        deadline: Instant::now() + std::time::Duration::from_secs_f64(budget.time_cap_s),
    };
    descend(&mut st, 1);
    debug_assert!(is_product_free(group, &st.best));
    AlphaResult {
        alpha: st.best.len(),
        witness: st.best,
        exact: !st.aborted,
        nodes: st.nodes,
    }
}

fn descend(st: &mut ExactState<'_>, from: usize) {
    st.nodes += 1;
    if st.nodes > st.node_cap || (st.nodes.is_multiple_of(4096) && Instant::now() >= st.deadline) {
        st.aborted = true;
        return;
    }
    if st.current.len() > st.best.len() {
        st.best = st.current.clone();
    }
    let n = st.group.n();
    for x in from..n {
        // Even taking every remaining element cannot beat the incumbent.
        if st.current.len() + (n - x) <= st.best.len() {
            break;
        }
        if can_extend(st.group, &st.current, x) {
            st.current.insert(x);
            descend(st, x + 1);
            st.current.remove(x);
            if st.aborted {
                return;
            }
        }
    }
}

/// S u {x} stays product-free, assuming S already is.
fn can_extend(group: &FiniteGroup, s: &BitSubset, x: usize) -> bool {
    let hits = |y: usize| y == x || s.contains(y);
    if hits(group.mul(x, x)) {
        return false;
    }
    for a in s.iter() {
        if hits(group.mul(a, x)) || hits(group.mul(x, a)) {
            return false;
        }
    }
    // x as the product of two current elements.
    for a in s.iter() {
        for b in s.iter() {
            if group.mul(a, b) == x {
                return false;
            }
        }
    }
    true
}

/// Greedy growth state keeping the pairwise-product set incrementally, so
/// feasibility is O(|S|) instead of O(|S|^2) per candidate. Used by the
/// heuristic paths where groups can be large.
struct Grower<'g> {
    group: &'g FiniteGroup,
    set: BitSubset,
    products: BitSubset,
}

impl<'g> Grower<'g> {
    fn from_set(group: &'g FiniteGroup, seed: &BitSubset) -> Self {
        let n = group.n();
        let mut grower = Grower {
            group,
            set: BitSubset::empty(n),
            products: BitSubset::empty(n),
        };
        for x in seed.iter() {
            grower.insert(x);
        }
        grower
    }

    fn feasible(&self, x: usize) -> bool {
        if self.products.contains(x) {
            return false;
        }
        let hits = |y: usize| y == x || self.set.contains(y);
        if hits(self.group.mul(x, x)) {
            return false;
        }
        for a in self.set.iter() {
            if hits(self.group.mul(a, x)) || hits(self.group.mul(x, a)) {
                return false;
            }
        }
        true
    }

    fn insert(&mut self, x: usize) {
        self.products.insert(self.group.mul(x, x));
        for a in self.set.iter() {
            self.products.insert(self.group.mul(a, x));
            self.products.insert(self.group.mul(x, a));
        }
        self.set.insert(x);
    }

    fn grow(&mut self, skip: Option<usize>, nodes: &mut u64) {
        for x in 1..self.group.n() {
            *nodes += 1;
            if Some(x) != skip && !self.set.contains(x) && self.feasible(x) {
                self.insert(x);
            }
        }
    }
}

fn heuristic_search(group: &FiniteGroup, budget: &SearchBudget) -> AlphaResult {
    let n = group.n();
    let mut nodes: u64 = 0;
    let mut best = BitSubset::empty(n);

    // Coset seeds: every nontrivial coset of a proper subgroup is
    // product-free, so the largest enumerated one is a strong start.
    // TODO: above the enumeration cap, seed from cosets of the cyclic
    // subgroups (cheap to list) instead of skipping straight to restarts.
    if n <= limits::SUBGROUP_ENUM_CAP {
        let sub_budget = SearchBudget {
            node_cap: budget.node_cap / 4 + 1,
            ..budget.clone()
        };
        let enumeration = subgroups_and_min_index(group, &sub_budget);
        nodes += enumeration.closures_run;
        for h in enumeration.subgroups.iter().filter(|h| h.is_proper()) {
            for id in 1..h.index() {
                let coset = BitSubset::from_indices(n, &h.coset_elements(group, id));
                debug_assert!(is_product_free(group, &coset));
                let mut grower = Grower::from_set(group, &coset);
                grower.grow(None, &mut nodes);
                if grower.set.len() > best.len() {
                    best = grower.set;
                }
            }
        }
    }

    // Seeded random restarts.
    let mut rng = SplitMix64::new(budget.seed);
    let restarts = 32;
    for _ in 0..restarts {
        if nodes >= budget.node_cap {
            break;
        }
        let mut order: Vec<usize> = (1..n).collect();
        for i in (1..order.len()).rev() {
            let j = rng.below(i + 1);
            order.swap(i, j);
        }
        let mut grower = Grower::from_set(group, &BitSubset::empty(n));
        for &x in &order {
            nodes += 1;
            if grower.feasible(x) {
                grower.insert(x);
            }
        }
        if grower.set.len() > best.len() {
            best = grower.set;
        }
    }

    // Local swaps: drop one member, refill greedily from the others, keep
    // improvements.
    let mut improved = true;
    while improved && nodes < budget.node_cap {
        improved = false;
        for x in best.clone().iter() {
            let mut trial = best.clone();
            trial.remove(x);
            let mut grower = Grower::from_set(group, &trial);
            grower.grow(Some(x), &mut nodes);
            if grower.feasible(x) {
                grower.insert(x);
            }
            if grower.set.len() > best.len() {
                best = grower.set;
                improved = true;
                break;
            }
            if nodes >= budget.node_cap {
                break;
            }
        }
    }

    debug_assert!(is_product_free(group, &best));
    AlphaResult {
        alpha: best.len(),
        witness: best,
        exact: false,
        nodes,
    }
}
