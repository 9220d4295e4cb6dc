//! Constructive side: product-free coset unions and the point-action
//! construction with its averaging bound.

use crate::bits::BitSubset;
use crate::error::{Error, Result};
use crate::freeness::is_product_free;
use crate::group::action::PermutationAction;
use crate::group::subgroup::SubgroupRecord;
use crate::group::FiniteGroup;
use crate::rng::SplitMix64;
use crate::search::SearchBudget;
use std::collections::BTreeSet;
use std::time::Instant;

/// Which triples of cosets (i, j, l) of H satisfy (g_i H)(g_j H) meets
/// g_l H, decided by exhaustive product scan. For normal H this is exactly
/// the multiplication table of the quotient.
#[derive(Clone, Debug)]
pub struct CosetTripleRelation {
    pub k: usize,
    pub triples: BTreeSet<(u16, u16, u16)>,
}

impl CosetTripleRelation {
    pub fn contains(&self, i: usize, j: usize, l: usize) -> bool {
        self.triples.contains(&(i as u16, j as u16, l as u16))
    }

    /// True when no triple of the relation lies inside the given coset ids.
    pub fn is_relation_free(&self, ids: &[usize]) -> bool {
        for &i in ids {
            for &j in ids {
                for &l in ids {
                    if self.contains(i, j, l) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn coset_relation(group: &FiniteGroup, h: &SubgroupRecord) -> Result<CosetTripleRelation> {
    if !h.is_proper() {
        return Err(Error::InvalidInput(
            "coset relation requires a proper subgroup".into(),
        ));
    }
    let n = group.n();
    let mut triples = BTreeSet::new();
    for x in 0..n {
        let cx = h.coset_of(x) as u16;
        for y in 0..n {
            triples.insert((cx, h.coset_of(y) as u16, h.coset_of(group.mul(x, y)) as u16));
        }
    }
    Ok(CosetTripleRelation {
        k: h.index(),
        triples,
    })
}

#[derive(Clone, Debug)]
pub struct RelationFreeResult {
    /// Chosen coset ids, ascending.
    pub chosen: Vec<usize>,
    pub size: usize,
    pub exact: bool,
    pub nodes: u64,
}

/// Maximum subset U of coset ids with no relation triple inside U.
/// Branch-and-bound, exact up to 24 cosets by default (budget-overridable);
/// the lexicographically smallest maximum is returned.
pub fn max_relation_free(rel: &CosetTripleRelation, budget: &SearchBudget) -> RelationFreeResult {
    let k = rel.k;
    let exact_cap = budget.exact_cap.unwrap_or(24);
    let mut nodes: u64 = 0;
    if k > exact_cap {
        // Greedy fallback, never reported exact.
        let mut chosen: Vec<usize> = Vec::new();
        for u in 0..k {
            nodes += 1;
            let mut trial = chosen.clone();
            trial.push(u);
            if rel.is_relation_free(&trial) {
                chosen = trial;
            }
        }
        let size = chosen.len();
        return RelationFreeResult {
            chosen,
            size,
            exact: false,
            nodes,
        };
    }
    struct St<'r> {
        rel: &'r CosetTripleRelation,
        current: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
        aborted: bool,
        node_cap: u64,
        deadline: Instant,
    }
    fn descend(st: &mut St<'_>, from: usize) {
        st.nodes += 1;
        if st.nodes > st.node_cap
            || (st.nodes.is_multiple_of(4096) && Instant::now() >= st.deadline)
        {
            st.aborted = true;
            return;
        }
        if st.current.len() > st.best.len() {
            st.best = st.current.clone();
        }
        let k = st.rel.k;
        for u in from..k {
            if st.current.len() + (k - u) <= st.best.len() {
                break;
            }
            if can_add(st.rel, &st.current, u) {
                st.current.push(u);
                descend(st, u + 1);
                st.current.pop();
                if st.aborted {
                    return;
                }
            }
        }
    }
    fn can_add(rel: &CosetTripleRelation, current: &[usize], u: usize) -> bool {
        let mut ids: Vec<usize> = current.to_vec();
        ids.push(u);
        // Only triples involving u can newly appear.
        for &i in &ids {
            for &j in &ids {
                if rel.contains(i, j, u) || rel.contains(i, u, j) || rel.contains(u, i, j) {
                    return false;
                }
            }
        }
        true
    }
    let mut st = St {
        rel,
        current: Vec::new(),
        best: Vec::new(),
        nodes,
        aborted: false,
        node_cap: budget.node_cap,
        deadline: Instant::now() + std::time::Duration::from_secs_f64(budget.time_cap_s),
    };
    descend(&mut st, 0);
    nodes = st.nodes;
    let size = st.best.len();
    RelationFreeResult {
        chosen: st.best,
        size,
        exact: !st.aborted,
        nodes,
    }
}

/// Union of the cosets with the given ids, as an element set.
pub fn union_of_cosets(group: &FiniteGroup, h: &SubgroupRecord, ids: &[usize]) -> BitSubset {
    let mut set = BitSubset::empty(group.n());
    for &id in ids {
        for x in h.coset_elements(group, id) {
            set.insert(x);
        }
    }
    set
}

/// Coset-union summary: the relation-free search result plus verification
/// that the union really is product-free in G, and the achieved size
/// against sqrt(index).
#[derive(Clone, Debug)]
pub struct CosetUnionReport {
    pub subgroup_order: usize,
    pub index: usize,
    pub chosen: Vec<usize>,
    pub union_size: usize,
    pub exact: bool,
    pub union_product_free: bool,
    /// |U| / sqrt(k): the empirically achieved constant.
    pub achieved_ratio: f64,
}

pub fn coset_union_search(
    group: &FiniteGroup,
    h: &SubgroupRecord,
    budget: &SearchBudget,
) -> Result<CosetUnionReport> {
    let rel = coset_relation(group, h)?;
    let found = max_relation_free(&rel, budget);
    let union = union_of_cosets(group, h, &found.chosen);
    let union_product_free = is_product_free(group, &union);
    debug_assert!(union_product_free);
    Ok(CosetUnionReport {
        subgroup_order: h.order(),
        index: h.index(),
        chosen: found.chosen,
        union_size: union.len(),
        exact: found.exact,
        union_product_free,
        achieved_ratio: union.len() as f64 / (h.index() as f64).sqrt(),
    })
}

/// S = union over x in T of the fibers {g : g(base) = x} of a transitive
/// action, base point 0. T must avoid the base point; |S| = |T| n / m by
/// orbit-stabilizer.
pub fn point_action_set(
    group: &FiniteGroup,
    action: &PermutationAction,
    t: &[usize],
) -> Result<BitSubset> {
    if !action.transitive() {
        return Err(Error::InvalidInput(
            "point-action sets need a transitive action".into(),
        ));
    }
    let m = action.degree();
    let mut wanted = vec![false; m];
    for &x in t {
        if x == 0 {
            return Err(Error::InvalidInput(
                "T must not contain the base point".into(),
            ));
        }
        if x >= m {
            return Err(Error::InvalidInput(format!("point {x} outside 1..{m}")));
        }
        wanted[x] = true;
    }
    let mut s = BitSubset::empty(group.n());
    for g in 0..group.n() {
        if wanted[action.apply(g, 0)] {
            s.insert(g);
        }
    }
    let t_count = wanted.iter().filter(|&&w| w).count();
    debug_assert_eq!(s.len(), t_count * group.n() / m);
    Ok(s)
}

/// Binomial coefficient, saturating at u128::MAX.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSearchMode {
    Exhaustive,
    Sampled { trials: usize },
}

/// Outcome of scanning point subsets T of size k for few solutions of
/// ab = c inside S(T).
#[derive(Clone, Debug)]
pub struct PointSubsetReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Minimizing T (0-indexed points, ascending; render 1-indexed for
    /// humans).
    pub t_best: Vec<usize>,
    pub count_best: u64,
    /// 4 n^2 k^3 / (m-3)^3.
    pub bound: f64,
    pub count_bound_holds: bool,
    pub exhaustive: bool,
    /// Number of T examined (all of C(m-1, k) when exhaustive).
    pub candidates: u128,
    pub seed: Option<u64>,
    /// Exhaustive mode only: sum of counts over all T, the middle expression
    /// 3 n (n/m) C(m-3, k-2) + n^2 C(m-4, k-3), and 4 n^2 C(m-4, k-3).
    pub average_lhs: Option<u128>,
    pub average_mid: Option<u128>,
    pub average_rhs: Option<u128>,
    /// All links of the averaging chain, checked exactly (exhaustive only).
    pub chain_holds: Option<bool>,
}

/// Scan subsets T of {1..m-1} of size k over a transitive action and count
/// solutions of ab = c with a, b, c in S(T).
///
/// Exhaustive mode walks all C(m-1, k) subsets in lexicographic order
/// (capped at 10^7) and also verifies the averaging chain
/// min * C(m-1,k) <= sum <= 3 n (n/m) C(m-3,k-2) + n^2 C(m-4,k-3)
///                <= 4 n^2 C(m-4,k-3),
/// together with the exact identity
/// C(m-4,k-3) / C(m-1,k) = k(k-1)(k-2) / ((m-1)(m-2)(m-3)) and the final
/// comparison against 4 n^2 k^3/(m-3)^3. Sampled mode draws seeded uniform
/// k-subsets. Ties favor the lexicographically smallest T.
pub fn search_point_subsets(
    group: &FiniteGroup,
    action: &PermutationAction,
    k: usize,
    mode: PointSearchMode,
    seed: u64,
) -> Result<PointSubsetReport> {
    if !action.transitive() {
        return Err(Error::InvalidInput("action must be transitive".into()));
    }
    let m = action.degree();
    let n = group.n();
    if m <= 3 {
        return Err(Error::InvalidInput(format!(
            "degree m = {m} rejected; the construction needs m > 3"
        )));
    }
    if k < 3 || k > m - 1 {
        return Err(Error::InvalidInput(format!(
            "k = {k} outside 3..={}",
            m - 1
        )));
    }
    let total = binomial((m - 1) as u64, k as u64);
    let bound = 4.0 * (n as f64) * (n as f64) * (k as f64).powi(3) / ((m - 3) as f64).powi(3);

    let count_for = |t: &[usize]| -> u64 {
        let s = point_action_set(group, action, t).expect("scan points are valid");
        let mut count = 0u64;
        for a in s.iter() {
            for b in s.iter() {
                if s.contains(group.mul(a, b)) {
                    count += 1;
                }
            }
        }
        count
    };

    let mut best: Option<(u64, Vec<usize>)> = None;
    let take = |count: u64, t: &[usize], best: &mut Option<(u64, Vec<usize>)>| {
        let better = match best {
            None => true,
            Some((c, bt)) => count < *c || (count == *c && t < bt.as_slice()),
        };
        if better {
            *best = Some((count, t.to_vec()));
        }
    };

    let (exhaustive, candidates, average_lhs, seed_used) = match mode {
        PointSearchMode::Exhaustive => {
            if total > 10_000_000 {
                return Err(Error::CapExceeded(format!(
                    "{total} candidate subsets exceed the exhaustive cap"
                )));
            }
            let mut sum: u128 = 0;
            // Lexicographic k-subsets of {1..m-1}.
            let mut t: Vec<usize> = (1..=k).collect();
            'scan: loop {
                let count = count_for(&t);
                sum += count as u128;
                take(count, &t, &mut best);
                // Successor: bump the rightmost position with headroom.
                let Some(i) = (0..k).rev().find(|&i| t[i] < (m - 1) - (k - 1 - i)) else {
                    break 'scan;
                };
                t[i] += 1;
                for j in i + 1..k {
                    t[j] = t[j - 1] + 1;
                }
            }
            (true, total, Some(sum), None)
        }
        PointSearchMode::Sampled { trials } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..trials {
                let t: Vec<usize> = rng.sample(m - 1, k).into_iter().map(|x| x + 1).collect();
                take(count_for(&t), &t, &mut best);
            }
            (false, trials as u128, None, Some(seed))
        }
    };

    let (count_best, t_best) = best.expect("at least one candidate");
    let mut report = PointSubsetReport {
        n,
        m,
        k,
        t_best,
        count_best,
        bound,
        count_bound_holds: (count_best as f64) <= bound,
        exhaustive,
        candidates,
        seed: seed_used,
        average_lhs,
        average_mid: None,
        average_rhs: None,
        chain_holds: None,
    };
    if exhaustive {
        let (nn, mm, kk) = (n as u128, m as u64, k as u64);
        let stab = (n / m) as u128;
        let mid = 3 * nn * stab * binomial(mm - 3, kk - 2) + nn * nn * binomial(mm - 4, kk - 3);
        let rhs = 4 * nn * nn * binomial(mm - 4, kk - 3);
        let sum = report.average_lhs.unwrap();
        // min * total <= sum <= mid <= rhs, and the closed-form ratio.
        let link_min = (count_best as u128) * total <= sum;
        let link_mid = sum <= mid;
        let link_rhs = mid <= rhs;
        // C(m-4,k-3) (m-1)(m-2)(m-3) == k(k-1)(k-2) C(m-1,k)
        let lhs_id =
            binomial(mm - 4, kk - 3) * ((mm - 1) as u128) * ((mm - 2) as u128) * ((mm - 3) as u128);
        let rhs_id = (kk as u128) * ((kk - 1) as u128) * ((kk - 2) as u128) * total;
        let link_identity = lhs_id == rhs_id;
        // k(k-1)(k-2)(m-3)^3 <= k^3 (m-1)(m-2)(m-3)
        let cube = |x: u128| x * x * x;
        let link_final =
            (kk as u128) * ((kk - 1) as u128) * ((kk - 2) as u128) * cube((mm - 3) as u128)
                <= cube(kk as u128) * ((mm - 1) as u128) * ((mm - 2) as u128) * ((mm - 3) as u128);
        report.average_mid = Some(mid);
        report.average_rhs = Some(rhs);
        report.chain_holds = Some(link_min && link_mid && link_rhs && link_identity && link_final);
    }
    Ok(report)
}
