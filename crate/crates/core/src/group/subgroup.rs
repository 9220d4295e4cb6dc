//! Subgroups, left cosets, and exhaustive subgroup-lattice enumeration.

use super::{limits, FiniteGroup};
use crate::bits::BitSubset;
use crate::error::{Error, Result};
use crate::search::SearchBudget;
use std::collections::HashSet;
use std::time::Instant;

/// A subgroup with its left-coset structure. Coset 0 is H itself and coset
/// representatives are the smallest element of each coset.
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    elements: BitSubset,
    order: usize,
    index: usize,
    coset_reps: Vec<u32>,
    coset_of: Vec<u32>,
}

impl SubgroupRecord {
    /// Wrap an element set, verifying closure under product and inverse.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let set = BitSubset::from_indices(group.n(), elements);
        Self::from_set(group, set)
    }

    pub fn from_set(group: &FiniteGroup, set: BitSubset) -> Result<Self> {
        let n = group.n();
        if !set.contains(0) {
            return Err(Error::InvalidInput(
                "subgroup must contain the identity".into(),
            ));
        }
        for a in set.iter() {
            if !set.contains(group.inv(a)) {
                return Err(Error::InvalidInput(format!(
                    "set not closed under inverse at {a}"
                )));
            }
            for b in set.iter() {
                if !set.contains(group.mul(a, b)) {
                    return Err(Error::InvalidInput(format!(
                        "set not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        let order = set.len();
        debug_assert_eq!(n % order, 0, "Lagrange");
        let index = n / order;
        let mut coset_of = vec![u32::MAX; n];
        let mut coset_reps = Vec::with_capacity(index);
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = coset_reps.len() as u32;
            coset_reps.push(x as u32);
            for h in set.iter() {
                coset_of[group.mul(x, h)] = id;
            }
        }
        debug_assert_eq!(coset_reps.len(), index);
        Ok(SubgroupRecord {
            elements: set,
            order,
            index,
            coset_reps,
            coset_of,
        })
    }

    pub fn elements(&self) -> &BitSubset {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coset_reps(&self) -> &[u32] {
        &self.coset_reps
    }

    #[inline]
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    pub fn is_proper(&self) -> bool {
        self.index > 1
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|h| (0..group.n()).all(|g| self.elements.contains(group.conj(g, h))))
    }

    /// Elements of the coset with the given id, ascending.
    pub fn coset_elements(&self, group: &FiniteGroup, id: usize) -> Vec<usize> {
        let rep = self.coset_reps[id] as usize;
        let mut out: Vec<usize> = self.elements.iter().map(|h| group.mul(rep, h)).collect();
        out.sort_unstable();
        out
    }
}

/// Smallest index of a proper subgroup, when known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinIndex {
    Exact(usize),
    Unknown,
}

/// Result of subgroup enumeration.
#[derive(Debug)]
pub struct SubgroupEnumeration {
    pub subgroups: Vec<SubgroupRecord>,
    pub min_proper_index: MinIndex,
    /// True when the whole lattice was enumerated.
    pub complete: bool,
    pub closures_run: u64,
}

/// Enumerate subgroups and report the minimal proper-subgroup index.
///
/// Exact mode (n within the enumeration cap and budget not exhausted) closes
/// every subset of at most 3 elements and then joins pairs of found
/// subgroups to a fixpoint. Any subgroup is a join of cyclic subgroups, so
/// the fixpoint is the full lattice. When the order cap or the budget is
/// hit, the partial list found so far is returned with
/// [`MinIndex::Unknown`]; a wrong index is never reported.
pub fn subgroups_and_min_index(group: &FiniteGroup, budget: &SearchBudget) -> SubgroupEnumeration {
    let n = group.n();
    let start = Instant::now();
    let mut closures_run: u64 = 0;
    let mut found: Vec<BitSubset> = Vec::new();
    let mut seen: HashSet<BitSubset> = HashSet::new();
    let mut exhausted = false;

    let add = |set: BitSubset, found: &mut Vec<BitSubset>, seen: &mut HashSet<BitSubset>| {
        if seen.insert(set.clone()) {
            found.push(set);
        }
    };

    // Trivial subgroup.
    add(BitSubset::from_indices(n, &[0]), &mut found, &mut seen);

    let over_budget = |closures_run: u64| {
        closures_run > budget.node_cap || start.elapsed().as_secs_f64() > budget.time_cap_s
    };

    if n <= limits::SUBGROUP_ENUM_CAP {
        // Cyclic subgroups.
        for a in 1..n {
            closures_run += 1;
            if over_budget(closures_run) {
                exhausted = true;
                break;
            }
            add(group.closure_of(&[a]), &mut found, &mut seen);
        }
        // Pairs; remember each pair closure for the triple prune.
        let mut pair_closures: Vec<(usize, usize, BitSubset)> = Vec::new();
        if !exhausted {
            'pairs: for a in 1..n {
                for b in (a + 1)..n {
                    closures_run += 1;
                    if over_budget(closures_run) {
                        exhausted = true;
                        break 'pairs;
                    }
                    let c = group.closure_of(&[a, b]);
                    pair_closures.push((a, b, c.clone()));
                    add(c, &mut found, &mut seen);
                }
            }
        }
        // Triples: only extend pairs whose closure is proper and misses c.
        if !exhausted {
            'triples: for (a, b, pc) in &pair_closures {
                if pc.len() == n {
                    continue;
                }
                for c in (b + 1)..n {
                    if pc.contains(c) {
                        continue;
                    }
                    closures_run += 1;
                    if over_budget(closures_run) {
                        exhausted = true;
                        break 'triples;
                    }
                    add(group.closure_of(&[*a, *b, c]), &mut found, &mut seen);
                }
            }
        }
        // Join fixpoint.
        if !exhausted {
            'joins: loop {
                let snapshot = found.clone();
                let before = found.len();
                for i in 0..snapshot.len() {
                    for j in (i + 1)..snapshot.len() {
                        if snapshot[i].is_subset_of(&snapshot[j])
                            || snapshot[j].is_subset_of(&snapshot[i])
                        {
                            continue;
                        }
                        closures_run += 1;
                        if over_budget(closures_run) {
                            exhausted = true;
                            break 'joins;
                        }
                        let mut union = snapshot[i].clone();
                        union.union_with(&snapshot[j]);
                        add(group.closure_of(&union.as_indices()), &mut found, &mut seen);
                    }
                }
                if found.len() == before {
                    break;
                }
            }
        }
    } else {
        // Above the enumeration cap: cyclic subgroups only, index unknown.
        exhausted = true;
        for a in 1..n {
            closures_run += 1;
            if closures_run > budget.node_cap {
                break;
            }
            add(group.closure_of(&[a]), &mut found, &mut seen);
        }
        add(BitSubset::full(n), &mut found, &mut seen);
    }

    found.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp_lex(y)));
    let subgroups: Vec<SubgroupRecord> = found
        .into_iter()
        .map(|set| SubgroupRecord::from_set(group, set).expect("closures are subgroups"))
        .collect();

    let complete = !exhausted;
    let min_proper_index = if complete {
        subgroups
            .iter()
            .filter(|h| h.is_proper())
            .map(|h| h.order())
            .max()
            .map(|h_max| MinIndex::Exact(n / h_max))
            .unwrap_or(MinIndex::Unknown)
    } else {
        MinIndex::Unknown
    };
    SubgroupEnumeration {
        subgroups,
        min_proper_index,
        complete,
        closures_run,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::build_named;

    #[test]
    fn s3_min_index_two() {
        let g = build_named("symmetric 3").unwrap();
        let e = subgroups_and_min_index(&g, &SearchBudget::default());
        assert!(e.complete);
        assert_eq!(e.min_proper_index, MinIndex::Exact(2));
        // S3 has 6 subgroups: 1, A3, three <transposition>, S3.
        assert_eq!(e.subgroups.len(), 6);
    }

    #[test]
    fn prime_cyclic_min_index_is_p() {
        for p in [2usize, 3, 5, 7, 11] {
            let g = build_named(&format!("cyclic {p}")).unwrap();
            let e = subgroups_and_min_index(&g, &SearchBudget::default());
            assert_eq!(e.min_proper_index, MinIndex::Exact(p), "p={p}");
        }
    }

    #[test]
    fn a5_min_index_five() {
        let g = build_named("alternating 5").unwrap();
        let e = subgroups_and_min_index(&g, &SearchBudget::default());
        assert!(e.complete);
        assert_eq!(e.min_proper_index, MinIndex::Exact(5));
        // A5 has 59 subgroups.
        assert_eq!(e.subgroups.len(), 59);
    }

    #[test]
    fn elementary_abelian_join_recovers_whole_lattice() {
        // (Z2)^4 itself needs four generators; it must still appear via
        // joins of smaller subgroups.
        let g = build_named("product(product(cyclic 2, cyclic 2), product(cyclic 2, cyclic 2))")
            .unwrap();
        let e = subgroups_and_min_index(&g, &SearchBudget::default());
        assert!(e.complete);
        assert_eq!(e.min_proper_index, MinIndex::Exact(2));
        // Gaussian binomial counts: 1 + 15 + 35 + 15 + 1 + 67 total.
        assert_eq!(e.subgroups.len(), 67);
        assert_eq!(e.subgroups.last().unwrap().order(), 16);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let g = build_named("symmetric 4").unwrap();
        let budget = SearchBudget {
            node_cap: 3,
            ..SearchBudget::default()
        };
        let e = subgroups_and_min_index(&g, &budget);
        assert!(!e.complete);
        assert_eq!(e.min_proper_index, MinIndex::Unknown);
    }

    #[test]
    fn coset_structure() {
        let g = build_named("cyclic 6").unwrap();
        let h = SubgroupRecord::from_elements(&g, &[0, 3]).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.index(), 3);
        assert_eq!(h.coset_reps(), &[0, 1, 2]);
        assert_eq!(h.coset_of(4), 1);
        assert_eq!(h.coset_elements(&g, 1), vec![1, 4]);
        assert!(h.is_normal(&g));
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = build_named("cyclic 6").unwrap();
        assert!(SubgroupRecord::from_elements(&g, &[0, 1]).is_err());
        assert!(SubgroupRecord::from_elements(&g, &[1, 5]).is_err());
    }
}
