//! Multi-variable constraint systems: density products, threshold tables
//! f(m), and witness search for collections Gamma of index subsets.
//!
//! A system fixes m variables ranging over a group and, for each F in
//! Gamma (F a nonempty subset of {1..m}), a target set A_F. A witness is an
//! assignment x_1..x_m with the ordered product x_F = prod_{i in F} x_i
//! (ascending index; the group may be nonabelian, so the order is part of
//! the contract) inside A_F for every F. Subsets not mentioned in Gamma are
//! treated as the full group, i.e. density 1.

use crate::bits::BitSubset;
use crate::characters::delta;
use crate::error::{Error, Result};
use crate::freeness::rational_to_f64;
use crate::group::FiniteGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

/// Index subset of {1..m} as a bitmask (bit i-1 for index i).
pub type VarSet = u32;

pub fn varset_from_indices(indices: &[usize]) -> VarSet {
    indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

pub fn varset_indices(mask: VarSet) -> Vec<usize> {
    (0..32)
        .filter(|&b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// A Gamma-collection of constraint sets over a group.
#[derive(Clone, Debug)]
pub struct DensitySystem<'g> {
    group: &'g FiniteGroup,
    m: usize,
    sets: BTreeMap<VarSet, BitSubset>,
}

impl<'g> DensitySystem<'g> {
    pub fn new(
        group: &'g FiniteGroup,
        m: usize,
        constraints: Vec<(Vec<usize>, BitSubset)>,
    ) -> Result<Self> {
        if m == 0 || m > 32 {
            return Err(Error::InvalidInput("m must lie in 1..=32".into()));
        }
        let mut sets = BTreeMap::new();
        for (indices, set) in constraints {
            if indices.is_empty() {
                return Err(Error::InvalidInput("constraint F must be nonempty".into()));
            }
            if indices.iter().any(|&i| i == 0 || i > m) {
                return Err(Error::InvalidInput(format!(
                    "constraint indices {indices:?} outside 1..={m}"
                )));
            }
            if set.universe() != group.n() {
                return Err(Error::InvalidInput(
                    "constraint set universe does not match the group order".into(),
                ));
            }
            let mask = varset_from_indices(&indices);
            if sets.insert(mask, set).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate constraint for F = {indices:?}"
                )));
            }
        }
        Ok(DensitySystem { group, m, sets })
    }

    /// All-pairs system: every singleton {i} and pair {i,j} has a set.
    pub fn all_pairs(
        group: &'g FiniteGroup,
        singles: Vec<BitSubset>,
        pairs: BTreeMap<(usize, usize), BitSubset>,
    ) -> Result<Self> {
        let m = singles.len();
        let mut constraints: Vec<(Vec<usize>, BitSubset)> = Vec::new();
        for (i, set) in singles.into_iter().enumerate() {
            constraints.push((vec![i + 1], set));
        }
        for ((i, j), set) in pairs {
            if !(1 <= i && i < j && j <= m) {
                return Err(Error::InvalidInput(format!(
                    "pair ({i}, {j}) out of order or range"
                )));
            }
            constraints.push((vec![i, j], set));
        }
        let sys = Self::new(group, m, constraints)?;
        if !sys.is_all_pairs() {
            return Err(Error::InvalidInput("missing pair constraints".into()));
        }
        Ok(sys)
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gamma(&self) -> impl Iterator<Item = VarSet> + '_ {
        self.sets.keys().copied()
    }

    pub fn set(&self, mask: VarSet) -> Option<&BitSubset> {
        self.sets.get(&mask)
    }

    /// Exact density of A_F; subsets outside Gamma count as the full group.
    pub fn density(&self, mask: VarSet) -> BigRational {
        match self.sets.get(&mask) {
            Some(set) => BigRational::new(
                BigInt::from(set.len() as u64),
                BigInt::from(self.group.n() as u64),
            ),
            None => BigRational::one(),
        }
    }

    /// Membership against A_F, where an absent constraint accepts anything.
    pub fn admits(&self, mask: VarSet, element: usize) -> bool {
        self.sets
            .get(&mask)
            .map(|set| set.contains(element))
            .unwrap_or(true)
    }

    pub fn is_all_pairs(&self) -> bool {
        for i in 1..=self.m {
            if !self.sets.contains_key(&varset_from_indices(&[i])) {
                return false;
            }
            for j in (i + 1)..=self.m {
                if !self.sets.contains_key(&varset_from_indices(&[i, j])) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest number of constraints through a single index.
    pub fn max_incidence(&self) -> usize {
        (1..=self.m)
            .map(|k| {
                self.sets
                    .keys()
                    .filter(|&&mask| mask >> (k - 1) & 1 == 1)
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    /// Ordered product of the assigned variables over F, ascending index.
    pub fn product_over(&self, assignment: &[usize], mask: VarSet) -> usize {
        let mut acc: Option<usize> = None;
        for (b, &x) in assignment.iter().enumerate().take(self.m) {
            if mask >> b & 1 == 1 {
                acc = Some(match acc {
                    None => x,
                    Some(prev) => self.group.mul(prev, x),
                });
            }
        }
        acc.expect("F is nonempty")
    }

    /// Every constraint satisfied by the assignment.
    pub fn verify(&self, assignment: &[usize]) -> Vec<VarSet> {
        self.gamma()
            .filter(|&mask| self.admits(mask, self.product_over(assignment, mask)))
            .collect()
    }
}

/// (i,j)-density product of an all-pairs system:
/// p_i p_j p_ij prod_{k<i} (p_ki p_kj).
pub fn density_product_pair(sys: &DensitySystem, i: usize, j: usize) -> Result<BigRational> {
    if !(1 <= i && i < j && j <= sys.m()) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= i < j <= m, got ({i}, {j})"
        )));
    }
    if !sys.is_all_pairs() {
        return Err(Error::InvalidInput(
            "pair density products require the all-pairs system".into(),
        ));
    }
    let mut product = sys.density(varset_from_indices(&[i]))
        * sys.density(varset_from_indices(&[j]))
        * sys.density(varset_from_indices(&[i, j]));
    for k in 1..i {
        product = product
            * sys.density(varset_from_indices(&[k, i]))
            * sys.density(varset_from_indices(&[k, j]));
    }
    Ok(product)
}

/// (h,E)-density product: the collection gathers every F in Gamma of the
/// form U with max U < h joined with V in { {h}, E, {h} u E }; the product
/// multiplies their densities (empty collection gives 1). Returns the
/// collection alongside the product.
pub fn density_product_general(
    sys: &DensitySystem,
    h: usize,
    e_mask: VarSet,
) -> Result<(Vec<VarSet>, BigRational)> {
    if h == 0 || h >= sys.m() {
        return Err(Error::InvalidInput(format!("need 1 <= h < m, got h = {h}")));
    }
    let low_mask: VarSet = (1 << (h - 1)) - 1; // indices < h
    if e_mask & low_mask != 0 || e_mask >> (h - 1) & 1 == 1 {
        return Err(Error::InvalidInput("E must be a subset of {h+1..m}".into()));
    }
    if e_mask >> sys.m() != 0 {
        return Err(Error::InvalidInput("E outside 1..=m".into()));
    }
    let h_mask: VarSet = 1 << (h - 1);
    let forms = [h_mask, e_mask, h_mask | e_mask];
    let mut collection = Vec::new();
    let mut product = BigRational::one();
    for mask in sys.gamma() {
        let high = mask & !low_mask;
        if forms.contains(&high) && high != 0 {
            collection.push(mask);
            product *= sys.density(mask);
        }
    }
    Ok((collection, product))
}

/// Threshold function table f(m), m = 2..=m_max.
#[derive(Clone, Debug)]
pub struct FTable {
    pub values: BTreeMap<usize, f64>,
    pub origin: FTableOrigin,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FTableOrigin {
    /// Equality case of the recurrence: f(m) = (sqrt(m) + sqrt(f(m-1)))^2.
    Minimal {
        f2: f64,
    },
    /// The closed-form recurrence f(m) = (m+1-f(m-1))^2 / (4m), kept for
    /// inspection; it does not satisfy the required inequality.
    ClosedForm {
        f2: f64,
    },
    User,
}

impl FTable {
    pub fn get(&self, m: usize) -> Option<f64> {
        self.values.get(&m).copied()
    }

    pub fn m_max(&self) -> usize {
        self.values.keys().max().copied().unwrap_or(1)
    }

    pub fn from_values(values: BTreeMap<usize, f64>) -> Self {
        FTable {
            values,
            origin: FTableOrigin::User,
        }
    }
}

/// Minimal admissible threshold table: f(2) = f2 (> 1 required) and f(m)
/// the unique root above m of (1 - sqrt(m/f))^2 f = f(m-1), namely
/// (sqrt(m) + sqrt(f(m-1)))^2.
pub fn minimal_f_table(m_max: usize, f2: f64) -> Result<FTable> {
    if m_max < 2 {
        return Err(Error::InvalidInput("m_max must be at least 2".into()));
    }
    if f2.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidInput("f(2) must exceed 1".into()));
    }
    let mut values = BTreeMap::new();
    values.insert(2, f2);
    let mut prev = f2;
    for m in 3..=m_max {
        let next = ((m as f64).sqrt() + prev.sqrt()).powi(2);
        values.insert(m, next);
        prev = next;
    }
    Ok(FTable {
        values,
        origin: FTableOrigin::Minimal { f2 },
    })
}

/// The closed-form table f(m) = (m+1-f(m-1))^2/(4m); exposed so the
/// validator can demonstrate that it fails the recurrence inequality.
pub fn closed_form_f_table(m_max: usize, f2: f64) -> FTable {
    let mut values = BTreeMap::new();
    values.insert(2, f2);
    let mut prev = f2;
    for m in 3..=m_max {
        let next = ((m as f64) + 1.0 - prev).powi(2) / (4.0 * m as f64);
        values.insert(m, next);
        prev = next;
    }
    FTable {
        values,
        origin: FTableOrigin::ClosedForm { f2 },
    }
}

pub const F_TABLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct FRowCheck {
    pub m: usize,
    pub f_m: f64,
    pub f_prev: f64,
    /// (1 - sqrt(m / f(m)))^2 f(m).
    pub lhs: f64,
    pub slack: f64,
    /// The proof needs f(m) > m for a nonnegative shrink factor; flagged
    /// separately from the inequality itself.
    pub f_exceeds_m: bool,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct FValidation {
    pub f2: f64,
    pub f2_ok: bool,
    pub rows: Vec<FRowCheck>,
    pub all_hold: bool,
}

/// Check f(2) > 1 and (1 - sqrt(m/f(m)))^2 f(m) >= f(m-1) for m = 3..m_max,
/// with tolerance 1e-9; f(m) > m is reported per row.
pub fn validate_f_table(f: &FTable, m_max: usize) -> Result<FValidation> {
    let f2 = f
        .get(2)
        .ok_or_else(|| Error::InvalidInput("table must define f(2)".into()))?;
    let f2_ok = f2 > 1.0;
    let mut rows = Vec::new();
    for m in 3..=m_max {
        let f_m = f
            .get(m)
            .ok_or_else(|| Error::InvalidInput(format!("table must define f({m})")))?;
        let f_prev = f.get(m - 1).expect("previous row exists");
        let lhs = if f_m > 0.0 {
            (1.0 - (m as f64 / f_m).sqrt()).powi(2) * f_m
        } else {
            f64::NAN
        };
        let slack = lhs - f_prev;
        rows.push(FRowCheck {
            m,
            f_m,
            f_prev,
            lhs,
            slack,
            f_exceeds_m: f_m > m as f64,
            holds: lhs >= f_prev - F_TABLE_TOL,
        });
    }
    let all_hold = f2_ok && rows.iter().all(|r| r.holds);
    Ok(FValidation {
        f2,
        f2_ok,
        rows,
        all_hold,
    })
}

/// Hypothesis report for 3-variable all-pairs systems: the three density
/// products p1 p2 p12, p1 p3 p13, p2 p3 p23 p12 p13 against M/delta, plus
/// the proof constants lambda = 2 - sqrt(2) and the admissible mu interval
/// ((3 + 2 sqrt 2)/(2M), 1/2).
#[derive(Clone, Debug)]
pub struct M3Hypotheses {
    pub m_const: f64,
    pub delta: usize,
    pub threshold: f64,
    pub products: [BigRational; 3],
    pub products_f64: [f64; 3],
    pub product_holds: [bool; 3],
    pub all_hold: bool,
    /// M at or below 3 + 2 sqrt 2: the construction's constants are not
    /// guaranteed to exist.
    pub below_minimum_constant: bool,
    pub lambda: f64,
    pub mu_interval: (f64, f64),
    pub mu_mid: f64,
    /// M >= 1/(mu lambda^2) at the midpoint mu.
    pub mu_lambda_ok: bool,
}

pub const M3_THRESHOLD_CONSTANT: f64 = 5.82842712474619; // 3 + 2 sqrt 2

pub fn check_m3_hypotheses(sys: &DensitySystem, m_const: f64) -> Result<M3Hypotheses> {
    if sys.m() != 3 {
        return Err(Error::InvalidInput("hypothesis check needs m = 3".into()));
    }
    if !sys.is_all_pairs() {
        return Err(Error::InvalidInput(
            "hypothesis check needs the all-pairs system".into(),
        ));
    }
    let d = delta(sys.group())?;
    let threshold = m_const / d as f64;
    let products = [
        density_product_pair(sys, 1, 2)?,
        density_product_pair(sys, 1, 3)?,
        density_product_pair(sys, 2, 3)?,
    ];
    let products_f64 = [
        rational_to_f64(&products[0]),
        rational_to_f64(&products[1]),
        rational_to_f64(&products[2]),
    ];
    let product_holds = [
        products_f64[0] >= threshold,
        products_f64[1] >= threshold,
        products_f64[2] >= threshold,
    ];
    let lambda = 2.0 - 2.0f64.sqrt();
    let mu_lo = M3_THRESHOLD_CONSTANT / (2.0 * m_const);
    let mu_hi = 0.5;
    let mu_mid = 0.5 * (mu_lo + mu_hi);
    Ok(M3Hypotheses {
        m_const,
        delta: d,
        threshold,
        all_hold: product_holds.iter().all(|&h| h),
        products,
        products_f64,
        product_holds,
        below_minimum_constant: m_const <= M3_THRESHOLD_CONSTANT,
        lambda,
        mu_interval: (mu_lo, mu_hi),
        mu_mid,
        mu_lambda_ok: m_const >= 1.0 / (mu_mid * lambda * lambda),
    })
}

/// A witness assignment, when one exists. `satisfied` lists the constraints
/// the assignment meets (all of Gamma whenever `assignment` is present).
#[derive(Clone, Debug)]
pub struct WitnessResult {
    pub assignment: Option<Vec<usize>>,
    pub satisfied: Vec<VarSet>,
    pub nodes: u64,
}

fn masks_m3() -> [VarSet; 6] {
    [
        varset_from_indices(&[1]),
        varset_from_indices(&[2]),
        varset_from_indices(&[3]),
        varset_from_indices(&[1, 2]),
        varset_from_indices(&[1, 3]),
        varset_from_indices(&[2, 3]),
    ]
}

/// Exhaustive backtracking witness search for m = 3 with constraint
/// propagation: x2 ranges over A2 cap x1^-1 A12 and x3 over
/// A3 cap x1^-1 A13 filtered by x2 x3 in A23. Returns the lexicographically
/// smallest witness.
pub fn find_witness_m3(sys: &DensitySystem) -> Result<WitnessResult> {
    if sys.m() != 3 {
        return Err(Error::InvalidInput("witness search needs m = 3".into()));
    }
    let g = sys.group();
    let n = g.n();
    let [f1, f2, f3, f12, f13, f23] = masks_m3();
    let mut nodes = 0u64;
    let domain = |mask: VarSet| -> Vec<usize> {
        match sys.set(mask) {
            Some(set) => set.as_indices(),
            None => (0..n).collect(),
        }
    };
    let d1 = domain(f1);
    let d2 = domain(f2);
    let d3 = domain(f3);
    for &x1 in &d1 {
        nodes += 1;
        let b2: Vec<usize> = d2
            .iter()
            .copied()
            .filter(|&x2| sys.admits(f12, g.mul(x1, x2)))
            .collect();
        if b2.is_empty() {
            continue;
        }
        let b3: Vec<usize> = d3
            .iter()
            .copied()
            .filter(|&x3| sys.admits(f13, g.mul(x1, x3)))
            .collect();
        for &x2 in &b2 {
            nodes += 1;
            for &x3 in &b3 {
                nodes += 1;
                if sys.admits(f23, g.mul(x2, x3)) {
                    let assignment = vec![x1, x2, x3];
                    let satisfied = sys.verify(&assignment);
                    debug_assert_eq!(satisfied.len(), sys.gamma().count());
                    return Ok(WitnessResult {
                        assignment: Some(assignment),
                        satisfied,
                        nodes,
                    });
                }
            }
        }
    }
    Ok(WitnessResult {
        assignment: None,
        satisfied: Vec::new(),
        nodes,
    })
}

/// Stage log of the two-step witness construction.
#[derive(Clone, Debug)]
pub struct StageLog {
    pub x1: usize,
    pub b2_size: usize,
    pub b3_size: usize,
    pub q2: f64,
    pub q3: f64,
    /// q2 q3 p23 delta; at least 1 whenever the hypotheses hold.
    pub final_product_delta: f64,
    pub final_ok: bool,
}

#[derive(Clone, Debug)]
pub struct StagedWitness {
    /// True when the hypotheses failed and the caller should fall back to
    /// [`find_witness_m3`].
    pub refused: bool,
    pub hypotheses: M3Hypotheses,
    pub witness: WitnessResult,
    pub log: Option<StageLog>,
}

/// Witness search following the two-stage strategy: pick x1 in A1 whose
/// translate intersections B2 = A2 cap x1^-1 A12 and B3 = A3 cap x1^-1 A13
/// both exceed (1 - lambda) of their expected densities, then pair y2 in
/// B2 with y3 in B3 so that y2 y3 lands in A23.
pub fn staged_witness_m3(
    sys: &DensitySystem,
    m_const: f64,
    lambda: Option<f64>,
    mu: Option<f64>,
) -> Result<StagedWitness> {
    let hypotheses = check_m3_hypotheses(sys, m_const)?;
    if !hypotheses.all_hold {
        return Ok(StagedWitness {
            refused: true,
            hypotheses,
            witness: WitnessResult {
                assignment: None,
                satisfied: Vec::new(),
                nodes: 0,
            },
            log: None,
        });
    }
    let lambda = lambda.unwrap_or(2.0 - 2.0f64.sqrt());
    let _mu = mu.unwrap_or(hypotheses.mu_mid);
    let g = sys.group();
    let n = g.n();
    let [f1, f2, f3, f12, f13, f23] = masks_m3();
    let d = hypotheses.delta as f64;
    let p2 = rational_to_f64(&sys.density(f2));
    let p12 = rational_to_f64(&sys.density(f12));
    let p3 = rational_to_f64(&sys.density(f3));
    let p13 = rational_to_f64(&sys.density(f13));
    let p23 = rational_to_f64(&sys.density(f23));
    let thr2 = (1.0 - lambda) * p2 * p12 * n as f64;
    let thr3 = (1.0 - lambda) * p3 * p13 * n as f64;
    let mut nodes = 0u64;
    let d1: Vec<usize> = match sys.set(f1) {
        Some(set) => set.as_indices(),
        None => (0..n).collect(),
    };
    for &x1 in &d1 {
        nodes += 1;
        let b2: Vec<usize> = (0..n)
            .filter(|&x2| sys.admits(f2, x2) && sys.admits(f12, g.mul(x1, x2)))
            .collect();
        let b3: Vec<usize> = (0..n)
            .filter(|&x3| sys.admits(f3, x3) && sys.admits(f13, g.mul(x1, x3)))
            .collect();
        if (b2.len() as f64) <= thr2 || (b3.len() as f64) <= thr3 {
            continue;
        }
        let q2 = b2.len() as f64 / n as f64;
        let q3 = b3.len() as f64 / n as f64;
        let final_product_delta = q2 * q3 * p23 * d;
        let log = StageLog {
            x1,
            b2_size: b2.len(),
            b3_size: b3.len(),
            q2,
            q3,
            final_product_delta,
            final_ok: final_product_delta >= 1.0,
        };
        for &y2 in &b2 {
            nodes += 1;
            for &y3 in &b3 {
                nodes += 1;
                if sys.admits(f23, g.mul(y2, y3)) {
                    let assignment = vec![x1, y2, y3];
                    let satisfied = sys.verify(&assignment);
                    debug_assert_eq!(satisfied.len(), sys.gamma().count());
                    return Ok(StagedWitness {
                        refused: false,
                        hypotheses,
                        witness: WitnessResult {
                            assignment: Some(assignment),
                            satisfied,
                            nodes,
                        },
                        log: Some(log),
                    });
                }
            }
        }
        // No pair under this x1; the stage guarantee failed to produce a
        // solution, which the log records.
        return Ok(StagedWitness {
            refused: false,
            hypotheses,
            witness: WitnessResult {
                assignment: None,
                satisfied: Vec::new(),
                nodes,
            },
            log: Some(log),
        });
    }
    Ok(StagedWitness {
        refused: false,
        hypotheses,
        witness: WitnessResult {
            assignment: None,
            satisfied: Vec::new(),
            nodes,
        },
        log: None,
    })
}

/// Backtracking witness search for arbitrary Gamma. Variables are assigned
/// in index order; every constraint whose largest index is the current
/// level is checked on assignment. Returns the lexicographically smallest
/// witness.
pub fn find_witness_gamma(sys: &DensitySystem) -> Result<WitnessResult> {
    let g = sys.group();
    let n = g.n();
    let m = sys.m();
    let domains: Vec<Vec<usize>> = (1..=m)
        .map(|i| match sys.set(varset_from_indices(&[i])) {
            Some(set) => set.as_indices(),
            None => (0..n).collect(),
        })
        .collect();
    if m > 6 {
        let space: f64 = domains.iter().map(|d| d.len() as f64).product();
        if space > 1e8 {
            return Err(Error::CapExceeded(format!(
                "search space {space:.3e} above 1e8 with m = {m} > 6"
            )));
        }
    }
    // Constraints grouped by their highest index, singletons excluded
    // (handled by the domains).
    let mut at_level: Vec<Vec<VarSet>> = vec![Vec::new(); m + 1];
    for mask in sys.gamma() {
        let top = 32 - mask.leading_zeros() as usize;
        if mask.count_ones() > 1 {
            at_level[top].push(mask);
        }
    }
    struct St<'s, 'g> {
        sys: &'s DensitySystem<'g>,
        domains: &'s [Vec<usize>],
        at_level: &'s [Vec<VarSet>],
        assignment: Vec<usize>,
        nodes: u64,
    }
    fn descend(st: &mut St<'_, '_>, level: usize) -> bool {
        let m = st.sys.m();
        if level > m {
            return true;
        }
        let domain = &st.domains[level - 1];
        for &x in domain {
            st.nodes += 1;
            st.assignment[level - 1] = x;
            let ok = st.at_level[level].iter().all(|&mask| {
                st.sys
                    .admits(mask, st.sys.product_over(&st.assignment, mask))
            });
            if ok && descend(st, level + 1) {
                return true;
            }
        }
        false
    }
    let mut st = St {
        sys,
        domains: &domains,
        at_level: &at_level,
        assignment: vec![0; m],
        nodes: 0,
    };
    if descend(&mut st, 1) {
        let satisfied = sys.verify(&st.assignment);
        debug_assert_eq!(satisfied.len(), sys.gamma().count());
        Ok(WitnessResult {
            assignment: Some(st.assignment),
            satisfied,
            nodes: st.nodes,
        })
    } else {
        Ok(WitnessResult {
            assignment: None,
            satisfied: Vec::new(),
            nodes: st.nodes,
        })
    }
}

#[derive(Clone, Debug)]
pub struct GammaHypothesisEntry {
    pub h: usize,
    pub e: VarSet,
    pub collection: Vec<VarSet>,
    pub product: BigRational,
    pub product_f64: f64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct GammaHypotheses {
    pub h_m: usize,
    pub delta: usize,
    pub threshold: f64,
    pub entries: Vec<GammaHypothesisEntry>,
    pub skipped_empty: usize,
    pub all_products_hold: bool,
    /// Rows of the f-table inequality with h(m) in place of m.
    pub f_rows: Vec<FRowCheck>,
    pub f_ok: bool,
}

/// Hypothesis check for arbitrary Gamma: every (h,E)-density product with
/// nonempty collection must reach f(m)/delta, and the threshold table must
/// satisfy the recurrence inequality with h(m) in place of the index.
/// Pairs (h, E) with empty collections are vacuous and skipped; E = {} is
/// excluded from enumeration.
pub fn check_gamma_hypotheses(sys: &DensitySystem, f: &FTable) -> Result<GammaHypotheses> {
    let m = sys.m();
    let d = delta(sys.group())?;
    let h_m = sys.max_incidence();
    let f_m = f
        .get(m)
        .ok_or_else(|| Error::InvalidInput(format!("table must define f({m})")))?;
    let threshold = f_m / d as f64;
    let mut entries = Vec::new();
    let mut skipped_empty = 0usize;
    for h in 1..m {
        // Nonempty E over {h+1..m}.
        let tail_bits = m - h;
        for e_pattern in 1u32..(1 << tail_bits) {
            let e_mask: VarSet = e_pattern << h;
            let (collection, product) = density_product_general(sys, h, e_mask)?;
            if collection.is_empty() {
                skipped_empty += 1;
                continue;
            }
            let product_f64 = rational_to_f64(&product);
            entries.push(GammaHypothesisEntry {
                h,
                e: e_mask,
                collection,
                product_f64,
                holds: product_f64 >= threshold,
                product,
            });
        }
    }
    let mut f_rows = Vec::new();
    for j in 3..=m {
        let f_j = f
            .get(j)
            .ok_or_else(|| Error::InvalidInput(format!("table must define f({j})")))?;
        let f_prev = f.get(j - 1).expect("previous row exists");
        let lhs = if f_j > 0.0 {
            (1.0 - (h_m as f64 / f_j).sqrt()).powi(2) * f_j
        } else {
            f64::NAN
        };
        f_rows.push(FRowCheck {
            m: j,
            f_m: f_j,
            f_prev,
            lhs,
            slack: lhs - f_prev,
            f_exceeds_m: f_j > h_m as f64,
            holds: lhs >= f_prev - F_TABLE_TOL,
        });
    }
    let all_products_hold = entries.iter().all(|e| e.holds);
    let f_ok = f_rows.iter().all(|r| r.holds);
    Ok(GammaHypotheses {
        h_m,
        delta: d,
        threshold,
        entries,
        skipped_empty,
        all_products_hold,
        f_rows,
        f_ok,
    })
}
