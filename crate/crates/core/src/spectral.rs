//! Bipartite Cayley graph spectra.
//!
//! For a subset A of G, the bipartite graph on two copies of G joins x in
//! V1 to y in V2 when y x^-1 lies in A. N is its 0/1 incidence matrix and
//! M = N N^t the Gram matrix; M[x][z] = |A cap A (x z^-1)^-1| depends only
//! on x z^-1, which is how the dense matrix is assembled. The full spectrum
//! of M is computed numerically and drives the second-eigenvalue bound
//! lambda_2 <= n |A| / delta and the solution-free triple bound.

use crate::bits::BitSubset;
use crate::characters::delta;
use crate::error::{Error, Result};
use crate::freeness::count_triples;
use crate::group::{limits, FiniteGroup};
use crate::linalg::{sym_eigenvalues, SquareMat};
use std::collections::BTreeMap;

/// 0/1 incidence matrix of the bipartite Cayley graph of a subset. Row x,
/// column y holds 1 iff y x^-1 is in the subset.
#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    n: usize,
    words_per_row: usize,
    set: BitSubset,
    rows: Vec<u64>,
}

/// Build the incidence matrix; the subset must be nonempty. Every row and
/// column sum equals |A| by construction (asserted).
pub fn incidence(group: &FiniteGroup, set: &BitSubset) -> Result<IncidenceMatrix> {
    if set.is_empty() {
        return Err(Error::InvalidInput(
            "incidence matrix requires a nonempty subset".into(),
        ));
    }
    let n = group.n();
    let words_per_row = n.div_ceil(64);
    let mut rows = vec![0u64; n * words_per_row];
    for x in 0..n {
        let inv_x = group.inv(x);
        let row = &mut rows[x * words_per_row..(x + 1) * words_per_row];
        for y in 0..n {
            if set.contains(group.mul(y, inv_x)) {
                row[y >> 6] |= 1 << (y & 63);
            }
        }
    }
    let m = IncidenceMatrix {
        n,
        words_per_row,
        set: set.clone(),
        rows,
    };
    debug_assert!((0..n).all(|x| m.row_sum(x) == set.len()));
    debug_assert!((0..n).all(|y| m.col_sum(y) == set.len()));
    Ok(m)
}

impl IncidenceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &BitSubset {
        &self.set
    }

    #[inline]
    pub fn entry(&self, x: usize, y: usize) -> bool {
        self.rows[x * self.words_per_row + (y >> 6)] >> (y & 63) & 1 == 1
    }

    pub fn row_sum(&self, x: usize) -> usize {
        self.rows[x * self.words_per_row..(x + 1) * self.words_per_row]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_sum(&self, y: usize) -> usize {
        (0..self.n).filter(|&x| self.entry(x, y)).count()
    }

    /// Dense N N^t, straight from the bit rows. Quadratic in n times |A|;
    /// kept as the independent route against [`gram_matrix`].
    pub fn gram_directly(&self) -> SquareMat {
        let n = self.n;
        let mut m = SquareMat::zeros(n);
        for x in 0..n {
            let rx = &self.rows[x * self.words_per_row..(x + 1) * self.words_per_row];
            for z in x..n {
                let rz = &self.rows[z * self.words_per_row..(z + 1) * self.words_per_row];
                let dot: u32 = rx.iter().zip(rz).map(|(a, b)| (a & b).count_ones()).sum();
                m.set(x, z, dot as f64);
                m.set(z, x, dot as f64);
            }
        }
        m
    }
}

/// M = N N^t assembled through the correlation vector
/// c(g) = #{a in A : a g in A}, using M[x][z] = c(x z^-1).
pub fn gram_matrix(group: &FiniteGroup, set: &BitSubset) -> SquareMat {
    let n = group.n();
    let mut corr = vec![0.0f64; n];
    for (g, c) in corr.iter_mut().enumerate() {
        let mut count = 0usize;
        for a in set.iter() {
            if set.contains(group.mul(a, g)) {
                count += 1;
            }
        }
        *c = count as f64;
    }
    let mut m = SquareMat::zeros(n);
    for x in 0..n {
        for z in 0..n {
            m.set(x, z, corr[group.mul(x, group.inv(z))]);
        }
    }
    m
}

/// Spectral summary of M = N N^t for one subset.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub n: usize,
    pub set_size: usize,
    pub delta: usize,
    /// Largest singular value of N (square root of the top eigenvalue of M).
    pub sigma_max: f64,
    /// Spectrum of M, descending.
    pub eigenvalues: Vec<f64>,
    /// Second-largest eigenvalue of M counting multiplicity.
    pub lambda2: f64,
    /// n |A| / delta.
    pub bound: f64,
    /// lambda2 <= bound + 1e-6.
    pub degree_bound_holds: bool,
}

impl SpectralReport {
    pub fn eigenvalue_sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Exact trace of M: n |A|.
    pub fn expected_trace(&self) -> f64 {
        (self.n * self.set_size) as f64
    }
}

pub const DEGREE_BOUND_TOL: f64 = 1e-6;

pub fn spectral_report(group: &FiniteGroup, set: &BitSubset) -> Result<SpectralReport> {
    let n = group.n();
    if n > limits::SPECTRAL_CAP {
        return Err(Error::CapExceeded(format!(
            "order {n} above spectral cap {}",
            limits::SPECTRAL_CAP
        )));
    }
    if set.is_empty() {
        return Err(Error::InvalidInput(
            "spectral report requires a nonempty subset".into(),
        ));
    }
    let d = delta(group)?;
    let m = gram_matrix(group, set);
    let mut eigenvalues = sym_eigenvalues(&m)?;
    eigenvalues.reverse();
    let sigma_max = eigenvalues[0].max(0.0).sqrt();
    let lambda2 = if n >= 2 {
        eigenvalues[1]
    } else {
        eigenvalues[0]
    };
    let bound = (n * set.len()) as f64 / d as f64;
    Ok(SpectralReport {
        n,
        set_size: set.len(),
        delta: d,
        sigma_max,
        eigenvalues,
        lambda2,
        bound,
        degree_bound_holds: lambda2 <= bound + DEGREE_BOUND_TOL,
    })
}

/// Both sides of the solution-free triple bounds
/// |A||B||C| <= n^2 lambda2 / |A| and |A||B||C| <= n^3 / delta.
#[derive(Clone, Debug)]
pub struct TripleBoundReport {
    /// False when the triple admits solutions of ab = c, in which case the
    /// bounds are not claimed.
    pub applicable: bool,
    pub solution_count: u64,
    pub size_a: usize,
    pub size_b: usize,
    pub size_c: usize,
    pub product: f64,
    pub lambda2: f64,
    pub spectral_rhs: f64,
    pub delta_rhs: f64,
    /// Additive slack 1e-6 n^3 absorbing eigensolver error.
    pub tolerance: f64,
    pub holds_spectral: bool,
    pub holds_delta: bool,
}

pub fn check_triple_bound(
    group: &FiniteGroup,
    a: &BitSubset,
    b: &BitSubset,
    c: &BitSubset,
) -> Result<TripleBoundReport> {
    if a.is_empty() {
        return Err(Error::InvalidInput(
            "triple bound requires nonempty A".into(),
        ));
    }
    let n = group.n() as f64;
    let count = count_triples(group, a, b, c);
    let report = spectral_report(group, a)?;
    let product = (a.len() as f64) * (b.len() as f64) * (c.len() as f64);
    let spectral_rhs = n * n * report.lambda2 / a.len() as f64;
    let delta_rhs = n * n * n / report.delta as f64;
    let tolerance = 1e-6 * n * n * n;
    let applicable = count == 0;
    Ok(TripleBoundReport {
        applicable,
        solution_count: count,
        size_a: a.len(),
        size_b: b.len(),
        size_c: c.len(),
        product,
        lambda2: report.lambda2,
        spectral_rhs,
        delta_rhs,
        tolerance,
        holds_spectral: !applicable || product <= spectral_rhs + tolerance,
        holds_delta: !applicable || product <= delta_rhs + tolerance,
    })
}

/// Exact distribution of |A cap xB| over all x in G.
#[derive(Clone, Debug)]
pub struct IntersectionProfile {
    /// values[x] = |A cap xB|.
    pub values: Vec<usize>,
    pub histogram: BTreeMap<usize, usize>,
    /// Sum over all x; equals |A| |B| identically.
    pub total: u64,
    /// Exact mean numerator |A| |B| over denominator n.
    pub mean_numer: u64,
    pub mean_denom: u64,
    pub identity_holds: bool,
}

pub fn intersection_profile(
    group: &FiniteGroup,
    a: &BitSubset,
    b: &BitSubset,
) -> IntersectionProfile {
    let n = group.n();
    let mut values = vec![0usize; n];
    for (x, slot) in values.iter_mut().enumerate() {
        let mut count = 0usize;
        for elem in b.iter() {
            if a.contains(group.mul(x, elem)) {
                count += 1;
            }
        }
        *slot = count;
    }
    let mut histogram = BTreeMap::new();
    for &v in &values {
        *histogram.entry(v).or_insert(0usize) += 1;
    }
    let total: u64 = values.iter().map(|&v| v as u64).sum();
    let mean_numer = (a.len() * b.len()) as u64;
    IntersectionProfile {
        values,
        histogram,
        total,
        mean_numer,
        mean_denom: n as u64,
        identity_holds: total == mean_numer,
    }
}

/// Tail bound on translate intersections: with densities r, s and shrink
/// factor gamma, provided r s t >= 1/(gamma^2 delta), the number of x with
/// |A cap xB| <= (1 - gamma) r s n is at most t n. The conclusion is
/// evaluated regardless and the hypothesis reported alongside.
#[derive(Clone, Debug)]
pub struct IntersectionTailReport {
    pub gamma: f64,
    pub t: f64,
    pub delta: usize,
    pub hypothesis_lhs: f64,
    pub hypothesis_rhs: f64,
    pub hypothesis_holds: bool,
    pub threshold: f64,
    pub bad_count: usize,
    pub allowed: f64,
    pub conclusion_holds: bool,
}

pub fn check_intersection_bound(
    group: &FiniteGroup,
    a: &BitSubset,
    b: &BitSubset,
    gamma: f64,
    t: f64,
) -> Result<IntersectionTailReport> {
    if !(0.0 < gamma && gamma < 1.0) {
        return Err(Error::InvalidInput("gamma must lie in (0, 1)".into()));
    }
    if t <= 0.0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let n = group.n() as f64;
    let d = delta(group)?;
    let r = a.len() as f64 / n;
    let s = b.len() as f64 / n;
    let profile = intersection_profile(group, a, b);
    let threshold = (1.0 - gamma) * r * s * n;
    let bad_count = profile
        .values
        .iter()
        .filter(|&&v| v as f64 <= threshold)
        .count();
    let allowed = t * n;
    Ok(IntersectionTailReport {
        gamma,
        t,
        delta: d,
        hypothesis_lhs: r * s * t,
        hypothesis_rhs: 1.0 / (gamma * gamma * d as f64),
        hypothesis_holds: r * s * t >= 1.0 / (gamma * gamma * d as f64),
        threshold,
        bad_count,
        allowed,
        conclusion_holds: (bad_count as f64) <= allowed,
    })
}
