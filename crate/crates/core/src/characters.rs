//! Irreducible character degrees computed numerically from class matrices.
//!
//! The class-sum matrices M_i (structure constants of the center of the
//! group algebra) commute and share eigenvectors; the eigenvalue of M_i on
//! the eigenvector belonging to a character chi is
//! omega_i = |C_i| chi(g_i) / d_chi, and first orthogonality turns the
//! omega profile into the degree d_chi = sqrt(n / sum_i |omega_i|^2/|C_i|).
//!
//! The matrices are not symmetric (omega can be complex), so they are first
//! rescaled by D = diag(1/sqrt|C_j|), after which transposition acts as the
//! inversion of classes and every T_i = D M_i D^-1 is normal. Splitting
//! T_i = H_i + K_i into symmetric and antisymmetric parts gives a commuting
//! family of symmetric matrices {H_i, -K_i^2} whose joint eigenspaces are
//! 1-dimensional for real-valued characters and 2-dimensional for conjugate
//! pairs. A random symmetric combination (fixed seed schedule 1..5) is
//! diagonalized by Jacobi sweeps; on each small eigenspace the restricted
//! T_i is either a scalar or a + bJ with J a rotation generator, yielding
//! |omega_i|^2 = a^2 + b^2 either way. Degrees are rounded to integers and
//! the rounding residual is reported.

use crate::error::{Error, Result};
use crate::group::conjugacy::{conjugacy_classes, ConjugacyPartition};
use crate::group::FiniteGroup;
use crate::linalg::{jacobi_eigen, SquareMat};
use crate::rng::SplitMix64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Multiset of irreducible character degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterDegreeTable {
    /// Ascending.
    pub degrees: Vec<usize>,
    /// Smallest degree of a nontrivial irreducible (smallest entry after
    /// removing one copy of 1).
    pub delta: usize,
    /// Largest deviation of a pre-rounding numeric degree from its integer.
    pub residual: f64,
}

/// Class matrices of the conjugacy partition: entry (j, l) of the i-th
/// matrix counts the ways a fixed representative of class l factors as a*b
/// with a in class i and b in class j. The matrices commute pairwise.
pub fn class_matrices(group: &FiniteGroup, partition: &ConjugacyPartition) -> Vec<Vec<u64>> {
    let k = partition.class_count();
    let reps = partition.representatives();
    let mut mats = vec![vec![0u64; k * k]; k];
    for (i, class) in partition.classes.iter().enumerate() {
        let mat = &mut mats[i];
        for &a in class {
            let inv_a = group.inv(a as usize);
            for (l, &rep) in reps.iter().enumerate() {
                let b = group.mul(inv_a, rep);
                let j = partition.class_of[b] as usize;
                mat[j * k + l] += 1;
            }
        }
    }
    mats
}

/// Seeds tried in order for the random symmetric combination.
const SEED_SCHEDULE: [u64; 5] = [1, 2, 3, 4, 5];

/// Residual threshold for accepting the rounded degrees.
const RESIDUAL_TOL: f64 = 1e-6;

pub fn character_degrees(group: &FiniteGroup) -> Result<CharacterDegreeTable> {
    if group.n() < 2 {
        return Err(Error::InvalidInput(
            "character degrees require group order at least 2".into(),
        ));
    }
    if let Some(hit) = cache_get(group.hash()) {
        return Ok(hit);
    }
    let partition = conjugacy_classes(group);
    let mats = class_matrices(group, &partition);
    let table = degrees_from_class_matrices(group.n(), &partition, &mats)?;
    cache_put(group.hash(), table.clone());
    Ok(table)
}

/// Smallest dimension of a nontrivial irreducible representation. Cached by
/// group hash along with the full degree table.
pub fn delta(group: &FiniteGroup) -> Result<usize> {
    Ok(character_degrees(group)?.delta)
}

fn cache() -> &'static Mutex<HashMap<u64, CharacterDegreeTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, CharacterDegreeTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_get(hash: u64) -> Option<CharacterDegreeTable> {
    cache().lock().expect("cache poisoned").get(&hash).cloned()
}

fn cache_put(hash: u64, table: CharacterDegreeTable) {
    cache().lock().expect("cache poisoned").insert(hash, table);
}

fn degrees_from_class_matrices(
    n: usize,
    partition: &ConjugacyPartition,
    mats: &[Vec<u64>],
) -> Result<CharacterDegreeTable> {
    let k = partition.class_count();
    let sizes = &partition.sizes;
    // T_i = D M_i D^-1 with D = diag(1/sqrt|C_j|).
    let weighted: Vec<SquareMat> = mats
        .iter()
        .map(|m| {
            SquareMat::from_fn(k, |j, l| {
                m[j * k + l] as f64 * (sizes[l] as f64 / sizes[j] as f64).sqrt()
            })
        })
        .collect();
    let scale: Vec<f64> = weighted.iter().map(|t| t.frobenius().max(1.0)).collect();

    let mut last_failure = String::new();
    for seed in SEED_SCHEDULE {
        match degrees_attempt(n, sizes, &weighted, &scale, seed) {
            Ok(table) => return Ok(table),
            Err(msg) => last_failure = msg,
        }
    }
    Err(Error::DegenerateDiagonalization(last_failure))
}

fn degrees_attempt(
    n: usize,
    sizes: &[usize],
    weighted: &[SquareMat],
    scale: &[f64],
    seed: u64,
) -> std::result::Result<CharacterDegreeTable, String> {
    let k = sizes.len();
    let mut rng = SplitMix64::new(seed);
    let mut combo = SquareMat::zeros(k);
    for t in weighted {
        let r = rng.uniform(-1.0, 1.0);
        let s = rng.uniform(-1.0, 1.0);
        // H = (T + T^t)/2 and S = K^t K with K = (T - T^t)/2; both symmetric
        // members of the commuting family.
        let tt = t.transpose();
        let mut h = SquareMat::zeros(k);
        let mut kk = SquareMat::zeros(k);
        for idx in 0..k * k {
            h.data[idx] = 0.5 * (t.data[idx] + tt.data[idx]);
            kk.data[idx] = 0.5 * (t.data[idx] - tt.data[idx]);
        }
        let s_mat = kk.transpose().matmul(&kk);
        for idx in 0..k * k {
            combo.data[idx] += r * h.data[idx] + s * s_mat.data[idx];
        }
    }
    let (vals, vecs) = jacobi_eigen(&combo).map_err(|e| e.to_string())?;

    // Cluster eigenvalues. Conjugate pairs coincide exactly; anything else
    // is separated by the random combination for a generic seed.
    let spread = vals.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let cluster_tol = 1e-6 * spread;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in 0..k {
        match clusters.last_mut() {
            Some(current) if vals[idx] - vals[*current.last().unwrap()] <= cluster_tol => {
                current.push(idx)
            }
            _ => clusters.push(vec![idx]),
        }
    }

    // Restrict every T_i to the eigenbasis and read off |omega|^2 per
    // cluster, verifying that clusters really are joint invariant subspaces.
    let mut absq = vec![vec![0.0f64; k]; clusters.len()]; // [cluster][class]
    for (i, t) in weighted.iter().enumerate() {
        let b = restrict(t, &vecs);
        let block_tol = 1e-7 * scale[i];
        for (ci, cluster) in clusters.iter().enumerate() {
            for &r in cluster {
                for c in 0..k {
                    if !cluster.contains(&c) && b.get(r, c).abs() > block_tol {
                        return Err(format!(
                            "seed {seed}: eigenvalue clusters not invariant (class {i})"
                        ));
                    }
                }
            }
            match cluster.as_slice() {
                [r] => absq[ci][i] = b.get(*r, *r) * b.get(*r, *r),
                [r0, r1] => {
                    let (d0, d1) = (b.get(*r0, *r0), b.get(*r1, *r1));
                    let (o0, o1) = (b.get(*r0, *r1), b.get(*r1, *r0));
                    if (d0 - d1).abs() > block_tol || (o0 + o1).abs() > block_tol {
                        return Err(format!(
                            "seed {seed}: 2-dimensional cluster is not a conjugate pair"
                        ));
                    }
                    let a = 0.5 * (d0 + d1);
                    let bb = 0.5 * (o0 - o1);
                    absq[ci][i] = a * a + bb * bb;
                }
                _ => {
                    return Err(format!(
                        "seed {seed}: eigenvalue cluster of dimension {}",
                        cluster.len()
                    ))
                }
            }
        }
    }

    let mut degrees = Vec::with_capacity(k);
    let mut residual = 0.0f64;
    for (ci, cluster) in clusters.iter().enumerate() {
        let denom: f64 = (0..k).map(|i| absq[ci][i] / sizes[i] as f64).sum();
        if denom <= 0.0 {
            return Err(format!("seed {seed}: nonpositive degree denominator"));
        }
        let d = (n as f64 / denom).sqrt();
        let rounded = d.round();
        residual = residual.max((d - rounded).abs());
        if rounded < 1.0 {
            return Err(format!("seed {seed}: degree rounded to {rounded}"));
        }
        for _ in 0..cluster.len() {
            degrees.push(rounded as usize);
        }
    }
    if residual >= RESIDUAL_TOL {
        return Err(format!("seed {seed}: residual {residual:.3e}"));
    }
    degrees.sort_unstable();
    let square_sum: usize = degrees.iter().map(|d| d * d).sum();
    if square_sum != n {
        return Err(format!(
            "seed {seed}: degree squares sum to {square_sum}, group order {n}"
        ));
    }
    if degrees[0] != 1 {
        return Err(format!("seed {seed}: trivial character missing"));
    }
    let delta = if degrees.len() > 1 { degrees[1] } else { 1 };
    Ok(CharacterDegreeTable {
        degrees,
        delta,
        residual,
    })
}

/// B = V^t T V for the (orthonormal) eigenvector columns V.
fn restrict(t: &SquareMat, vecs: &[Vec<f64>]) -> SquareMat {
    let k = t.n;
    SquareMat::from_fn(k, |r, c| {
        let mut acc = 0.0;
        for row in 0..k {
            let tv: f64 = vecs[c]
                .iter()
                .enumerate()
                .map(|(col, vc)| t.get(row, col) * vc)
                .sum();
            acc += vecs[r][row] * tv;
        }
        acc
    })
}
