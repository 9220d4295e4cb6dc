//! Shared helpers for the benchmark targets.

use qplab_core::{BitSubset, FiniteGroup, SplitMix64};

pub fn random_symmetric(n: usize, seed: u64) -> qplab_core::linalg::SquareMat {
    let mut rng = SplitMix64::new(seed);
    let mut m = qplab_core::linalg::SquareMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = rng.uniform(-1.0, 1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

pub fn half_subset(group: &FiniteGroup, seed: u64) -> BitSubset {
    let mut rng = SplitMix64::new(seed);
    BitSubset::random_of_size(group.n(), group.n() / 2, &mut rng)
}
