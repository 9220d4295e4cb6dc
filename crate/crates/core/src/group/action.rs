//! Permutation actions of a group on a finite point set.

use super::subgroup::SubgroupRecord;
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Action of a group on points 0..degree-1. `image[g * degree + x]` is g(x).
#[derive(Clone, Debug)]
pub struct PermutationAction {
    degree: usize,
    n: usize,
    image: Vec<u32>,
    transitive: bool,
}

impl PermutationAction {
    /// Wrap an image table, checking the identity and (for small groups
    /// exhaustively, above order 200 on 10^4 sampled pairs) the
    /// homomorphism law image[a*b][x] = image[a][image[b][x]].
    pub fn new(group: &FiniteGroup, degree: usize, image: Vec<u32>) -> Result<Self> {
        let n = group.n();
        if image.len() != n * degree {
            return Err(Error::InvalidInput(format!(
                "image table has {} entries, expected {}",
                image.len(),
                n * degree
            )));
        }
        if let Some(&bad) = image.iter().find(|&&p| p as usize >= degree) {
            return Err(Error::InvalidInput(format!(
                "image point {bad} outside 0..{degree}"
            )));
        }
        for (x, &img) in image.iter().enumerate().take(degree) {
            if img as usize != x {
                return Err(Error::InvalidInput(
                    "element 0 must act as the identity permutation".into(),
                ));
            }
        }
        let act = |g: usize, x: usize| image[g * degree + x] as usize;
        let check_pair = |a: usize, b: usize| -> Result<()> {
            let ab = group.mul(a, b);
            for x in 0..degree {
                if act(ab, x) != act(a, act(b, x)) {
                    return Err(Error::InvalidInput(format!(
                        "action is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
            Ok(())
        };
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    check_pair(a, b)?;
                }
            }
        } else {
            let mut rng = SplitMix64::new(0xAC71_0000_C4EC_0001);
            for _ in 0..10_000 {
                check_pair(rng.below(n), rng.below(n))?;
            }
        }
        let transitive = {
            let mut seen = vec![false; degree];
            seen[0] = true;
            let mut count = 1;
            for g in 0..n {
                let y = act(g, 0);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                }
            }
            count == degree
        };
        Ok(PermutationAction {
            degree,
            n,
            image,
            transitive,
        })
    }

    /// Regular action of the group on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.n();
        let mut image = vec![0u32; n * n];
        for g in 0..n {
            for x in 0..n {
                image[g * n + x] = group.mul(g, x) as u32;
            }
        }
        Self::new(group, n, image).expect("left multiplication is an action")
    }

    /// Action on the left cosets of H by left multiplication; point 0 is the
    /// coset H itself. Transitive by construction.
    pub fn on_cosets(group: &FiniteGroup, h: &SubgroupRecord) -> Self {
        let degree = h.index();
        let n = group.n();
        let mut image = vec![0u32; n * degree];
        for g in 0..n {
            for (pt, &rep) in h.coset_reps().iter().enumerate() {
                image[g * degree + pt] = h.coset_of(group.mul(g, rep as usize)) as u32;
            }
        }
        let act = Self::new(group, degree, image).expect("coset multiplication is an action");
        debug_assert!(act.transitive);
        act
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.image[g * self.degree + x] as usize
    }

    pub fn transitive(&self) -> bool {
        self.transitive
    }

    /// Points of the orbit of `x`, ascending.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        for g in 0..self.n {
            seen[self.apply(g, x)] = true;
        }
        (0..self.degree).filter(|&p| seen[p]).collect()
    }
}
