//! Permutations in one-line image notation, and group construction from
//! permutation generators.

use super::action::PermutationAction;
use super::{limits, FiniteGroup};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// (p . q)(x) = p(q(x)): q acts first. This matches the action law
/// image[a*b][x] = image[a][image[b][x]] used everywhere in the crate.
pub fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn is_permutation(p: &[u16]) -> bool {
    let d = p.len();
    let mut seen = vec![false; d];
    for &x in p {
        if (x as usize) >= d || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

pub fn parity_even(p: &[u16]) -> bool {
    let mut visited = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if visited[start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        while !visited[x] {
            visited[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// All permutations of 0..k in lexicographic one-line order.
pub fn all_permutations_lex(k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut current: Vec<u16> = (0..k as u16).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Breadth-first closure of the given degree-d permutations under
/// composition (right-multiplying by the generators in input order).
/// Returns the group together with its natural degree-d action; element 0 is
/// the identity and element indices follow discovery order.
pub fn from_generators(gens: &[Vec<u16>]) -> Result<(FiniteGroup, PermutationAction)> {
    from_generators_capped(gens, limits::ORDER_CAP)
}

pub fn from_generators_capped(
    gens: &[Vec<u16>],
    order_cap: usize,
) -> Result<(FiniteGroup, PermutationAction)> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidInput(
            "at least one generator is required".into(),
        ));
    };
    let degree = first.len();
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    for (i, p) in gens.iter().enumerate() {
        if p.len() != degree {
            return Err(Error::InvalidInput(format!(
                "generator {i} has degree {} but generator 0 has degree {degree}",
                p.len()
            )));
        }
        if !is_permutation(p) {
            return Err(Error::InvalidInput(format!(
                "generator {i} is not a permutation of 0..{degree}"
            )));
        }
    }
    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut elems: Vec<Vec<u16>> = vec![identity.clone()];
    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        let current = elems[head].clone();
        head += 1;
        for g in gens {
            let next = compose(&current, g);
            if !index.contains_key(&next) {
                if elems.len() >= order_cap {
                    return Err(Error::CapExceeded(format!(
                        "closure exceeds order cap {order_cap}"
                    )));
                }
                index.insert(next.clone(), elems.len() as u32);
                elems.push(next);
            }
        }
    }
    let n = elems.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&compose(&elems[a], &elems[b])];
        }
    }
    let group = FiniteGroup::from_table_capped(n, mul, None, order_cap)?;
    let image: Vec<u32> = elems
        .iter()
        .flat_map(|p| p.iter().map(|&x| x as u32))
        .collect();
    let action = PermutationAction::new(&group, degree, image)?;
    Ok((group, action))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_from_cycle_and_transposition() {
        // (0 1 2 3) and (0 1)
        let gens = vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
        let (g, act) = from_generators(&gens).unwrap();
        assert_eq!(g.n(), 24);
        assert!(act.transitive());
        assert_eq!(act.degree(), 4);
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let gens = vec![vec![0, 1, 2]];
        let (g, act) = from_generators(&gens).unwrap();
        assert_eq!(g.n(), 1);
        assert!(!act.transitive());
    }

    #[test]
    fn a5_from_5cycle_and_3cycle() {
        // (0 1 2 3 4) and (0 1 2)
        let gens = vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]];
        let (g, _) = from_generators(&gens).unwrap();
        assert_eq!(g.n(), 60);
    }

    #[test]
    fn closure_cap_enforced() {
        let gens = vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        let err = from_generators_capped(&gens, 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn symmetric_group_orders_from_natural_generators() {
        for k in 2..=6usize {
            let cycle: Vec<u16> = (1..k as u16).chain([0]).collect();
            let swap: Vec<u16> = {
                let mut v: Vec<u16> = (0..k as u16).collect();
                v.swap(0, 1);
                v
            };
            let (g, _) = from_generators(&[cycle, swap]).unwrap();
            assert_eq!(g.n(), (1..=k).product::<usize>(), "k={k}");
        }
    }

    #[test]
    fn parity() {
        assert!(parity_even(&[0, 1, 2]));
        assert!(!parity_even(&[1, 0, 2]));
        assert!(parity_even(&[1, 2, 0]));
    }
}
