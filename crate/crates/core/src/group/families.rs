//! Named group families and the descriptor grammar.
//!
//! Descriptor strings: `cyclic k`, `dihedral k` (order 2k), `symmetric k`,
//! `alternating k`, `quaternion k` (generalized quaternion, order 4k),
//! `sl2 q`, `psl2 q` (q an odd prime at most 13), and
//! `product(spec, spec)`.
//!
//! Element orderings are canonical per family so hashes and lexicographic
//! tie-breaks reproduce across runs:
//! * cyclic: residues ascending;
//! * dihedral: rotations r^0..r^(k-1), then reflections r^i s;
//! * symmetric/alternating: one-line notation in lexicographic order;
//! * quaternion: a^0..a^(2k-1), then a^i b;
//! * sl2/psl2: identity first, then matrices in row-major lexicographic
//!   order (for psl2 the representative of {M, -M} with the smaller
//!   row-major tuple);
//! * product: pairs (x, y) ordered lexicographically, index x*|B| + y.
//!
//! The identity is element 0 in every family.

use super::perm::{all_permutations_lex, compose, parity_even};
use super::{limits, FiniteGroup};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion(usize),
    Sl2(u32),
    Psl2(u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic {k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral {k}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric {k}"),
            GroupSpec::Alternating(k) => write!(f, "alternating {k}"),
            GroupSpec::Quaternion(k) => write!(f, "quaternion {k}"),
            GroupSpec::Sl2(q) => write!(f, "sl2 {q}"),
            GroupSpec::Psl2(q) => write!(f, "psl2 {q}"),
            GroupSpec::Product(a, b) => write!(f, "product({a}, {b})"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::InvalidInput(format!(
                "trailing input after group spec: {rest:?}"
            )));
        }
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<(GroupSpec, &str)> {
    let s = s.trim_start();
    let word_end = s
        .find(|c: char| !c.is_ascii_alphanumeric())
        .unwrap_or(s.len());
    let word = &s[..word_end];
    let rest = &s[word_end..];
    if word.eq_ignore_ascii_case("product") {
        let rest = rest.trim_start();
        let Some(inner) = rest.strip_prefix('(') else {
            return Err(Error::InvalidInput("expected '(' after product".into()));
        };
        let (a, after_a) = parse_spec(inner)?;
        let after_a = after_a.trim_start();
        let Some(after_comma) = after_a.strip_prefix(',') else {
            return Err(Error::InvalidInput(
                "expected ',' between product factors".into(),
            ));
        };
        let (b, after_b) = parse_spec(after_comma)?;
        let after_b = after_b.trim_start();
        let Some(tail) = after_b.strip_prefix(')') else {
            return Err(Error::InvalidInput("expected ')' closing product".into()));
        };
        return Ok((GroupSpec::Product(Box::new(a), Box::new(b)), tail));
    }
    let rest = rest.trim_start();
    let num_end = rest
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(rest.len());
    let num: usize = rest[..num_end]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("expected integer parameter after {word:?}")))?;
    let tail = &rest[num_end..];
    let spec = match word.to_ascii_lowercase().as_str() {
        "cyclic" => GroupSpec::Cyclic(num),
        "dihedral" => GroupSpec::Dihedral(num),
        "symmetric" => GroupSpec::Symmetric(num),
        "alternating" => GroupSpec::Alternating(num),
        "quaternion" => GroupSpec::Quaternion(num),
        "sl2" => GroupSpec::Sl2(num as u32),
        "psl2" => GroupSpec::Psl2(num as u32),
        other => {
            return Err(Error::InvalidInput(format!("unknown family {other:?}")));
        }
    };
    Ok((spec, tail))
}

impl GroupSpec {
    /// Order of the group this spec describes, without building it.
    pub fn order(&self) -> Result<usize> {
        Ok(match self {
            GroupSpec::Cyclic(k) => check_positive(*k)?,
            GroupSpec::Dihedral(k) => 2 * check_positive(*k)?,
            GroupSpec::Symmetric(k) => factorial(check_positive(*k)?)?,
            GroupSpec::Alternating(k) => {
                let k = check_positive(*k)?;
                if k <= 2 {
                    1
                } else {
                    factorial(k)? / 2
                }
            }
            GroupSpec::Quaternion(k) => {
                if *k < 2 {
                    return Err(Error::InvalidInput(
                        "quaternion parameter must be at least 2".into(),
                    ));
                }
                4 * k
            }
            GroupSpec::Sl2(q) => {
                let q = check_odd_prime(*q)? as usize;
                q * (q * q - 1)
            }
            GroupSpec::Psl2(q) => {
                let q = check_odd_prime(*q)? as usize;
                q * (q * q - 1) / 2
            }
            GroupSpec::Product(a, b) => {
                let (na, nb) = (a.order()?, b.order()?);
                na.checked_mul(nb)
                    .ok_or_else(|| Error::CapExceeded("product order overflows".into()))?
            }
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_capped(limits::ORDER_CAP)
    }

    pub fn build_capped(&self, order_cap: usize) -> Result<FiniteGroup> {
        let n = self.order()?;
        if n > order_cap {
            return Err(Error::CapExceeded(format!(
                "{self} has order {n}, above cap {order_cap}"
            )));
        }
        let mul = match self {
            GroupSpec::Cyclic(k) => cyclic_table(*k),
            GroupSpec::Dihedral(k) => dihedral_table(*k),
            GroupSpec::Symmetric(k) => permutation_family_table(*k, false),
            GroupSpec::Alternating(k) => permutation_family_table(*k, true),
            GroupSpec::Quaternion(k) => quaternion_table(*k),
            GroupSpec::Sl2(q) => matrix_family_table(*q, false),
            GroupSpec::Psl2(q) => matrix_family_table(*q, true),
            GroupSpec::Product(a, b) => {
                let ga = a.build_capped(order_cap)?;
                let gb = b.build_capped(order_cap)?;
                product_table(&ga, &gb)
            }
        };
        FiniteGroup::from_table_capped(n, mul, Some(self.to_string()), order_cap)
    }
}

/// Build a group from a family descriptor string, under the default cap.
pub fn build_named(spec: &str) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build()
}

fn check_positive(k: usize) -> Result<usize> {
    if k == 0 {
        Err(Error::InvalidInput(
            "family parameter must be positive".into(),
        ))
    } else {
        Ok(k)
    }
}

fn factorial(k: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for i in 2..=k {
        acc = acc
            .checked_mul(i)
            .ok_or_else(|| Error::CapExceeded(format!("{k}! overflows")))?;
    }
    Ok(acc)
}

fn check_odd_prime(q: u32) -> Result<u32> {
    let is_prime = q >= 2 && (2..q).all(|d| !q.is_multiple_of(d));
    if q % 2 == 1 && is_prime && q <= 13 {
        Ok(q)
    } else {
        Err(Error::InvalidInput(format!(
            "parameter {q} must be an odd prime at most 13"
        )))
    }
}

fn cyclic_table(k: usize) -> Vec<u32> {
    let mut mul = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            mul[i * k + j] = ((i + j) % k) as u32;
        }
    }
    mul
}

fn dihedral_table(k: usize) -> Vec<u32> {
    let n = 2 * k;
    let rot = |i: usize| i % k;
    let refl = |i: usize| k + i % k;
    let mut mul = vec![0u32; n * n];
    for i in 0..k {
        for j in 0..k {
            mul[i * n + j] = rot(i + j) as u32;
            mul[i * n + (k + j)] = refl(i + j) as u32;
            mul[(k + i) * n + j] = refl(k + i - j) as u32;
            mul[(k + i) * n + (k + j)] = rot(k + i - j) as u32;
        }
    }
    mul
}

fn quaternion_table(k: usize) -> Vec<u32> {
    // Generalized quaternion of order 4k:
    //   a^(2k) = 1, b^2 = a^k, b a b^-1 = a^-1.
    // Elements a^i at index i (i < 2k) and a^i b at index 2k + i.
    let two_k = 2 * k;
    let n = 4 * k;
    let mut mul = vec![0u32; n * n];
    for i in 0..two_k {
        for j in 0..two_k {
            mul[i * n + j] = ((i + j) % two_k) as u32;
            mul[i * n + (two_k + j)] = (two_k + (i + j) % two_k) as u32;
            mul[(two_k + i) * n + j] = (two_k + (two_k + i - j) % two_k) as u32;
            mul[(two_k + i) * n + (two_k + j)] = ((two_k + i - j + k) % two_k) as u32;
        }
    }
    mul
}

fn permutation_family_table(k: usize, even_only: bool) -> Vec<u32> {
    let perms: Vec<Vec<u16>> = all_permutations_lex(k)
        .into_iter()
        .filter(|p| !even_only || parity_even(p))
        .collect();
    let n = perms.len();
    let index: HashMap<&[u16], u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let c = compose(&perms[a], &perms[b]);
            mul[a * n + b] = index[c.as_slice()];
        }
    }
    mul
}

type Mat2 = (u32, u32, u32, u32);

fn matrix_family_table(q: u32, projective: bool) -> Vec<u32> {
    let mat_mul = |x: Mat2, y: Mat2| -> Mat2 {
        (
            (x.0 * y.0 + x.1 * y.2) % q,
            (x.0 * y.1 + x.1 * y.3) % q,
            (x.2 * y.0 + x.3 * y.2) % q,
            (x.2 * y.1 + x.3 * y.3) % q,
        )
    };
    let neg = |x: Mat2| -> Mat2 { ((q - x.0) % q, (q - x.1) % q, (q - x.2) % q, (q - x.3) % q) };
    let canonical = |x: Mat2| -> Mat2 {
        if projective {
            x.min(neg(x))
        } else {
            x
        }
    };
    let identity: Mat2 = (1, 0, 0, 1);
    // Enumerate det-1 matrices in row-major lexicographic order; for the
    // projective family keep the lexicographically smaller of {M, -M}.
    let mut elems: Vec<Mat2> = vec![identity];
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = (a, b, c, d);
                    if (a * d + q * q - b * c) % q != 1 {
                        continue;
                    }
                    if m == identity || (projective && canonical(m) != m) {
                        continue;
                    }
                    elems.push(m);
                }
            }
        }
    }
    let n = elems.len();
    let mut index: HashMap<Mat2, u32> = HashMap::with_capacity(n);
    for (i, &m) in elems.iter().enumerate() {
        index.insert(m, i as u32);
    }
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let p = canonical(mat_mul(elems[x], elems[y]));
            mul[x * n + y] = index[&p];
        }
    }
    mul
}

fn product_table(ga: &FiniteGroup, gb: &FiniteGroup) -> Vec<u32> {
    let (na, nb) = (ga.n(), gb.n());
    let n = na * nb;
    let mut mul = vec![0u32; n * n];
    for xa in 0..na {
        for xb in 0..nb {
            let x = xa * nb + xb;
            for ya in 0..na {
                for yb in 0..nb {
                    let y = ya * nb + yb;
                    mul[x * n + y] = (ga.mul(xa, ya) * nb + gb.mul(xb, yb)) as u32;
                }
            }
        }
    }
    mul
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let g = build_named("cyclic 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.mul(1, 2), 0);
    }

    #[test]
    fn psl2_7_order() {
        let g = build_named("psl2 7").unwrap();
        assert_eq!(g.n(), 168);
    }

    #[test]
    fn product_of_coprime_cyclics_is_cyclic() {
        let g = build_named("product(cyclic 2, cyclic 3)").unwrap();
        assert_eq!(g.n(), 6);
        // Isomorphic to cyclic 6: all orders divide 6 and some element has
        // order 6.
        let orders: Vec<usize> = g.elements().map(|x| g.order_of(x)).collect();
        assert!(orders.iter().all(|o| 6 % o == 0));
        assert!(orders.contains(&6));
    }

    #[test]
    fn symmetric_orders() {
        for k in 1..=5 {
            let g = GroupSpec::Symmetric(k).build().unwrap();
            assert_eq!(g.n(), (1..=k).product::<usize>());
        }
    }

    #[test]
    fn alternating_five() {
        let g = build_named("alternating 5").unwrap();
        assert_eq!(g.n(), 60);
    }

    #[test]
    fn quaternion_eight_relations() {
        let g = build_named("quaternion 2").unwrap();
        assert_eq!(g.n(), 8);
        // b^2 = a^k is the unique central involution a^2.
        let b = 4;
        assert_eq!(g.mul(b, b), 2);
        // Exactly one involution.
        let involutions = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn sl2_5_has_unique_involution() {
        let g = build_named("sl2 5").unwrap();
        assert_eq!(g.n(), 120);
        let involutions = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn sl2_13_exceeds_default_cap() {
        let err = build_named("sl2 13").unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
        let g = GroupSpec::Sl2(13).build_capped(2200).unwrap();
        assert_eq!(g.n(), 2184);
    }

    #[test]
    fn even_q_rejected() {
        assert!(build_named("psl2 2").is_err());
        assert!(build_named("psl2 9").is_err());
        assert!(build_named("psl2 17").is_err());
    }

    #[test]
    fn spec_roundtrip_display_parse() {
        for s in [
            "cyclic 12",
            "dihedral 4",
            "product(cyclic 2, product(cyclic 2, cyclic 2))",
            "psl2 11",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn build_is_reproducible() {
        let a = build_named("dihedral 6").unwrap();
        let b = build_named("dihedral 6").unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.table(), b.table());
    }
}
