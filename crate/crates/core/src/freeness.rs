//! Solution counting for ab = c over subset triples, product-free and
//! product-poor certificates.
//!
//! Densities and the derived solution-density parameter p are exact
//! rationals so the inequality checks are exact; only spectral quantities
//! elsewhere are floating point.

use crate::bits::BitSubset;
use crate::characters::delta;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact number of pairs (a, b) in A x B with ab in C.
pub fn count_triples(group: &FiniteGroup, a: &BitSubset, b: &BitSubset, c: &BitSubset) -> u64 {
    let mut count = 0u64;
    for x in a.iter() {
        for y in b.iter() {
            if c.contains(group.mul(x, y)) {
                count += 1;
            }
        }
    }
    count
}

/// A triple of subsets with exact densities and the solution-density
/// parameter p defined by count = p r s t n^2 (when all three are
/// nonempty).
#[derive(Clone, Debug)]
pub struct TripleCount {
    pub a: BitSubset,
    pub b: BitSubset,
    pub c: BitSubset,
    pub count: u64,
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
    pub p: Option<BigRational>,
}

pub fn count_solutions(
    group: &FiniteGroup,
    a: &BitSubset,
    b: &BitSubset,
    c: &BitSubset,
) -> TripleCount {
    let n = group.n() as u64;
    let count = count_triples(group, a, b, c);
    let (sa, sb, sc) = (a.len() as u64, b.len() as u64, c.len() as u64);
    // p = count / (r s t n^2) = count n / (|A| |B| |C|).
    let p = (sa > 0 && sb > 0 && sc > 0)
        .then(|| BigRational::new(BigInt::from(count * n), BigInt::from(sa * sb * sc)));
    TripleCount {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        count,
        r: ratio(sa, n),
        s: ratio(sb, n),
        t: ratio(sc, n),
        p,
    }
}

/// No a, b, c in S (repetitions allowed) with ab = c.
pub fn is_product_free(group: &FiniteGroup, s: &BitSubset) -> bool {
    for x in s.iter() {
        for y in s.iter() {
            if s.contains(group.mul(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Certificate that a subset is p-product-poor: at most p |S|^2 pairs of S
/// multiply back into S.
#[derive(Clone, Debug)]
pub struct PoorCertificate {
    pub subset: BitSubset,
    pub pair_count: u64,
    /// Exact pair count / |S|^2.
    pub p_achieved: BigRational,
    pub claim_p: BigRational,
    pub is_poor: bool,
}

pub fn poor_certificate(
    group: &FiniteGroup,
    s: &BitSubset,
    claim_p: BigRational,
) -> Result<PoorCertificate> {
    if s.is_empty() {
        return Err(Error::InvalidInput(
            "product-poor certificate requires a nonempty subset".into(),
        ));
    }
    let pair_count = count_triples(group, s, s, s);
    let size_sq = (s.len() as u64) * (s.len() as u64);
    let p_achieved = ratio(pair_count, size_sq);
    let is_poor = p_achieved <= claim_p;
    Ok(PoorCertificate {
        subset: s.clone(),
        pair_count,
        p_achieved,
        claim_p,
        is_poor,
    })
}

/// The exact-rational inequality r s t (1-p)^2 delta <= 1 for a triple with
/// solution density p. A violation is impossible for a correct build, so
/// `holds == false` signals a bug rather than an interesting input.
#[derive(Clone, Debug)]
pub struct DensityBoundReport {
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
    pub p: BigRational,
    pub delta: usize,
    pub lhs: BigRational,
    pub lhs_f64: f64,
    pub holds: bool,
}

pub fn check_density_bound(
    group: &FiniteGroup,
    a: &BitSubset,
    b: &BitSubset,
    c: &BitSubset,
) -> Result<DensityBoundReport> {
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::InvalidInput(
            "density bound requires nonempty A, B, C".into(),
        ));
    }
    let d = delta(group)?;
    let tc = count_solutions(group, a, b, c);
    let p = tc.p.clone().expect("nonempty sets have a defined p");
    let one_minus_p = BigRational::one() - &p;
    let lhs = &tc.r * &tc.s * &tc.t * (&one_minus_p * &one_minus_p) * BigInt::from(d);
    // Exact comparison against 1 + 1e-9 (the slack is only relevant for
    // floating re-derivations; the rational value never exceeds 1).
    let tol = BigRational::new(BigInt::from(1u64), BigInt::from(1_000_000_000u64));
    let holds = lhs <= BigRational::one() + tol;
    Ok(DensityBoundReport {
        r: tc.r,
        s: tc.s,
        t: tc.t,
        p,
        delta: d,
        lhs_f64: rational_to_f64(&lhs),
        lhs,
        holds,
    })
}

/// Observational constant for the product-poor size bound: for a subset of
/// size |S| with p <= delta^(-1/3), reports c = |S| delta^(1/3) / n, the
/// constant that would make |S| <= c n / delta^(1/3) an equality. The bound
/// is read with n in place of the subset's own size.
#[derive(Clone, Debug)]
pub struct PoorRatioReport {
    pub applicable: bool,
    pub delta: usize,
    pub subset_size: usize,
    pub p: BigRational,
    /// |S| delta^(1/3) / n; meaningful only when applicable.
    pub c_empirical: f64,
}

pub fn poor_size_ratio(
    group: &FiniteGroup,
    s: &BitSubset,
    p: BigRational,
) -> Result<PoorRatioReport> {
    if p.is_negative() {
        return Err(Error::InvalidInput("p must be nonnegative".into()));
    }
    let d = delta(group)?;
    // p <= delta^(-1/3) iff p^3 delta <= 1, exactly.
    let p_cubed = &p * &p * &p;
    let applicable = p_cubed * BigInt::from(d) <= BigRational::one();
    let c_empirical = s.len() as f64 * (d as f64).cbrt() / group.n() as f64;
    Ok(PoorRatioReport {
        applicable,
        delta: d,
        subset_size: s.len(),
        p,
        c_empirical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::build_named;
    use num_traits::Zero;

    #[test]
    fn z5_pair_triple() {
        let g = build_named("cyclic 5").unwrap();
        let a = BitSubset::from_indices(5, &[1, 2]);
        let tc = count_solutions(&g, &a, &a, &a);
        // Only 1 + 1 = 2.
        assert_eq!(tc.count, 1);
        assert_eq!(tc.p.clone().unwrap(), ratio(5, 8));
        assert_eq!(rational_to_f64(&tc.p.unwrap()), 0.625);
    }

    #[test]
    fn empty_c_counts_zero() {
        let g = build_named("cyclic 5").unwrap();
        let a = BitSubset::full(5);
        let empty = BitSubset::empty(5);
        assert_eq!(count_triples(&g, &a, &a, &empty), 0);
    }

    #[test]
    fn all_full_counts_n_squared() {
        let g = build_named("symmetric 3").unwrap();
        let full = BitSubset::full(6);
        let tc = count_solutions(&g, &full, &full, &full);
        assert_eq!(tc.count, 36);
        assert!(tc.p.unwrap().is_one());
    }

    #[test]
    fn product_free_basics() {
        let g = build_named("cyclic 3").unwrap();
        assert!(is_product_free(&g, &BitSubset::from_indices(3, &[1])));
        // Any set containing the identity fails.
        let g6 = build_named("cyclic 6").unwrap();
        assert!(!is_product_free(&g6, &BitSubset::from_indices(6, &[0, 2])));
    }

    #[test]
    fn s3_transpositions_product_free() {
        let g = build_named("symmetric 3").unwrap();
        let transpositions: Vec<usize> = g
            .elements()
            .filter(|&x| x != 0 && g.mul(x, x) == 0)
            .collect();
        assert_eq!(transpositions.len(), 3);
        let s = BitSubset::from_indices(6, &transpositions);
        assert!(is_product_free(&g, &s));
    }

    #[test]
    fn count_matches_submatrix_row_sums() {
        // Solutions of ab = c biject with pairs (c, a) in C x A whose
        // quotient a^-1 c lies in B: the nonzero entries of the C x A
        // submatrix of the B-incidence structure.
        let g = build_named("symmetric 4").unwrap();
        let mut rng = crate::rng::SplitMix64::new(31);
        for _ in 0..20 {
            let n = g.n();
            let a = BitSubset::random_of_size(n, rng.below(n) + 1, &mut rng);
            let b = BitSubset::random_of_size(n, rng.below(n) + 1, &mut rng);
            let c = BitSubset::random_of_size(n, rng.below(n) + 1, &mut rng);
            let direct = count_triples(&g, &a, &b, &c);
            let mut row_sums = 0u64;
            for cc in c.iter() {
                for aa in a.iter() {
                    if b.contains(g.mul(g.inv(aa), cc)) {
                        row_sums += 1;
                    }
                }
            }
            assert_eq!(direct, row_sums);
        }
    }

    #[test]
    fn poor_certificates() {
        let g = build_named("cyclic 5").unwrap();
        let s = BitSubset::from_indices(5, &[1, 2]);
        // One pair out of 4: p = 1/4 holds, p = 1/5 fails.
        let ok = poor_certificate(&g, &s, ratio(1, 4)).unwrap();
        assert_eq!(ok.pair_count, 1);
        assert!(ok.is_poor);
        let tight = poor_certificate(&g, &s, ratio(1, 5)).unwrap();
        assert!(!tight.is_poor);

        // The whole group is 1-product-poor with equality.
        let full = BitSubset::full(5);
        let cert = poor_certificate(&g, &full, ratio(1, 1)).unwrap();
        assert_eq!(cert.pair_count, 25);
        assert!(cert.is_poor);
    }

    #[test]
    fn product_free_iff_zero_poor() {
        let g = build_named("cyclic 6").unwrap();
        let mut rng = crate::rng::SplitMix64::new(20);
        for _ in 0..50 {
            let s = BitSubset::random_of_size(6, rng.below(5) + 1, &mut rng);
            let free = is_product_free(&g, &s);
            let poor = poor_certificate(&g, &s, ratio(0, 1)).unwrap().is_poor;
            assert_eq!(free, poor);
        }
    }

    #[test]
    fn density_bound_z5_worked_example() {
        let g = build_named("cyclic 5").unwrap();
        let a = BitSubset::from_indices(5, &[1, 2]);
        let rep = check_density_bound(&g, &a, &a, &a).unwrap();
        // r s t (1-p)^2 delta = (8/125)(3/8)^2 = 9/1000.
        assert_eq!(rep.lhs, ratio(9, 1000));
        assert!(rep.holds);
    }

    #[test]
    fn density_bound_full_sets_p_one() {
        let g = build_named("cyclic 6").unwrap();
        let full = BitSubset::full(6);
        let rep = check_density_bound(&g, &full, &full, &full).unwrap();
        assert!(rep.lhs.is_zero());
        assert!(rep.holds);
    }

    #[test]
    fn density_bound_rejects_empty() {
        let g = build_named("cyclic 6").unwrap();
        let full = BitSubset::full(6);
        let empty = BitSubset::empty(6);
        assert!(check_density_bound(&g, &full, &empty, &full).is_err());
    }

    #[test]
    fn poor_ratio_applicability() {
        let g = build_named("alternating 5").unwrap();
        let s = BitSubset::from_indices(60, &(1..19).collect::<Vec<_>>());
        let rep = poor_size_ratio(&g, &s, ratio(0, 1)).unwrap();
        assert!(rep.applicable);
        // 18 * 3^(1/3) / 60
        assert!((rep.c_empirical - 0.4327).abs() < 1e-3);
        let rep2 = poor_size_ratio(&g, &s, ratio(1, 1)).unwrap();
        // 1 > 3^(-1/3): hypothesis fails.
        assert!(!rep2.applicable);
    }
}
