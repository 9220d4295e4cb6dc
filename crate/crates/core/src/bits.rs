//! Fixed-universe bit sets over group elements {0..n-1}.

use crate::rng::SplitMix64;
use std::cmp::Ordering;
use std::fmt;

/// Subset of {0..n-1} as packed 64-bit words. Trailing bits above `n` are
/// always zero, which makes word-wise equality/hashing valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSubset {
    n: usize,
    count: usize,
    words: Vec<u64>,
}

impl BitSubset {
    pub fn empty(n: usize) -> Self {
        BitSubset {
            n,
            count: 0,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSubset::empty(n);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.clear_tail();
        s.count = n;
        s
    }

    pub fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut s = BitSubset::empty(n);
        for &i in idx {
            s.insert(i);
        }
        s
    }

    /// Subset with the given size, chosen uniformly without replacement.
    pub fn random_of_size(n: usize, size: usize, rng: &mut SplitMix64) -> Self {
        BitSubset::from_indices(n, &rng.sample(n, size))
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns true if the element was newly inserted.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.n, "element {i} outside universe {}", self.n);
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        if *w & mask == 0 {
            *w |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.n);
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        if *w & mask != 0 {
            *w &= !mask;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.count = 0;
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn as_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersection_len(&self, other: &BitSubset) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect(&self, other: &BitSubset) -> BitSubset {
        debug_assert_eq!(self.n, other.n);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        BitSubset {
            n: self.n,
            count,
            words,
        }
    }

    pub fn union_with(&mut self, other: &BitSubset) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn is_subset_of(&self, other: &BitSubset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Order on equal-size subsets matching lexicographic order of the sorted
    /// element lists: the set owning the smallest element where the two
    /// differ comes first.
    pub fn cmp_lex(&self, other: &BitSubset) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    fn clear_tail(&mut self) {
        let used = self.n & 63;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl fmt::Debug for BitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSubset{:?}", self.as_indices())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}
