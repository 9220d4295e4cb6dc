//! Finite-group laboratory: Cayley tables, numerically computed character
//! degrees, bipartite Cayley graph spectra, product-free and product-poor
//! subset certificates and searches, coset-union and point-action
//! constructions, and multi-subset density-product witness search.

pub mod alpha;
pub mod bits;
pub mod catalog;
pub mod characters;
pub mod constructions;
pub mod error;
pub mod freeness;
pub mod group;
pub mod linalg;
pub mod multiparty;
pub mod parallel;
pub mod rng;
pub mod search;
pub mod spectral;

pub use alpha::{max_product_free, AlphaResult};
pub use bits::BitSubset;
pub use characters::{character_degrees, class_matrices, delta, CharacterDegreeTable};
pub use error::{Error, Result};
pub use group::action::PermutationAction;
pub use group::conjugacy::{conjugacy_classes, ConjugacyPartition};
pub use group::families::{build_named, GroupSpec};
pub use group::files::{
    parse_cayley_table, parse_generators, parse_subset, write_cayley_table, write_subset,
};
pub use group::perm::from_generators;
pub use group::subgroup::{subgroups_and_min_index, MinIndex, SubgroupRecord};
pub use group::{FiniteGroup, Validation};
pub use rng::SplitMix64;
pub use search::{SearchBudget, SearchMode, DEFAULT_SEED};

// Exact rationals are part of several public signatures.
pub use num_rational::BigRational;
