//! Subcommand implementations. Each returns a [`Report`]; every error that
//! reaches main is treated as a usage/input failure (exit 2).

pub mod construct;
pub mod freeness_cmd;
pub mod group_cmd;
pub mod multi;
pub mod spectral_cmd;

use crate::cache::Cache;
use qplab_core::group::action::PermutationAction;
use qplab_core::{
    parse_cayley_table, parse_generators, parse_subset, BigRational, BitSubset, FiniteGroup,
};
use std::path::Path;

pub struct Ctx {
    pub seed: u64,
    pub threads: usize,
    pub cache: Cache,
}

pub type CmdResult = Result<crate::report::Report, String>;

pub fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Load a group document; `.gens` files also yield the natural action.
pub fn load_group(path: &Path) -> Result<(FiniteGroup, Option<PermutationAction>), String> {
    let source = read_file(path)?;
    let is_gens = path.extension().map(|e| e == "gens").unwrap_or(false);
    if is_gens {
        let (g, act) = parse_generators(&source).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok((g, Some(act)))
    } else {
        let g = parse_cayley_table(&source).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok((g, None))
    }
}

pub fn load_subset(path: &Path, n: usize) -> Result<BitSubset, String> {
    let source = read_file(path)?;
    parse_subset(&source, n).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse "a/b" or a plain integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let parse_int = |t: &str| -> Result<i64, String> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("cannot parse {t:?} as an integer"))
    };
    if let Some((num, den)) = s.split_once('/') {
        let d = parse_int(den)?;
        if d == 0 {
            return Err("rational denominator must be nonzero".into());
        }
        Ok(BigRational::new(parse_int(num)?.into(), d.into()))
    } else {
        Ok(BigRational::from_integer(parse_int(s)?.into()))
    }
}
