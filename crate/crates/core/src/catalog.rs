//! The standard test catalog: a fixed list of groups with widely varying
//! minimal nontrivial representation dimensions, used by the verification
//! suites and handy for quick experiments.

use crate::error::Result;
use crate::group::families::GroupSpec;
use crate::group::FiniteGroup;

/// Descriptors of the catalog groups, in order:
/// Z12, S3, D4, Q8, A4, S4, A5, SL(2,5), PSL(2,7), PSL(2,11), PSL(2,13).
pub fn catalog_specs() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("z12", GroupSpec::Cyclic(12)),
        ("s3", GroupSpec::Symmetric(3)),
        ("d4", GroupSpec::Dihedral(4)),
        ("q8", GroupSpec::Quaternion(2)),
        ("a4", GroupSpec::Alternating(4)),
        ("s4", GroupSpec::Symmetric(4)),
        ("a5", GroupSpec::Alternating(5)),
        ("sl2_5", GroupSpec::Sl2(5)),
        ("psl2_7", GroupSpec::Psl2(7)),
        ("psl2_11", GroupSpec::Psl2(11)),
        ("psl2_13", GroupSpec::Psl2(13)),
    ]
}

/// Build the whole catalog. Each group carries its short label as name.
pub fn build_catalog() -> Result<Vec<FiniteGroup>> {
    catalog_specs()
        .into_iter()
        .map(|(label, spec)| {
            let mut g = spec.build()?;
            g.set_name(label);
            Ok(g)
        })
        .collect()
}

/// Build one catalog group by its short label.
pub fn build_catalog_group(label: &str) -> Result<FiniteGroup> {
    for (name, spec) in catalog_specs() {
        if name == label {
            let mut g = spec.build()?;
            g.set_name(name);
            return Ok(g);
        }
    }
    Err(crate::error::Error::InvalidInput(format!(
        "unknown catalog label {label:?}"
    )))
}
