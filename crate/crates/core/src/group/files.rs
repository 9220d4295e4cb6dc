//! Text file formats.
//!
//! `.cay` — Cayley table: first significant line is n, followed by n lines
//! of n space-separated 0-based element indices. `#` starts a comment line.
//! The identity must be element 0.
//!
//! `.gens` — permutation generators: first significant line is the degree
//! d, each following line one permutation in one-line image notation.
//!
//! `.set` — element subset: one element index per line.

use super::perm::from_generators_capped;
use super::{action::PermutationAction, limits, FiniteGroup};
use crate::bits::BitSubset;
use crate::error::{Error, Result};

/// Significant (1-based line number, content) pairs: comments and blank
/// lines removed, inline comments stripped.
fn significant_lines(source: &str) -> Vec<(usize, &str)> {
    source
        .lines()
        .enumerate()
        .map(|(i, line)| {
            let body = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            (i + 1, body.trim())
        })
        .filter(|(_, body)| !body.is_empty())
        .collect()
}

fn parse_fields<T: std::str::FromStr>(line_no: usize, body: &str) -> Result<Vec<T>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<T>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("cannot parse {tok:?} as an integer"),
            })
        })
        .collect()
}

/// Parse and fully validate a `.cay` document.
pub fn parse_cayley_table(source: &str) -> Result<FiniteGroup> {
    parse_cayley_table_capped(source, limits::ORDER_CAP)
}

pub fn parse_cayley_table_capped(source: &str, order_cap: usize) -> Result<FiniteGroup> {
    let lines = significant_lines(source);
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty table document".into(),
        });
    };
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        msg: format!("expected group order, found {first:?}"),
    })?;
    if lines.len() != n + 1 {
        return Err(Error::Parse {
            line: lines.last().map(|&(no, _)| no).unwrap_or(first_no),
            msg: format!("expected {n} table rows, found {}", lines.len() - 1),
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    for &(line_no, body) in &lines[1..] {
        let row: Vec<u32> = parse_fields(line_no, body)?;
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        if let Some(&bad) = row.iter().find(|&&v| v as usize >= n) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("entry {bad} outside 0..{n}"),
            });
        }
        mul.extend(row);
    }
    FiniteGroup::from_table_capped(n, mul, None, order_cap)
}

/// Render a group as a `.cay` document. The optional name travels as a
/// comment; the hash is determined by the table alone.
pub fn write_cayley_table(group: &FiniteGroup) -> String {
    let n = group.n();
    let mut out = String::new();
    if let Some(name) = group.name() {
        out.push_str(&format!("# {name}\n"));
    }
    out.push_str(&format!("{n}\n"));
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| group.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a `.gens` document and close the generators into a group.
pub fn parse_generators(source: &str) -> Result<(FiniteGroup, PermutationAction)> {
    parse_generators_capped(source, limits::ORDER_CAP)
}

pub fn parse_generators_capped(
    source: &str,
    order_cap: usize,
) -> Result<(FiniteGroup, PermutationAction)> {
    let lines = significant_lines(source);
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty generator document".into(),
        });
    };
    let degree: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        msg: format!("expected degree, found {first:?}"),
    })?;
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for &(line_no, body) in &lines[1..] {
        let perm: Vec<u16> = parse_fields(line_no, body)?;
        if perm.len() != degree {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {degree} images, found {}", perm.len()),
            });
        }
        if !super::perm::is_permutation(&perm) {
            return Err(Error::Parse {
                line: line_no,
                msg: "line is not a permutation".into(),
            });
        }
        gens.push(perm);
    }
    if gens.is_empty() {
        return Err(Error::Parse {
            line: first_no,
            msg: "no generators given".into(),
        });
    }
    from_generators_capped(&gens, order_cap)
}

/// Parse a `.set` document against a group of order n.
pub fn parse_subset(source: &str, n: usize) -> Result<BitSubset> {
    let mut set = BitSubset::empty(n);
    for (line_no, body) in significant_lines(source) {
        for tok in body.split_whitespace() {
            let idx: usize = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("cannot parse {tok:?} as an element index"),
            })?;
            if idx >= n {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("element {idx} outside 0..{n}"),
                });
            }
            set.insert(idx);
        }
    }
    Ok(set)
}

pub fn write_subset(set: &BitSubset) -> String {
    let mut out = String::new();
    for i in set.iter() {
        out.push_str(&format!("{i}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families::build_named;

    #[test]
    fn cay_roundtrip_preserves_hash() {
        let g = build_named("dihedral 4").unwrap();
        let doc = write_cayley_table(&g);
        let back = parse_cayley_table(&doc).unwrap();
        assert_eq!(back.hash(), g.hash());
        assert_eq!(back.n(), 8);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let doc = "# a flip group\n\n2\n0 1 # identity row\n1 0\n";
        let g = parse_cayley_table(doc).unwrap();
        assert_eq!(g.n(), 2);
    }

    #[test]
    fn parse_error_carries_line_number() {
        let doc = "2\n0 1\n1 x\n";
        let err = parse_cayley_table(doc).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_row_length_reported() {
        let doc = "2\n0 1\n1\n";
        let err = parse_cayley_table(doc).unwrap_err();
        assert!(err.to_string().contains("expected 2 entries"));
    }

    #[test]
    fn permuted_identity_rejected() {
        let doc = "3\n1 2 0\n2 0 1\n0 1 2\n";
        let err = parse_cayley_table(doc).unwrap_err();
        assert!(err.to_string().contains("identity not index 0"));
    }

    #[test]
    fn gens_document_s4() {
        let doc = "4\n1 2 3 0\n1 0 2 3\n";
        let (g, act) = parse_generators(doc).unwrap();
        assert_eq!(g.n(), 24);
        assert_eq!(act.degree(), 4);
    }

    #[test]
    fn subset_document() {
        let set = parse_subset("0\n2 5\n# done\n", 6).unwrap();
        assert_eq!(set.as_indices(), vec![0, 2, 5]);
        let err = parse_subset("9\n", 6).unwrap_err();
        assert!(err.to_string().contains("outside"));
        let rendered = write_subset(&set);
        assert_eq!(parse_subset(&rendered, 6).unwrap(), set);
    }
}
