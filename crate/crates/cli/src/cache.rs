//! Content-addressed result cache.
//!
//! Entries are keyed by (group hash, computation id, tool version) and hold
//! the outputs/checks fragment of a report. Values are deterministic, so a
//! hit is byte-identical to recomputation. Only derived mathematical
//! results are cached, never budget-dependent search output. A corrupt
//! entry is recomputed and overwritten with a warning.

use crate::report::TOOL_VERSION;
use serde_json::Value;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "QPLAB_CACHE";

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Environment variable QPLAB_CACHE overrides the flag.
    pub fn resolve(flag_dir: Option<PathBuf>) -> Cache {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).or(flag_dir);
        Cache { dir }
    }

    fn entry_path(&self, group_hash: u64, computation: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| {
            d.join(format!(
                "{group_hash:016x}-{computation}-v{TOOL_VERSION}.json"
            ))
        })
    }

    /// Fetch or compute; the bool reports a cache hit. Unwritable
    /// directories degrade to pass-through.
    pub fn get_or_compute<E>(
        &self,
        group_hash: u64,
        computation: &str,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<(Value, bool), E> {
        let Some(path) = self.entry_path(group_hash, computation) else {
            return compute().map(|v| (v, false));
        };
        if let Ok(bytes) = std::fs::read(&path) {
            match serde_json::from_slice::<Value>(&bytes) {
                Ok(value) => return Ok((value, true)),
                Err(err) => {
                    eprintln!(
                        "warning: corrupt cache entry {}: {err}; recomputing",
                        path.display()
                    );
                }
            }
        }
        let value = compute()?;
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Err(err) = std::fs::write(&path, serde_json::to_vec_pretty(&value).unwrap()) {
            eprintln!(
                "warning: cannot write cache entry {}: {err}",
                path.display()
            );
        }
        Ok((value, false))
    }
}

/// Digest of a subset's indices, for spectral cache keys.
pub fn subset_digest(indices: &[usize]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for &i in indices {
        for b in (i as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}
