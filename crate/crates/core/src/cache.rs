//! Append-only result cache persisted as JSON lines.
//!
//! Each line is `{"op": .., "input": .., "output": ..}`. About 1% of hits are
//! recomputed and compared; a mismatch is an error, never silently repaired.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable that takes precedence over an explicit cache path.
pub const CACHE_ENV: &str = "LAMBDA2_CACHE";

#[derive(Serialize, Deserialize)]
struct Record {
    op: String,
    input: String,
    output: String,
}

pub struct ResultCache {
    path: PathBuf,
    entries: Mutex<HashMap<(String, String), String>>,
    file: Mutex<File>,
}

/// Resolves the cache path: the environment variable wins over `flag`.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or(flag)
}

fn fnv1a(op: &str, input: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in op.bytes().chain([0u8]).chain(input.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Whether a hit on `(op, input)` is recomputed. Fixed per key, about 1 in 100.
pub fn is_spot_checked(op: &str, input: &str) -> bool {
    fnv1a(op, input) % 100 == 0
}

impl ResultCache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut entries = HashMap::new();
        if path.exists() {
            for (n, line) in BufReader::new(File::open(&path).map_err(io)?).lines().enumerate() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: Record = serde_json::from_str(&line)
                    .map_err(|e| Error::Cache(format!("{}:{}: {e}", path.display(), n + 1)))?;
                entries.insert((r.op, r.input), r.output);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(&path).map_err(io)?;
        Ok(ResultCache { path, entries: Mutex::new(entries), file: Mutex::new(file) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns the cached output for `(op, input)`, computing and appending it on a miss.
    pub fn get_or_compute<F>(&self, op: &str, input: &str, compute: F) -> Result<String>
    where
        F: FnOnce() -> Result<String>,
    {
        let hit = self.entries.lock().expect("cache lock").get(&(op.to_string(), input.to_string())).cloned();
        if let Some(cached) = hit {
            if is_spot_checked(op, input) {
                let fresh = compute()?;
                if fresh != cached {
                    return Err(Error::Cache(format!("{op}({input}): cached {cached:?} but recomputed {fresh:?}")));
                }
            }
            return Ok(cached);
        }
        let output = compute()?;
        let line = serde_json::to_string(&Record { op: op.into(), input: input.into(), output: output.clone() })
            .map_err(|e| Error::Cache(e.to_string()))?;
        {
            let mut f = self.file.lock().expect("cache lock");
            writeln!(f, "{line}").map_err(|e| Error::Cache(format!("{}: {e}", self.path.display())))?;
        }
        self.entries.lock().expect("cache lock").insert((op.into(), input.into()), output.clone());
        Ok(output)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn miss_then_hit_persists() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let cache = ResultCache::open(&path).unwrap();
        let calls = Cell::new(0);
        // pick an input that is not spot-checked so the second call is a pure hit
        let input = (0..).map(|i| format!("d={i}")).find(|s| !is_spot_checked("classify", s)).unwrap();
        let run = || {
            calls.set(calls.get() + 1);
            Ok("ProvenZero".to_string())
        };
        assert_eq!(cache.get_or_compute("classify", &input, run).unwrap(), "ProvenZero");
        assert_eq!(cache.get_or_compute("classify", &input, run).unwrap(), "ProvenZero");
        assert_eq!(calls.get(), 1);
        drop(cache);
        let reopened = ResultCache::open(&path).unwrap();
        assert_eq!(reopened.len(), 1);
        assert_eq!(reopened.get_or_compute("classify", &input, || unreachable!()).unwrap(), "ProvenZero");
    }

    #[test]
    fn spot_check_detects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let input = (0..).map(|i| format!("d={i}")).find(|s| is_spot_checked("unit", s)).unwrap();
        std::fs::write(&path, format!("{{\"op\":\"unit\",\"input\":\"{input}\",\"output\":\"stale\"}}\n")).unwrap();
        let cache = ResultCache::open(&path).unwrap();
        let err = cache.get_or_compute("unit", &input, || Ok("fresh".into())).unwrap_err();
        assert!(matches!(err, Error::Cache(_)));
    }

    #[test]
    fn spot_check_rate_is_about_one_percent() {
        let n = (0..100_000).filter(|i| is_spot_checked("classify", &i.to_string())).count();
        assert!((700..1300).contains(&n), "{n}");
    }
}
