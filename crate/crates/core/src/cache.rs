//! JSONL result cache.
//!
//! Records are keyed by the group's class fingerprint (sorted multiset of
//! element order and class size), a digest of its generators and the toolkit
//! version, so a cache written by another version or for a different group is
//! never consulted. Cached class summaries are re-validated on load.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::class_fingerprint;
use crate::classes::ClassTable;
use crate::error::Result;
use crate::perm::PermGroup;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the degree and generator images.
pub fn generator_digest(g: &PermGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.degree() as u64).to_le_bytes());
    for x in g.generators() {
        for &i in x.images() {
            h.update(i.to_le_bytes());
        }
        h.update([0xff]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub fingerprint: Vec<(u64, u128)>,
    pub generators: String,
    pub version: String,
    pub kind: String,
    pub params: String,
}

impl CacheKey {
    pub fn new(table: &ClassTable, kind: &str, params: impl Into<String>) -> Self {
        CacheKey {
            fingerprint: class_fingerprint(table),
            generators: generator_digest(table.group()),
            version: TOOLKIT_VERSION.to_string(),
            kind: kind.to_string(),
            params: params.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    key: CacheKey,
    value: serde_json::Value,
}

/// Concurrent reads through a lock on the in-memory map; appends are serialized.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: RwLock<HashMap<CacheKey, serde_json::Value>>,
    writer: Mutex<()>,
    rejected: usize,
}

impl ResultCache {
    /// Opens (or creates) a cache file. Records from other versions, malformed
    /// lines and class summaries whose sizes do not sum to the group order are
    /// dropped and counted in [`ResultCache::rejected`].
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        let mut rejected = 0;
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Record>(&line) {
                    Ok(r) if r.key.version == TOOLKIT_VERSION && valid(&r) => {
                        entries.insert(r.key, r.value);
                    }
                    _ => rejected += 1,
                }
            }
        }
        Ok(ResultCache {
            path,
            entries: RwLock::new(entries),
            writer: Mutex::new(()),
            rejected,
        })
    }

    pub fn rejected(&self) -> usize {
        self.rejected
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Option<serde_json::Value> {
        self.entries.read().expect("cache lock").get(key).cloned()
    }

    pub fn put(&self, key: CacheKey, value: serde_json::Value) -> Result<()> {
        let _guard = self.writer.lock().expect("cache writer");
        let line = serde_json::to_string(&Record { key: key.clone(), value: value.clone() })?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        self.entries.write().expect("cache lock").insert(key, value);
        Ok(())
    }

    /// Class summary of `table`'s group, computed by `compute` on a miss.
    pub fn class_summary(&self, table: &ClassTable) -> Result<serde_json::Value> {
        let key = CacheKey::new(table, "classes", "");
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = summary(table);
        self.put(key, v.clone())?;
        Ok(v)
    }
}

fn summary(table: &ClassTable) -> serde_json::Value {
    serde_json::json!({
        "order": table.group().order().to_string(),
        "classes": table.to_json(),
    })
}

/// Class summaries must cover the whole group.
fn valid(r: &Record) -> bool {
    if r.key.kind != "classes" {
        return true;
    }
    let Some(order) = r.value["order"].as_str().and_then(|s| s.parse::<u128>().ok()) else {
        return false;
    };
    let sizes: u128 = r.key.fingerprint.iter().map(|&(_, s)| s).sum();
    let listed = r.value["classes"].as_array().map(|cs| {
        cs.iter()
            .map(|c| c["size"].as_str().and_then(|s| s.parse::<u128>().ok()).or_else(|| c["size"].as_u64().map(u128::from)))
            .sum::<Option<u128>>()
    });
    sizes == order && listed.flatten() == Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;

    #[test]
    fn round_trip_and_revalidation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let s4 = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let table = conjugacy_classes(&s4).unwrap();
        {
            let cache = ResultCache::open(&path).unwrap();
            let v = cache.class_summary(&table).unwrap();
            assert_eq!(v["order"], "24");
            cache.put(CacheKey::new(&table, "d", "cap=3"), serde_json::json!(2)).unwrap();
        }
        let cache = ResultCache::open(&path).unwrap();
        assert_eq!((cache.len(), cache.rejected()), (2, 0));
        assert_eq!(cache.get(&CacheKey::new(&table, "d", "cap=3")), Some(serde_json::json!(2)));

        // a tampered class summary no longer sums to |G| and is dropped
        let text = std::fs::read_to_string(&path).unwrap().replacen("\"order\":\"24\"", "\"order\":\"25\"", 1);
        std::fs::write(&path, text + "not json\n").unwrap();
        let cache = ResultCache::open(&path).unwrap();
        assert_eq!((cache.len(), cache.rejected()), (1, 2));
    }

    #[test]
    fn keys_separate_groups_with_equal_fingerprints() {
        let a = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)"]).unwrap();
        let b = PermGroup::from_cycle_strings(4, &["(1 3)(2 4)"]).unwrap();
        let (ta, tb) = (conjugacy_classes(&a).unwrap(), conjugacy_classes(&b).unwrap());
        assert_eq!(class_fingerprint(&ta), class_fingerprint(&tb));
        assert_ne!(CacheKey::new(&ta, "x", ""), CacheKey::new(&tb, "x", ""));
    }
}
