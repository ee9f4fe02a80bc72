//! Persistent JSON-lines cache of sector reports.
//!
//! One record per line, `{"key": ..., "report": ...}`. Writers re-read the file, append, write a
//! temporary sibling and rename it over the original, so readers never see a torn line.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use relcoh_core::classes::Method;
use relcoh_core::{LieAlgebraSpec, MultiDegree};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::SectorReport;
use crate::Error;

pub const CACHE_ENV: &str = "RELCOH_CACHE_DIR";
const FILE_NAME: &str = "sectors.jsonl";

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    report: SectorReport,
}

pub struct Cache {
    /// `None` for a process-local cache.
    path: Option<PathBuf>,
    entries: Mutex<HashMap<String, SectorReport>>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    /// Opens (creating if needed) the cache in `dir`. Unreadable lines are skipped.
    pub fn open(dir: &Path) -> Result<Cache, Error> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines() {
                if let Ok(r) = serde_json::from_str::<Record>(line) {
                    entries.entry(r.key).or_insert(r.report);
                }
            }
        }
        Ok(Cache { path: Some(path), entries: Mutex::new(entries) })
    }

    pub fn in_memory() -> Cache {
        Cache { path: None, entries: Mutex::new(HashMap::new()) }
    }

    /// The directory given explicitly, else the one named by `RELCOH_CACHE_DIR`, else none.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Result<Option<Cache>, Error> {
        match flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(dir) => Ok(Some(Cache::open(&dir)?)),
            None => Ok(None),
        }
    }

    pub fn key(spec: LieAlgebraSpec, p: usize, n: MultiDegree, convention: u32, method: Method, primes: &[u64], seed: u64) -> String {
        let prime_set: Vec<String> = primes.iter().map(u64::to_string).collect();
        let prime_hash = hex(&Sha256::digest(format!("{seed}:{}", prime_set.join(","))));
        let method = match method {
            Method::Trace => "trace",
            Method::Monomial => "monomial",
        };
        format!("{:?}|{}|{p}|{n}|v{convention}|{method}|{}", spec.series, spec.size, &prime_hash[..16])
    }

    pub fn get(&self, key: &str) -> Option<SectorReport> {
        self.entries.lock().unwrap().get(key).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert_many(&self, records: Vec<(String, SectorReport)>) -> Result<(), Error> {
        let mut entries = self.entries.lock().unwrap();
        let fresh: Vec<(String, SectorReport)> = records.into_iter().filter(|(k, _)| !entries.contains_key(k)).collect();
        let Some(path) = &self.path else {
            entries.extend(fresh);
            return Ok(());
        };
        if fresh.is_empty() {
            return Ok(());
        }
        let mut text = if path.exists() { fs::read_to_string(path)? } else { String::new() };
        if !text.is_empty() && !text.ends_with('\n') {
            text.push('\n');
        }
        for (key, report) in &fresh {
            text.push_str(&serde_json::to_string(&Record { key: key.clone(), report: report.clone() })?);
            text.push('\n');
        }
        let tmp = path.with_extension(format!("jsonl.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        entries.extend(fresh);
        Ok(())
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Engine, EngineConfig};

    #[test]
    fn round_trip_and_coherence() {
        let dir = tempfile::tempdir().unwrap();
        let g = Engine::algebra("sl2".parse().unwrap()).unwrap();
        let n = MultiDegree([0, 0, 2, 1, 1]);
        let fresh = Engine::new(EngineConfig::default(), None).multidegree(&g, n).unwrap();
        let first = Engine::new(EngineConfig::default(), Some(Cache::open(dir.path()).unwrap()));
        assert_eq!(first.multidegree(&g, n).unwrap(), fresh);
        let cache = Cache::open(dir.path()).unwrap();
        assert_eq!(cache.len(), fresh.len());
        let second = Engine::new(EngineConfig::default(), Some(cache));
        let again = second.multidegree(&g, n).unwrap();
        assert_eq!(serde_json::to_string(&again).unwrap(), serde_json::to_string(&fresh).unwrap());
    }

    #[test]
    fn keys_separate_prime_sets() {
        let spec: LieAlgebraSpec = "so7".parse().unwrap();
        let n = MultiDegree([0, 0, 3, 3, 3]);
        let a = Cache::key(spec, 8, n, 1, Method::Trace, &[5, 7], 1);
        assert_ne!(a, Cache::key(spec, 8, n, 1, Method::Trace, &[5, 11], 1));
        assert_ne!(a, Cache::key(spec, 8, n, 2, Method::Trace, &[5, 7], 1));
        assert_ne!(a, Cache::key(spec, 8, n, 1, Method::Monomial, &[5, 7], 1));
    }

    #[test]
    fn torn_lines_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(FILE_NAME), "{\"key\": \"x\", \"rep").unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert!(cache.is_empty());
    }
}
