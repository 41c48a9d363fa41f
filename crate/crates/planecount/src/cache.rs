//! Memoization store with optional file persistence.
//!
//! The store maps canonical key strings to exact rational values. The cache
//! file is versioned JSON: `{"version":1,"entries":{"<key>":"<rational>"}}`.
//! Loading is strict: an unknown version, a key that is not a canonical
//! invariant key, or a value that is not a canonical rational string refuses
//! to load rather than risk silently poisoning exact results.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ComputeError;
use crate::key::InvariantKey;
use crate::rational::Rational;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Failure to load or save a cache file.
#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported cache version {found} (this build reads version {CACHE_FORMAT_VERSION})")]
    UnsupportedVersion { found: u32 },
    #[error("cache entry key {key:?} is not a canonical invariant key: {reason}")]
    BadKey { key: String, reason: String },
    #[error("cache entry {key:?} has malformed rational value {value:?}")]
    BadValue { key: String, value: String },
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, String>,
}

/// Thread-safe map from canonical key strings to computed values.
#[derive(Default, Debug)]
pub struct CacheStore {
    entries: Mutex<HashMap<String, Rational>>,
}

impl CacheStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &str) -> Option<Rational> {
        self.entries.lock().unwrap().get(key).cloned()
    }

    pub fn insert(&self, key: String, value: Rational) {
        self.entries.lock().unwrap().insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Returns the cached value for `key`, or runs `compute`, stores the
    /// result, and returns it. The lock is released while `compute` runs so
    /// computations may recurse into the store; if a concurrent call filled
    /// the slot in the meantime the stored value wins (all computations are
    /// deterministic, so both results agree).
    pub fn get_or_compute<F>(&self, key: &str, compute: F) -> Result<Rational, ComputeError>
    where
        F: FnOnce() -> Result<Rational, ComputeError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let value = compute()?;
        let mut entries = self.entries.lock().unwrap();
        if let Some(existing) = entries.get(key) {
            debug_assert_eq!(
                existing, &value,
                "conflicting values computed for {key}"
            );
            return Ok(existing.clone());
        }
        entries.insert(key.to_string(), value.clone());
        Ok(value)
    }

    /// Loads a store from a cache file, validating every entry.
    pub fn load(path: &Path) -> Result<Self, CacheError> {
        let text = fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text)?;
        if file.version != CACHE_FORMAT_VERSION {
            return Err(CacheError::UnsupportedVersion { found: file.version });
        }
        let mut entries = HashMap::with_capacity(file.entries.len());
        for (key, value) in file.entries {
            let parsed: InvariantKey = key.parse().map_err(|e: crate::key::KeyParseError| {
                CacheError::BadKey { key: key.clone(), reason: e.message }
            })?;
            if parsed.to_string() != key {
                return Err(CacheError::BadKey {
                    key,
                    reason: "not in canonical form".to_string(),
                });
            }
            let rational: Rational = value.parse().map_err(|_| CacheError::BadValue {
                key: key.clone(),
                value: value.clone(),
            })?;
            if rational.to_string() != value {
                return Err(CacheError::BadValue { key, value });
            }
            entries.insert(key, rational);
        }
        Ok(CacheStore { entries: Mutex::new(entries) })
    }

    /// Writes the store to `path` atomically (temp file, then rename).
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let entries: BTreeMap<String, String> = self
            .entries
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect();
        let file = CacheFile { version: CACHE_FORMAT_VERSION, entries };
        let text = serde_json::to_string_pretty(&file).expect("cache serialization");
        let tmp: PathBuf = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}
