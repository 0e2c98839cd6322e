//! On-disk cache of computed artifacts as versioned, checksummed JSON.
//!
//! Each entry is one file `<key>.json` holding an envelope with the schema
//! version, the key, the SHA-256 of the serialized payload and the payload.
//! Writes go through a temporary file and a rename, so readers only ever see
//! complete entries. Entries with a wrong version or checksum are deleted.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "LIECORE_CACHE_DIR";

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    key: String,
    sha256: String,
    payload: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: u32,
}

fn checksum(payload: &serde_json::Value) -> Result<String> {
    let bytes = serde_json::to_vec(payload)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Cache> {
        Cache::with_version(dir, SCHEMA_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: u32) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir, version })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> Result<PathBuf> {
        let ok = !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || "-_.,".contains(c));
        if !ok || key.starts_with('.') {
            return Err(Error::Cache(format!("invalid key {key:?}")));
        }
        Ok(self.dir.join(format!("{key}.json")))
    }

    /// Valid entry for `key`, or `None`; invalid entries are evicted.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        let path = self.path(key)?;
        let text = match fs::read(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let valid = serde_json::from_slice::<Envelope>(&text).ok().and_then(|env| {
            let sound = env.version == self.version && env.key == key && checksum(&env.payload).ok()? == env.sha256;
            if sound {
                serde_json::from_value::<T>(env.payload).ok()
            } else {
                None
            }
        });
        if valid.is_none() {
            log::warn!("evicting invalid cache entry {}", path.display());
            match fs::remove_file(&path) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err(e.into()),
            }
        }
        Ok(valid)
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let path = self.path(key)?;
        let payload = serde_json::to_value(value)?;
        let env = Envelope {
            version: self.version,
            key: key.to_string(),
            sha256: checksum(&payload)?,
            payload,
        };
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&env)?)?;
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })?;
        Ok(())
    }

    /// Cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(key)? {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_eviction() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.get::<Vec<i64>>("xs").unwrap(), None);
        cache.put("xs", &vec![1i64, 2, 3]).unwrap();
        assert_eq!(cache.get::<Vec<i64>>("xs").unwrap(), Some(vec![1, 2, 3]));

        let path = dir.path().join("xs.json");
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.get::<Vec<i64>>("xs").unwrap(), None);
        assert!(!path.exists());
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        Cache::with_version(dir.path(), 1).unwrap().put("k", &7u32).unwrap();
        let newer = Cache::with_version(dir.path(), 2).unwrap();
        let mut calls = 0;
        let v = newer
            .get_or_compute("k", || {
                calls += 1;
                Ok(8u32)
            })
            .unwrap();
        assert_eq!((v, calls), (8, 1));
        assert_eq!(newer.get::<u32>("k").unwrap(), Some(8));
    }

    #[test]
    fn rejects_path_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        assert!(cache.put("../x", &1).is_err());
        assert!(cache.get::<u8>("").is_err());
    }
}
