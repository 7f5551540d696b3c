//! Content-addressed result cache on disk.
//!
//! Entries are JSON files named by the SHA-256 of their key. Writers publish
//! through a temporary file and a rename, so concurrent writers of the same
//! key never expose a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::report::VERSION;

pub const CACHE_DIR_ENV: &str = "RRLAB_CACHE_DIR";

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

/// Hex SHA-256 of the canonical JSON of `key` together with the crate version.
pub fn cache_key<K: Serialize>(key: &K) -> String {
    let body = serde_json::to_vec(&(VERSION, key)).expect("serializable key");
    let digest = Sha256::digest(&body);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// `$RRLAB_CACHE_DIR`, else `$HOME/.cache/rrlab`, else `.rrlab-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    match std::env::var_os("HOME") {
        Some(home) => Path::new(&home).join(".cache").join("rrlab"),
        None => PathBuf::from(".rrlab-cache"),
    }
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, hits: AtomicU64::new(0), misses: AtomicU64::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(&digest[..2]).join(format!("{digest}.json"))
    }

    pub fn get<K: Serialize, V: DeserializeOwned>(&self, key: &K) -> Option<V> {
        let path = self.path(&cache_key(key));
        let found = fs::read(&path).ok().and_then(|bytes| match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                None
            }
        });
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    pub fn put<K: Serialize, V: Serialize>(&self, key: &K, value: &V) -> std::io::Result<()> {
        let digest = cache_key(key);
        let path = self.path(&digest);
        let parent = path.parent().expect("entry has a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(".{digest}.{}.{}.tmp", std::process::id(), unique()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(value).expect("serializable value"))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }
}

fn unique() -> u64 {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    COUNTER.fetch_add(1, Ordering::Relaxed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_counters() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = ("hilbert", vec!["x^2", "y^2"], 12);
        assert_eq!(cache.get::<_, Vec<u64>>(&key), None);
        cache.put(&key, &vec![4u64, 12, 24]).unwrap();
        assert_eq!(cache.get::<_, Vec<u64>>(&key), Some(vec![4, 12, 24]));
        assert_eq!((cache.hits(), cache.misses()), (1, 1));
        assert_ne!(cache_key(&key), cache_key(&("hilbert", vec!["x^2", "y^2"], 13)));
    }

    #[test]
    fn concurrent_writers_leave_one_complete_entry() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        std::thread::scope(|s| {
            for _ in 0..8 {
                let cache = &cache;
                s.spawn(move || cache.put(&"k", &vec![0u32; 1000]).unwrap());
            }
        });
        assert_eq!(cache.get::<_, Vec<u32>>(&"k"), Some(vec![0; 1000]));
        let leftovers = fs::read_dir(cache.path(&cache_key(&"k")).parent().unwrap()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}
