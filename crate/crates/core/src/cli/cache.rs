use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{parse_polynomial, Polynomial, Ring};
use crate::groebner::BasisStore;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "LIAISON_CACHE_DIR";
const DEFAULT_DIR: &str = ".liaison-cache";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    basis: Vec<String>,
}

fn checksum(basis: &[String]) -> String {
    hex::encode(Sha256::digest(basis.join("\n").as_bytes()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
}

/// Reduced Gröbner bases stored as one JSON file per content digest.
///
/// Entries are written to a temporary file and renamed into place, so
/// concurrent processes never observe partial files. Unreadable or
/// corrupted entries count as misses; IO failures on write print one
/// warning and turn the cache off for the rest of the run.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    writes: AtomicU64,
    disabled: AtomicBool,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache {
            dir: dir.into(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            writes: AtomicU64::new(0),
            disabled: AtomicBool::new(false),
        }
    }

    /// `$LIAISON_CACHE_DIR`, or `./.liaison-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        DiskCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
        }
    }

    fn disable(&self, why: &str) {
        if !self.disabled.swap(true, Ordering::Relaxed) {
            eprintln!("warning: Gröbner cache at {} disabled: {why}", self.dir.display());
        }
    }

    fn miss(&self) -> Option<Vec<Polynomial>> {
        self.misses.fetch_add(1, Ordering::Relaxed);
        None
    }

    fn read(&self, key: &str, ring: &Ring) -> Result<Vec<Polynomial>, String> {
        let text = fs::read_to_string(self.entry_path(key)).map_err(|e| e.to_string())?;
        let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if entry.key != key || entry.checksum != checksum(&entry.basis) {
            return Err("checksum mismatch".into());
        }
        entry.basis.iter().map(|s| parse_polynomial(s, ring).map_err(|e| e.to_string())).collect()
    }

    fn write(&self, key: &str, basis: &[Polynomial]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let basis: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        let entry = Entry { key: key.to_string(), checksum: checksum(&basis), basis };
        let body = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
        let nonce = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let tmp = self.dir.join(format!(".{key}.{}.{nonce}.tmp", std::process::id()));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.entry_path(key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

impl BasisStore for DiskCache {
    fn load(&self, key: &str, ring: &Ring) -> Option<Vec<Polynomial>> {
        if self.disabled.load(Ordering::Relaxed) {
            return None;
        }
        match self.read(key, ring) {
            Ok(basis) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(basis)
            }
            Err(e) => {
                if self.entry_path(key).exists() {
                    eprintln!("warning: discarding unreadable cache entry {key}: {e}");
                }
                self.miss()
            }
        }
    }

    fn save(&self, key: &str, basis: &[Polynomial]) {
        if self.disabled.load(Ordering::Relaxed) {
            return;
        }
        match self.write(key, basis) {
            Ok(()) => {
                self.writes.fetch_add(1, Ordering::Relaxed);
            }
            Err(e) => self.disable(&e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ideal, RingSpec, TermOrderSpec};
    use crate::groebner::{cache_key, GroebnerBasis, Session};
    use std::sync::Arc;

    #[test]
    fn round_trip_and_self_healing() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Arc::new(DiskCache::new(dir.path()));
        let r = RingSpec::new(&["x", "y"], 0).unwrap();
        let gens = parse_ideal("x^2 - y, x*y - 1/2", &r).unwrap();
        let lex = TermOrderSpec::lex_natural(2);
        let session = Session::default().with_store(cache.clone());
        let first = GroebnerBasis::compute(&r, &gens, &lex, &session).unwrap();
        assert_eq!(cache.stats(), CacheStats { hits: 0, misses: 1, writes: 1 });
        let again = GroebnerBasis::compute(&r, &gens, &lex, &session).unwrap();
        assert_eq!(cache.stats().hits, 1);
        assert_eq!(first.elements(), again.elements());

        let key = cache_key(&r, &gens, &lex);
        let path = cache.entry_path(&key);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        let healed = GroebnerBasis::compute(&r, &gens, &lex, &session).unwrap();
        assert_eq!(healed.elements(), first.elements());
        assert_eq!(cache.stats().misses, 2);
        assert_ne!(key, cache_key(&r, &gens, &TermOrderSpec::degrevlex_natural(2)));
    }

    #[test]
    fn unwritable_directory_degrades_quietly() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "not a directory").unwrap();
        let cache = Arc::new(DiskCache::new(blocker.join("sub")));
        let r = RingSpec::new(&["x"], 0).unwrap();
        let gens = parse_ideal("x^2", &r).unwrap();
        let session = Session::default().with_store(cache.clone());
        assert!(GroebnerBasis::compute(&r, &gens, &TermOrderSpec::lex_natural(1), &session).is_ok());
        assert_eq!(cache.stats().writes, 0);
    }
}
