//! On-disk cache of rendered command output.
//!
//! Entries are keyed by a SHA-256 of the artifact version and the canonical
//! command parameters. Writes go to a temporary file in the cache directory
//! and are renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub created_at: u64,
    pub exit: i32,
    pub output: String,
}

pub struct Cache {
    dir: PathBuf,
    version: String,
}

/// What a cached computation produced: rendered text and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit: i32,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, ARTIFACT_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache {
            dir: dir.into(),
            version: version.to_owned(),
        }
    }

    pub fn key(&self, params: &str) -> String {
        let mut h = Sha256::new();
        h.update(b"artlab\0");
        h.update(self.version.as_bytes());
        h.update(b"\0");
        h.update(params.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Reads a valid entry; corrupt or mismatched files are reported through
    /// `warn` and treated as misses.
    pub fn get(&self, params: &str, warn: &mut dyn FnMut(String)) -> Option<Outcome> {
        let key = self.key(params);
        let path = self.path(&key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e)
                if matches!(
                    e.kind(),
                    std::io::ErrorKind::NotFound | std::io::ErrorKind::NotADirectory
                ) =>
            {
                return None
            }
            Err(e) => {
                warn(format!("cache read failed for {}: {e}", path.display()));
                return None;
            }
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == key && entry.version == self.version => Some(Outcome {
                output: entry.output,
                exit: entry.exit,
            }),
            Ok(_) => {
                warn(format!("ignoring stale cache entry {}", path.display()));
                None
            }
            Err(e) => {
                warn(format!(
                    "ignoring corrupted cache entry {}: {e}",
                    path.display()
                ));
                None
            }
        }
    }

    pub fn put(&self, params: &str, outcome: &Outcome) -> std::io::Result<()> {
        let key = self.key(params);
        let entry = CacheEntry {
            key: key.clone(),
            version: self.version.clone(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            exit: outcome.exit,
            output: outcome.output.clone(),
        };
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(&key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// Returns the cached outcome for `params`, or computes and stores it.
/// Storage failures are downgraded to warnings.
pub fn cache_roundtrip<E>(
    cache: Option<&Cache>,
    params: &str,
    warn: &mut dyn FnMut(String),
    compute: impl FnOnce() -> Result<Outcome, E>,
) -> Result<Outcome, E> {
    let Some(cache) = cache else {
        return compute();
    };
    if let Some(hit) = cache.get(params, warn) {
        return Ok(hit);
    }
    let outcome = compute()?;
    if let Err(e) = cache.put(params, &outcome) {
        warn(format!(
            "cache directory {} is not writable ({e}); continuing uncached",
            cache.dir().display()
        ));
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    fn outcome(s: &str) -> Outcome {
        Outcome {
            output: s.into(),
            exit: 0,
        }
    }

    #[test]
    fn second_call_hits() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let calls = Cell::new(0);
        let mut warnings = Vec::new();
        for _ in 0..2 {
            let got = cache_roundtrip::<()>(
                Some(&cache),
                "survey 23 300",
                &mut |w| warnings.push(w),
                || {
                    calls.set(calls.get() + 1);
                    Ok(outcome("line\n"))
                },
            )
            .unwrap();
            assert_eq!(got.output, "line\n");
        }
        assert_eq!(calls.get(), 1);
        assert!(warnings.is_empty());
    }

    #[test]
    fn version_bump_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        Cache::with_version(dir.path(), "0.0.1")
            .put("p", &outcome("old"))
            .unwrap();
        let newer = Cache::with_version(dir.path(), "0.0.2");
        assert_eq!(newer.get("p", &mut |_| {}), None);
        assert_eq!(
            Cache::with_version(dir.path(), "0.0.1").get("p", &mut |_| {}),
            Some(outcome("old"))
        );
    }

    #[test]
    fn corrupted_entry_warns_and_recomputes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.put("p", &outcome("x")).unwrap();
        std::fs::write(cache.path(&cache.key("p")), "{not json").unwrap();
        let mut warnings = Vec::new();
        let got = cache_roundtrip::<()>(Some(&cache), "p", &mut |w| warnings.push(w), || {
            Ok(outcome("y"))
        })
        .unwrap();
        assert_eq!(got.output, "y");
        assert_eq!(warnings.len(), 1);
        assert_eq!(cache.get("p", &mut |_| {}), Some(outcome("y")));
    }

    #[test]
    fn unwritable_directory_degrades_to_warning() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "").unwrap();
        let cache = Cache::new(blocker.join("sub"));
        let mut warnings = Vec::new();
        let got = cache_roundtrip::<()>(Some(&cache), "p", &mut |w| warnings.push(w), || {
            Ok(outcome("z"))
        })
        .unwrap();
        assert_eq!(got.output, "z");
        assert_eq!(warnings.len(), 1);
    }
}
