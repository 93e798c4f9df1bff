//! Content-addressed on-disk cache of serialized results.
//!
//! Keys are SHA-256 digests of the library version, the command and the
//! canonical JSON of every parameter that influences the output, so a
//! stale entry is never reused after a parameter or version change.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn key(command: &str, params: &Value) -> String {
    let mut h = Sha256::new();
    h.update(b"lchi ");
    h.update(VERSION.as_bytes());
    h.update(b"\0");
    h.update(command.as_bytes());
    h.update(b"\0");
    h.update(params.to_string().as_bytes());
    hex::encode(h.finalize())
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put(&self, key: &str, contents: &str) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, contents)?;
        fs::rename(tmp, self.path(key))
    }

    /// Returns the cached entry for `key` or computes, stores and returns it.
    pub fn get_or_insert_with<E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<String, E>
    where
        E: From<io::Error>,
    {
        if let Some(s) = self.get(key) {
            return Ok(s);
        }
        let s = compute()?;
        self.put(key, &s)?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_depend_on_everything() {
        let a = key("lambda", &json!({ "q": 2, "alpha": 1 }));
        assert_eq!(a.len(), 64);
        assert_eq!(a, key("lambda", &json!({ "q": 2, "alpha": 1 })));
        assert_ne!(a, key("lambda", &json!({ "q": 2, "alpha": 2 })));
        assert_ne!(a, key("uexp", &json!({ "q": 2, "alpha": 1 })));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path().join("sub"));
        assert_eq!(c.get("k"), None);
        let mut calls = 0;
        for _ in 0..2 {
            let v = c
                .get_or_insert_with::<io::Error>("k", || {
                    calls += 1;
                    Ok("{}".into())
                })
                .unwrap();
            assert_eq!(v, "{}");
        }
        assert_eq!(calls, 1);
    }
}
