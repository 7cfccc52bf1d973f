//! Content-addressed result cache.
//!
//! Keys are the SHA-256 of the version tag, operation name and canonical
//! parameter JSON. Entries hold exactly the records the operation emits.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Bumped whenever a cached operation changes its output.
pub const VERSION_TAG: &str = concat!("sumfree-", env!("CARGO_PKG_VERSION"), "/records-1");

pub struct Cache {
    dir: PathBuf,
    tag: String,
}

pub enum Lookup {
    Hit(Vec<Value>),
    Miss,
    /// The entry exists but could not be read back.
    Corrupt(String),
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache::with_tag(dir, VERSION_TAG)
    }

    pub fn with_tag(dir: PathBuf, tag: &str) -> Self {
        Cache {
            dir,
            tag: tag.to_string(),
        }
    }

    pub fn key(&self, op: &str, params: &Value) -> String {
        let mut h = Sha256::new();
        h.update(self.tag.as_bytes());
        h.update([0]);
        h.update(op.as_bytes());
        h.update([0]);
        h.update(params.to_string().as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn lookup(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let parsed: Result<Value, _> = serde_json::from_str(&text);
        match parsed {
            Ok(v) if v["version"] == self.tag.as_str() => match v["records"].as_array() {
                Some(records) => Lookup::Hit(records.clone()),
                None => Lookup::Corrupt("missing records".into()),
            },
            Ok(_) => Lookup::Corrupt("version tag mismatch".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    pub fn store(
        &self,
        key: &str,
        op: &str,
        params: &Value,
        records: &[Value],
    ) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = json!({ "version": self.tag, "op": op, "params": params, "records": records });
        // write then rename so a crash never leaves a half-written entry
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, self.path(key))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// `--cache-dir`, else `SUMFREE_CACHE_DIR`, else the user cache directory.
pub fn default_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(d) = flag {
        return d;
    }
    if let Some(d) = std::env::var_os("SUMFREE_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("sumfree");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("sumfree"),
        None => std::env::temp_dir().join("sumfree-cache"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_tags() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        let params = json!({"n": 12});
        let key = cache.key("enumerate", &params);
        assert!(matches!(cache.lookup(&key), Lookup::Miss));
        cache
            .store(&key, "enumerate", &params, &[json!({"f": 1})])
            .unwrap();
        match cache.lookup(&key) {
            Lookup::Hit(r) => assert_eq!(r, vec![json!({"f": 1})]),
            _ => panic!("expected a hit"),
        }
        let other = Cache::with_tag(dir.path().to_path_buf(), "other");
        assert_ne!(other.key("enumerate", &params), key);
        assert_ne!(cache.key("enumerate", &json!({"n": 13})), key);
        fs::write(cache.path(&key), "{not json").unwrap();
        assert!(matches!(cache.lookup(&key), Lookup::Corrupt(_)));
    }
}
