//! Append-only JSON-lines store of fingerprints.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::Value;

use super::fingerprint::Fingerprint;
use crate::error::{Error, Result};

pub const CACHE_VERSION: u64 = 1;

pub struct FingerprintCache {
    path: PathBuf,
}

/// Result of a lookup, with warnings about unreadable lines.
#[derive(Debug, Default)]
pub struct Lookup {
    pub hit: Option<Fingerprint>,
    pub warnings: Vec<String>,
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

impl FingerprintCache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        FingerprintCache {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn read(&self) -> Result<String> {
        match fs::read_to_string(&self.path) {
            Ok(s) => Ok(s),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(String::new()),
            Err(e) => Err(io(e)),
        }
    }

    /// Newest entry for `poly` with stored bound `≥ bound`, truncated to
    /// `bound`.
    pub fn get(&self, poly: &[BigInt], bound: u64) -> Result<Lookup> {
        let text = self.read()?;
        let mut out = Lookup::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed = serde_json::from_str::<Value>(line)
                .ok()
                .filter(|v| v.get("version").and_then(Value::as_u64) == Some(CACHE_VERSION))
                .and_then(|v| Fingerprint::from_json(&v));
            match parsed {
                Some(fp) if fp.poly == poly && fp.bound >= bound => {
                    out.hit = Some(fp.truncated(bound))
                }
                Some(_) => {}
                None => out.warnings.push(format!(
                    "warning: skipping corrupt cache line {} in {}",
                    i + 1,
                    self.path.display()
                )),
            }
        }
        Ok(out)
    }

    /// Appends one entry. The new file is written beside the old one and
    /// renamed over it.
    pub fn put(&self, fp: &Fingerprint) -> Result<()> {
        let mut text = self.read()?;
        if !text.is_empty() && !text.ends_with('\n') {
            text.push('\n');
        }
        let mut v = fp.to_json();
        v.as_object_mut()
            .expect("fingerprint json is an object")
            .insert("version".into(), CACHE_VERSION.into());
        text.push_str(&v.to_string());
        text.push('\n');
        let dir = match self.path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(&self.path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;

    #[test]
    fn round_trip_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FingerprintCache::new(dir.path().join("fp.jsonl"));
        let k = NumberField::parse("x^2+1").unwrap();
        assert!(cache.get(&k.key(), 10).unwrap().hit.is_none());
        let fp = Fingerprint::compute(&k, 50).unwrap();
        cache.put(&fp).unwrap();
        assert_eq!(cache.get(&k.key(), 50).unwrap().hit.unwrap(), fp);
        let small = cache.get(&k.key(), 20).unwrap().hit.unwrap();
        assert_eq!(small, Fingerprint::compute(&k, 20).unwrap());
        assert_eq!(
            small.to_json().to_string(),
            Fingerprint::compute(&k, 20).unwrap().to_json().to_string()
        );
        assert!(cache.get(&k.key(), 60).unwrap().hit.is_none());
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.jsonl");
        fs::write(&path, "not json\n{\"version\":2}\n").unwrap();
        let cache = FingerprintCache::new(&path);
        let k = NumberField::parse("x^2-2").unwrap();
        let fp = Fingerprint::compute(&k, 30).unwrap();
        cache.put(&fp).unwrap();
        let look = cache.get(&k.key(), 30).unwrap();
        assert_eq!(look.hit, Some(fp));
        assert_eq!(look.warnings.len(), 2);
    }
}
