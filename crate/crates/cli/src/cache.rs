//! Append-only JSON-lines cache of suite results.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};

use blab_core::experiments::{CachedMarker, CheckResult, ExperimentSpec, Timing};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    results: Vec<CheckResult>,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, Vec<CheckResult>>,
}

/// Content hash of the experiment parameters and the code version.
pub fn cache_key(spec: &ExperimentSpec) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_vec(spec).expect("specs serialize"));
    format!("{:x}", h.finalize())
}

impl Cache {
    /// Loads the cache; a missing file is an empty cache and unparsable
    /// lines are skipped.
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    if let Ok(e) = serde_json::from_str::<Entry>(&line) {
                        entries.insert(e.key, e.results);
                    }
                }
            }
            Err(e) if e.kind() == ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Cached results with their timings replaced by the cached marker.
    pub fn get(&self, spec: &ExperimentSpec) -> Option<Vec<CheckResult>> {
        self.entries.get(&cache_key(spec)).map(|rs| {
            rs.iter()
                .cloned()
                .map(|mut r| {
                    r.millis = Timing::Cached(CachedMarker::Cached);
                    r
                })
                .collect()
        })
    }

    pub fn put(&mut self, spec: &ExperimentSpec, results: &[CheckResult]) -> std::io::Result<()> {
        let entry = Entry {
            key: cache_key(spec),
            results: results.to_vec(),
        };
        let mut line = serde_json::to_string(&entry).expect("results serialize");
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        // start on a fresh line if a previous writer was cut off
        if f.metadata()?.len() > 0 && !ends_with_newline(&self.path)? {
            f.write_all(b"\n")?;
        }
        f.write_all(line.as_bytes())?;
        self.entries.insert(entry.key, entry.results);
        Ok(())
    }
}

fn ends_with_newline(path: &Path) -> std::io::Result<bool> {
    use std::io::{Read, Seek, SeekFrom};
    let mut f = File::open(path)?;
    f.seek(SeekFrom::End(-1))?;
    let mut b = [0u8; 1];
    f.read_exact(&mut b)?;
    Ok(b[0] == b'\n')
}

#[cfg(test)]
mod tests {
    use super::*;
    use blab_core::scalars::FieldSpec;

    #[test]
    fn key_depends_on_every_field() {
        let a = ExperimentSpec::new("duality", 1, 2, vec![FieldSpec::Rationals]);
        let mut b = a.clone();
        assert_eq!(cache_key(&a), cache_key(&b));
        b.f = Some(0);
        assert_ne!(cache_key(&a), cache_key(&b));
        let mut c = a.clone();
        c.fields.push(FieldSpec::PrimeField(2));
        assert_ne!(cache_key(&a), cache_key(&c));
        assert_eq!(cache_key(&a).len(), 64);
    }
}
