//! Persistent degree-multiset cache: one JSON record per line in
//! `degrees.jsonl`, rewritten whole under an exclusive lock on a sibling
//! lock file so concurrent processes can share a directory.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chardeg_core::catalog::GroupSpec;
use serde::{Deserialize, Serialize};

pub const ENGINE_VERSION: &str = concat!("chardeg-core/", env!("CARGO_PKG_VERSION"));

const FILE_NAME: &str = "degrees.jsonl";
const LOCK_NAME: &str = "degrees.lock";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub spec_text: String,
    pub order: u64,
    pub degrees: Vec<u64>,
    pub engine_version: String,
    pub timestamp: String,
}

impl CacheEntry {
    /// The record invariants: canonical spec text and `sum d^2 = order`.
    pub fn is_consistent(&self) -> bool {
        let canonical = self
            .spec_text
            .parse::<GroupSpec>()
            .is_ok_and(|s| s.to_string() == self.spec_text);
        let sum: Option<u64> = self
            .degrees
            .iter()
            .try_fold(0u64, |acc, &d| acc.checked_add(d.checked_mul(d)?));
        canonical && sum == Some(self.order) && self.degrees.is_sorted()
    }
}

/// What reading the cache file produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Missing,
    Entries(Vec<CacheEntry>),
    /// Unusable file, with the reason; it is ignored, never fatal.
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub path: String,
    pub entries: usize,
    pub current_version_entries: usize,
    pub bytes: u64,
    pub corrupt: Option<String>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(FILE_NAME)
    }

    fn lock(&self) -> io::Result<File> {
        fs::create_dir_all(&self.dir)?;
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(LOCK_NAME))?;
        f.lock()?;
        Ok(f)
    }

    fn read_unlocked(&self) -> io::Result<Loaded> {
        let text = match fs::read_to_string(self.path()) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Loaded::Missing),
            Err(e) if e.kind() == io::ErrorKind::InvalidData => return Ok(Loaded::Corrupt("not UTF-8".into())),
            Err(e) => return Err(e),
        };
        let mut entries = Vec::new();
        for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            match serde_json::from_str::<CacheEntry>(line) {
                Ok(e) if e.is_consistent() => entries.push(e),
                Ok(_) => return Ok(Loaded::Corrupt(format!("line {}: inconsistent record", no + 1))),
                Err(e) => return Ok(Loaded::Corrupt(format!("line {}: {e}", no + 1))),
            }
        }
        Ok(Loaded::Entries(entries))
    }

    pub fn load(&self) -> io::Result<Loaded> {
        let _guard = self.lock()?;
        self.read_unlocked()
    }

    /// The current-engine entry for `spec`, if cached.
    pub fn lookup(&self, spec: &GroupSpec) -> io::Result<(Option<CacheEntry>, Loaded)> {
        let loaded = self.load()?;
        let key = spec.to_string();
        let hit = match &loaded {
            Loaded::Entries(es) => es
                .iter()
                .find(|e| e.spec_text == key && e.engine_version == ENGINE_VERSION)
                .cloned(),
            _ => None,
        };
        Ok((hit, loaded))
    }

    /// Adds or replaces the entry with the same key. A corrupt file is left
    /// untouched; returns whether the entry was written.
    pub fn store(&self, entry: CacheEntry) -> io::Result<bool> {
        let _guard = self.lock()?;
        let mut entries = match self.read_unlocked()? {
            Loaded::Missing => Vec::new(),
            Loaded::Entries(es) => es,
            Loaded::Corrupt(_) => return Ok(false),
        };
        entries.retain(|e| !(e.spec_text == entry.spec_text && e.engine_version == entry.engine_version));
        entries.push(entry);
        entries.sort_by(|a, b| (&a.spec_text, &a.engine_version).cmp(&(&b.spec_text, &b.engine_version)));
        let tmp = self.dir.join(format!("{FILE_NAME}.tmp"));
        {
            let mut f = File::create(&tmp)?;
            for e in &entries {
                serde_json::to_writer(&mut f, e)?;
                f.write_all(b"\n")?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path())?;
        Ok(true)
    }

    pub fn clear(&self) -> io::Result<bool> {
        let _guard = self.lock()?;
        match fs::remove_file(self.path()) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn stats(&self) -> io::Result<CacheStats> {
        let loaded = self.load()?;
        let bytes = fs::metadata(self.path()).map(|m| m.len()).unwrap_or(0);
        let (entries, current, corrupt) = match loaded {
            Loaded::Missing => (0, 0, None),
            Loaded::Entries(es) => {
                let current = es.iter().filter(|e| e.engine_version == ENGINE_VERSION).count();
                (es.len(), current, None)
            }
            Loaded::Corrupt(why) => (0, 0, Some(why)),
        };
        Ok(CacheStats {
            path: display(&self.path()),
            entries,
            current_version_entries: current,
            bytes,
            corrupt,
        })
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
