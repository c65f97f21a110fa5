//! Thread-safe polyzeta value cache with an optional JSON-lines backing file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polylog::Estimate;
use crate::real::Real;
use crate::word::{Alphabet, Word};

/// One cached value. `value` holds the exact float bits (see
/// [`Real::to_bits`]); `decimal` is informational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaCacheEntry {
    pub word: String,
    pub value: String,
    pub decimal: String,
    pub error_bound: f64,
    pub n_used: u64,
    pub precision_bits: usize,
}

impl ZetaCacheEntry {
    pub fn new(word: &Word, e: &Estimate) -> Self {
        ZetaCacheEntry {
            word: word.encode(),
            value: e.value.to_bits(),
            decimal: e.value.to_decimal(30),
            error_bound: e.bound,
            n_used: e.terms,
            precision_bits: e.value.precision(),
        }
    }

    pub fn estimate(&self) -> Result<Estimate> {
        Ok(Estimate { value: Real::from_bits(&self.value)?, bound: self.error_bound, terms: self.n_used })
    }

    pub fn word(&self) -> Result<Word> {
        Word::parse(Alphabet::Y, &self.word)
    }
}

#[derive(Debug, Default)]
pub struct ZetaCache {
    entries: RwLock<HashMap<String, ZetaCacheEntry>>,
    file: Option<Mutex<File>>,
    path: Option<PathBuf>,
    warnings: usize,
}

impl ZetaCache {
    pub fn in_memory() -> Self {
        ZetaCache::default()
    }

    /// Loads `path` if it exists and opens it for appending. Lines that do
    /// not parse are skipped and counted in [`ZetaCache::warnings`].
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut entries = HashMap::new();
        let mut warnings = 0;
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<ZetaCacheEntry>(&line) {
                    Ok(e) if e.estimate().is_ok() && e.word().is_ok() => {
                        insert_better(&mut entries, e);
                    }
                    _ => warnings += 1,
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(ZetaCache {
            entries: RwLock::new(entries),
            file: Some(Mutex::new(file)),
            path: Some(path.to_path_buf()),
            warnings,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of corrupt lines skipped while loading.
    pub fn warnings(&self) -> usize {
        self.warnings
    }

    pub fn entry(&self, w: &Word) -> Option<ZetaCacheEntry> {
        self.entries.read().expect("cache lock").get(&w.encode()).cloned()
    }

    /// A cached value meeting `tol` at `prec` bits or more.
    pub fn get(&self, w: &Word, tol: f64, prec: usize) -> Option<Estimate> {
        let e = self.entry(w)?;
        if e.error_bound <= tol && e.precision_bits >= prec {
            e.estimate().ok()
        } else {
            None
        }
    }

    pub fn insert(&self, w: &Word, e: &Estimate) -> Result<()> {
        let entry = ZetaCacheEntry::new(w, e);
        let line = serde_json::to_string(&entry)?;
        insert_better(&mut self.entries.write().expect("cache lock"), entry);
        if let Some(f) = &self.file {
            let mut f = f.lock().expect("cache file lock");
            writeln!(f, "{line}")?;
            f.flush()?;
        }
        Ok(())
    }
}

fn insert_better(map: &mut HashMap<String, ZetaCacheEntry>, e: ZetaCacheEntry) {
    match map.get(&e.word) {
        Some(old) if old.error_bound <= e.error_bound && old.precision_bits >= e.precision_bits => {}
        _ => {
            map.insert(e.word.clone(), e);
        }
    }
}
