//! On-disk cache: decomposition memo entries and `h0` checkpoints, one JSON
//! record per line after a header that pins the field and the curve.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use log::warn;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::curve::PlaneCurve;
use crate::field::Field;
use crate::torsion::{TorsionModel, TorsionVector};

pub const CACHE_VERSION: u32 = 1;
const FORMAT: &str = "quartic-cache";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("corrupt cache record: {0}")]
    Corrupt(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    /// SHA-256 of the field descriptor.
    pub field: String,
    /// Fingerprint of the field and defining form.
    pub curve: String,
}

impl Header {
    pub fn for_curve<F: Field>(curve: &PlaneCurve<F>) -> Self {
        let field = Sha256::digest(curve.field().descriptor().as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        Self { format: FORMAT.to_string(), version: CACHE_VERSION, field, curve: curve.fingerprint() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Record {
    /// A torsion vector (six base-4 digits) and the divisor it decomposes.
    Memo { v: String, divisor: Value },
    /// `h0` of the degree-2 divisor for the cusp class with this index.
    H0 { class: usize, h0: usize },
}

/// What `open` found on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadStatus {
    Fresh,
    Loaded { records: usize },
    /// Header missing, unreadable or for another field/curve; the file was
    /// started over.
    Rebuilt { reason: String },
    /// Malformed trailing lines were dropped.
    Recovered { records: usize, dropped: usize },
}

struct Contents {
    memo: Vec<(String, Value)>,
    memo_keys: HashSet<String>,
    h0: BTreeMap<usize, usize>,
}

pub struct Cache {
    path: PathBuf,
    header: Header,
    contents: Mutex<Contents>,
    writer: Mutex<File>,
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

impl Cache {
    pub fn open<F: Field>(path: &Path, curve: &PlaneCurve<F>) -> Result<(Self, LoadStatus), CacheError> {
        let header = Header::for_curve(curve);
        let mut records = Vec::new();
        let mut status = LoadStatus::Fresh;
        if path.exists() {
            let lines: Vec<String> = BufReader::new(File::open(path).map_err(io(path))?).lines().collect::<Result<_, _>>().map_err(io(path))?;
            match lines.first().map(|l| serde_json::from_str::<Header>(l)) {
                Some(Ok(h)) if h == header => {
                    let mut dropped = 0;
                    for (i, line) in lines.iter().enumerate().skip(1) {
                        match serde_json::from_str::<Record>(line) {
                            Ok(r) => records.push(r),
                            Err(e) => {
                                dropped = lines.len() - i;
                                warn!("{}: dropping {dropped} line(s) from line {}: {e}", path.display(), i + 1);
                                break;
                            }
                        }
                    }
                    status = if dropped == 0 { LoadStatus::Loaded { records: records.len() } } else { LoadStatus::Recovered { records: records.len(), dropped } };
                }
                Some(Ok(_)) => status = LoadStatus::Rebuilt { reason: "fingerprint mismatch".into() },
                Some(Err(e)) => status = LoadStatus::Rebuilt { reason: format!("bad header: {e}") },
                None => status = LoadStatus::Rebuilt { reason: "empty file".into() },
            }
            if let LoadStatus::Rebuilt { reason } = &status {
                warn!("{}: {reason}; rebuilding cache", path.display());
            }
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io(path))?;
        }
        // rewrite whenever the file on disk is not exactly header + records
        if !matches!(status, LoadStatus::Loaded { .. }) {
            let mut s = serde_json::to_string(&header).expect("header") + "\n";
            for r in &records {
                s += &(serde_json::to_string(r).expect("record") + "\n");
            }
            fs::write(path, s).map_err(io(path))?;
        }
        let writer = OpenOptions::new().append(true).open(path).map_err(io(path))?;
        let mut contents = Contents { memo: Vec::new(), memo_keys: HashSet::new(), h0: BTreeMap::new() };
        for r in records {
            contents.insert(r);
        }
        let cache = Self { path: path.to_path_buf(), header, contents: Mutex::new(contents), writer: Mutex::new(writer) };
        Ok((cache, status))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn header(&self) -> &Header {
        &self.header
    }

    pub fn h0_records(&self) -> BTreeMap<usize, usize> {
        self.contents.lock().h0.clone()
    }

    pub fn memo_records(&self) -> Vec<(String, Value)> {
        self.contents.lock().memo.clone()
    }

    /// Appends records and flushes; memo entries already present are
    /// skipped.
    pub fn append(&self, records: impl IntoIterator<Item = Record>) -> Result<(), CacheError> {
        let mut contents = self.contents.lock();
        let mut s = String::new();
        for r in records {
            if let Record::Memo { v, .. } = &r {
                if contents.memo_keys.contains(v) {
                    continue;
                }
            }
            s += &(serde_json::to_string(&r).expect("record") + "\n");
            contents.insert(r);
        }
        if s.is_empty() {
            return Ok(());
        }
        let mut w = self.writer.lock();
        w.write_all(s.as_bytes()).map_err(io(&self.path))?;
        w.flush().map_err(io(&self.path))
    }

    /// Seeds the memo of `model` from the cache; returns how many entries
    /// were loaded.
    pub fn load_memo<F: Field>(&self, model: &TorsionModel<F>) -> Result<usize, CacheError> {
        let field = model.field();
        let mut n = 0;
        for (v, d) in self.memo_records() {
            let vec = TorsionVector::from_digits(&v).ok_or_else(|| CacheError::Corrupt(v.clone()))?;
            let div = crate::rr::Divisor::from_json(field, &d).map_err(|e| CacheError::Corrupt(e.to_string()))?;
            model.remember(div, vec);
            n += 1;
        }
        Ok(n)
    }

    /// Writes the memo entries of `model` not yet on disk.
    pub fn store_memo<F: Field>(&self, model: &TorsionModel<F>) -> Result<(), CacheError> {
        let field = model.field();
        let mut entries = model.memo_entries();
        entries.sort_by_key(|(_, v)| *v);
        self.append(entries.into_iter().map(|(d, v)| Record::Memo { v: v.digits(), divisor: d.to_json(field) }))
    }
}

impl Contents {
    fn insert(&mut self, r: Record) {
        match r {
            Record::Memo { v, divisor } => {
                if self.memo_keys.insert(v.clone()) {
                    self.memo.push((v, divisor));
                }
            }
            Record::H0 { class, h0 } => {
                self.h0.insert(class, h0);
            }
        }
    }
}

/// One cache file per field, under a common directory.
pub struct Caches {
    pub f73: Cache,
    pub exact: Cache,
}

impl Caches {
    pub fn open(dir: &Path, shadow: &PlaneCurve<impl Field>, exact: &PlaneCurve<impl Field>) -> Result<(Self, [LoadStatus; 2]), CacheError> {
        let (f73, s1) = Cache::open(&dir.join("f73.jsonl"), shadow)?;
        let (exact, s2) = Cache::open(&dir.join("exact.jsonl"), exact)?;
        Ok((Self { f73, exact }, [s1, s2]))
    }
}
