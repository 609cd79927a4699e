//! On-disk run cache and CSV/JSON report export.
//!
//! Cache layout, rooted at a user-chosen directory:
//!
//! ```text
//! <root>/
//!   standard/p7_n10001_v1.b              # b-file payload ("n a(n)" lines)
//!   standard/p7_n10001_v1.manifest.json  # CacheManifest
//!   shifted/p1_n10001_v1.b
//!   no-zero/p1_n10001_v1.b
//!   reports/sweep.json                   # last SweepReport written by `sweep`
//! ```
//!
//! Both payload and manifest are written to a temporary file and renamed
//! into place, payload first; an entry exists once its manifest does. The
//! manifest carries a SHA-256 of the payload bytes.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{AnalysisError, RunSource, SweepReport};
use crate::engine::{Engine, SequenceRun, SequenceSpec, TermRecord, Variant};
use crate::numtheory::SpfTable;
use crate::oeis::{parse_bfile, write_bfile};

pub const FORMAT_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cache entry {path} failed its integrity check: {reason}")]
    Integrity { path: PathBuf, reason: String },
    #[error("malformed manifest {path}: {source}")]
    Manifest {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub variant: Variant,
    pub term_count: usize,
    pub format_version: u32,
}

impl CacheKey {
    pub fn new(spec: SequenceSpec) -> Self {
        Self {
            variant: spec.variant,
            term_count: spec.term_count,
            format_version: FORMAT_VERSION,
        }
    }

    pub fn spec(&self) -> SequenceSpec {
        SequenceSpec::new(self.variant, self.term_count)
    }

    fn stem(&self) -> String {
        format!(
            "p{}_n{}_v{}",
            self.variant.multiplier(),
            self.term_count,
            self.format_version
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheManifest {
    pub key: CacheKey,
    pub engine_version: String,
    /// Hex SHA-256 of the payload file.
    pub checksum: String,
    pub payload_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub manifest: CacheManifest,
    pub payload_path: PathBuf,
    pub manifest_path: PathBuf,
}

pub fn checksum(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `bytes` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let file_name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{file_name}.tmp.{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err(path))
}

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn paths(&self, key: &CacheKey) -> (PathBuf, PathBuf) {
        let dir = self.root.join(key.variant.tag());
        let stem = key.stem();
        (
            dir.join(format!("{stem}.b")),
            dir.join(format!("{stem}.manifest.json")),
        )
    }

    pub fn save_run(&self, run: &SequenceRun) -> Result<CacheEntry, StoreError> {
        let key = CacheKey::new(*run.spec());
        let (payload_path, manifest_path) = self.paths(&key);
        let payload = write_bfile(run, None).expect("no id, cannot fail");
        let manifest = CacheManifest {
            key,
            engine_version: ENGINE_VERSION.to_string(),
            checksum: checksum(payload.as_bytes()),
            payload_bytes: payload.len(),
        };
        write_atomic(&payload_path, payload.as_bytes())?;
        write_atomic(&manifest_path, &serde_json::to_vec_pretty(&manifest)?)?;
        Ok(CacheEntry {
            manifest,
            payload_path,
            manifest_path,
        })
    }

    /// Loads exactly the entry for `key`. `Ok(None)` when it was never
    /// saved; `Err(Integrity)` when the payload does not match its manifest.
    pub fn load_run(&self, key: &CacheKey) -> Result<Option<SequenceRun>, StoreError> {
        let (payload_path, manifest_path) = self.paths(key);
        let manifest_text = match fs::read(&manifest_path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&manifest_path)(e)),
        };
        let manifest: CacheManifest =
            serde_json::from_slice(&manifest_text).map_err(|source| StoreError::Manifest {
                path: manifest_path.clone(),
                source,
            })?;
        if manifest.key != *key {
            return Err(integrity(&manifest_path, "manifest key does not match file name"));
        }
        let payload = match fs::read(&payload_path) {
            Ok(p) => p,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(integrity(&payload_path, "payload missing"))
            }
            Err(e) => return Err(io_err(&payload_path)(e)),
        };
        if checksum(&payload) != manifest.checksum {
            return Err(integrity(&payload_path, "checksum mismatch"));
        }
        let run = decode_payload(key.spec(), &payload).map_err(|r| integrity(&payload_path, &r))?;
        Ok(Some(run))
    }

    /// Loads the first `key.term_count` terms from the shortest cached run
    /// of the same variant that is at least that long.
    pub fn load_prefix(&self, key: &CacheKey) -> Result<Option<SequenceRun>, StoreError> {
        if let Some(run) = self.load_run(key)? {
            return Ok(Some(run));
        }
        let dir = self.root.join(key.variant.tag());
        let entries = match fs::read_dir(&dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&dir)(e)),
        };
        let prefix = format!("p{}_n", key.variant.multiplier());
        let suffix = format!("_v{}.manifest.json", key.format_version);
        let mut longer: Vec<usize> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                name.strip_prefix(&prefix)?.strip_suffix(&suffix)?.parse().ok()
            })
            .filter(|&len| len > key.term_count)
            .collect();
        longer.sort_unstable();
        match longer.first() {
            Some(&len) => {
                let bigger = CacheKey {
                    term_count: len,
                    ..*key
                };
                Ok(self.load_run(&bigger)?.map(|r| r.truncated(key.term_count)))
            }
            None => Ok(None),
        }
    }

    fn sweep_path(&self) -> PathBuf {
        self.root.join("reports").join("sweep.json")
    }

    pub fn save_sweep(&self, report: &SweepReport) -> Result<PathBuf, StoreError> {
        let path = self.sweep_path();
        write_atomic(&path, &serde_json::to_vec_pretty(report)?)?;
        Ok(path)
    }

    pub fn load_sweep(&self) -> Result<Option<SweepReport>, StoreError> {
        let path = self.sweep_path();
        match fs::read(&path) {
            Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io_err(&path)(e)),
        }
    }
}

fn integrity(path: &Path, reason: &str) -> StoreError {
    StoreError::Integrity {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}

/// Rebuilds term records from `n a(n)` lines, recomputing `q(n)` and
/// validating every term against the definition's divisibility constraint.
fn decode_payload(spec: SequenceSpec, payload: &[u8]) -> Result<SequenceRun, String> {
    let text = std::str::from_utf8(payload).map_err(|e| e.to_string())?;
    let bfile = parse_bfile(text).map_err(|e| e.to_string())?;
    if bfile.offset != 1 || bfile.len() != spec.term_count {
        return Err(format!(
            "expected {} terms from offset 1, found {} from offset {}",
            spec.term_count,
            bfile.len(),
            bfile.offset
        ));
    }
    let mut terms = Vec::with_capacity(bfile.len());
    for (n, a) in bfile.entries {
        let n = n as u64;
        let a = u64::try_from(a).map_err(|_| format!("a({n}) = {a} out of range"))?;
        let q = spec.variant.q(n).map_err(|e| e.to_string())?;
        let bootstrap = n == 2 && a == 1 && spec.variant.has_bootstrap();
        if a == 0 || (q > 0 && q % a != 0) || (q == 0 && a != 1) {
            return Err(format!("a({n}) = {a} does not divide q({n}) = {q}"));
        }
        terms.push(TermRecord::new(n, q, a, bootstrap));
    }
    Ok(SequenceRun::from_terms(spec, terms))
}

/// Sweep run source backed by a [`Cache`]: cached runs are reused, missing
/// ones are generated and saved. A corrupt entry is logged and regenerated.
pub struct CachedRuns<'a> {
    pub cache: &'a Cache,
}

impl RunSource for CachedRuns<'_> {
    fn run_for(&self, spec: SequenceSpec, table: &Arc<SpfTable>) -> Result<SequenceRun, AnalysisError> {
        let key = CacheKey::new(spec);
        match self.cache.load_prefix(&key) {
            Ok(Some(run)) => {
                log::info!("cache hit: {} ({} terms)", spec.variant, spec.term_count);
                return Ok(run);
            }
            Ok(None) => log::info!("cache miss: {} ({} terms)", spec.variant, spec.term_count),
            Err(e) => log::warn!("ignoring cache entry: {e}"),
        }
        let run = Engine::with_table(spec, Arc::clone(table))?.run()?;
        if let Err(e) = self.cache.save_run(&run) {
            log::warn!("could not cache {}: {e}", spec.variant);
        }
        Ok(run)
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String, StoreError> {
    let mut w = csv::WriterBuilder::new().flexible(false).from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn with_header(sweep: &SweepReport, rows: Vec<(String, Vec<String>)>) -> Vec<Vec<String>> {
    let mut header = vec!["row".to_string()];
    header.extend(sweep.p_list.iter().map(|p| format!("p={p}")));
    let mut out = vec![header];
    if !sweep.reports.is_empty() {
        out.extend(rows.into_iter().map(|(label, cells)| {
            let mut r = vec![label];
            r.extend(cells);
            r
        }));
    }
    out
}

/// Success rates: rows A (fixed points), B (one position late), C (eligible
/// primes) and A/C.
pub fn export_table2(sweep: &SweepReport) -> Result<String, StoreError> {
    let col = |f: &dyn Fn(&crate::analysis::ClassificationReport) -> String| {
        sweep.reports.iter().map(f).collect::<Vec<_>>()
    };
    let rows = vec![
        ("A) Number of Matches n=a(n)".to_string(), col(&|r| r.detected.to_string())),
        ("B) Number of Matches n=a(n+1)".to_string(), col(&|r| r.near_matches.to_string())),
        (
            format!("C) Total Primes in {} terms (excluding 2 and p)", sweep.n),
            col(&|r| r.total_eligible_primes.to_string()),
        ),
        ("Success Rates (A/C)".to_string(), col(&|r| r.success_rate.to_string())),
    ];
    csv_string(with_header(sweep, rows))
}

/// Fixed-point nonprimes: rows A (false negatives), B (nonprimes) and A/B.
pub fn export_table3(sweep: &SweepReport) -> Result<String, StoreError> {
    let col = |f: &dyn Fn(&crate::analysis::ClassificationReport) -> String| {
        sweep.reports.iter().map(f).collect::<Vec<_>>()
    };
    let rows = vec![
        (
            format!("A) Number of false negatives in {} terms", sweep.n),
            col(&|r| r.false_negatives.to_string()),
        ),
        (
            format!("B) Number of nonprimes in first {} terms", sweep.n),
            col(&|r| r.total_nonprimes.to_string()),
        ),
        ("% (A/B)".to_string(), col(&|r| r.false_negative_rate.to_string())),
    ];
    csv_string(with_header(sweep, rows))
}

/// `(p, success_rate_percent)` plot data plus the raw counts.
pub fn export_figure2(sweep: &SweepReport) -> Result<String, StoreError> {
    let mut rows = vec![vec![
        "p".to_string(),
        "success_rate_percent".to_string(),
        "detected".to_string(),
        "total_eligible_primes".to_string(),
    ]];
    rows.extend(sweep.figure2_series.iter().map(|(p, rate)| {
        vec![
            p.to_string(),
            rate.percent_value(),
            rate.numerator.to_string(),
            rate.denominator.to_string(),
        ]
    }));
    csv_string(rows)
}

pub fn report_json<T: Serialize>(value: &T) -> Result<String, StoreError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
