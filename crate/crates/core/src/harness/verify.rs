use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{evaluate, CheckSet, HarnessError, TreeRecord, ARTIFACT_VERSION};
use crate::graph::{enumerate_free_trees_with_max, CanonicalCode, DEFAULT_MAX_ENUM_ORDER};
use crate::spectral::m_below_average;

/// Largest order `verify` accepts without `allow_long`.
pub const DEFAULT_VERIFY_CAP: usize = 18;

pub const CACHE_ENV: &str = "TREESPEC_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub checks: CheckSet,
    pub shards: u64,
    pub shard_index: u64,
    pub seed: u64,
    /// Permits orders up to 20.
    pub allow_long: bool,
    pub cache_dir: Option<PathBuf>,
}

impl VerifyOptions {
    pub fn new(n_min: usize, n_max: usize) -> Self {
        VerifyOptions {
            n_min,
            n_max,
            checks: CheckSet::all(),
            shards: 1,
            shard_index: 0,
            seed: 0,
            allow_long: false,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let cap = if self.allow_long { DEFAULT_MAX_ENUM_ORDER } else { DEFAULT_VERIFY_CAP };
        if self.n_min < 2 || self.n_min > self.n_max || self.n_max > cap {
            return Err(HarnessError::BadRange(format!(
                "need 2 <= n_min <= n_max <= {}, got {}..{}",
                cap, self.n_min, self.n_max
            )));
        }
        if self.shards == 0 || self.shard_index >= self.shards {
            return Err(HarnessError::BadShard { index: self.shard_index, count: self.shards });
        }
        if self.checks.is_empty() {
            return Err(HarnessError::UnknownCheck(String::new()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: CanonicalCode,
    pub n: usize,
    pub check: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub trees_checked: u64,
    pub violations: u64,
    pub equality_cases: u64,
    /// Trees with a Laplacian eigenvalue strictly between the average degree and 2.
    pub between_avg_and_2: u64,
    pub spot_checks: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub artifact_version: String,
    pub n_min: usize,
    pub n_max: usize,
    pub checks: CheckSet,
    pub shard_index: u64,
    pub shards: u64,
    pub seed: u64,
    pub totals: Totals,
    pub violations: Vec<Violation>,
}

impl RunManifest {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// First 8 bytes of the SHA-256 of the code's text, big-endian.
pub fn code_hash(code: &CanonicalCode) -> u64 {
    let digest = Sha256::digest(code.to_string().as_bytes());
    u64::from_be_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

pub fn shard_of(code: &CanonicalCode, shards: u64) -> u64 {
    code_hash(code) % shards
}

/// One record in every hundred, at an offset picked by the seed.
fn spot_checked(index: usize, len: usize, seed: u64) -> bool {
    let offset = (seed % 100.min(len.max(1)) as u64) as usize;
    index % 100 == offset
}

/// Runs the checks over every free tree in the range that falls in this
/// shard and writes one JSON line per tree to `sink`, sorted by order and
/// then by canonical code.
pub fn run_verify<W: Write>(opts: &VerifyOptions, sink: &mut W) -> Result<RunManifest, HarnessError> {
    opts.validate()?;
    let mut cache = RecordCache::open(opts.cache_dir.as_deref(), &opts.checks)?;
    let mut totals = Totals::default();
    let mut violations = Vec::new();
    for n in opts.n_min..=opts.n_max {
        let codes: Vec<CanonicalCode> = enumerate_free_trees_with_max(n, DEFAULT_MAX_ENUM_ORDER)?
            .map(|t| crate::graph::canonical_code(&t))
            .filter(|c| shard_of(c, opts.shards) == opts.shard_index)
            .collect();
        let results: Vec<(TreeRecord, bool)> = codes
            .par_iter()
            .map(|code| match cache.get(code) {
                Some(r) => Ok((r.clone(), true)),
                None => evaluate(&code.to_tree()?, &opts.checks).map(|r| (r, false)),
            })
            .collect::<Result<_, HarnessError>>()?;
        let mut records = Vec::with_capacity(results.len());
        for (r, hit) in results {
            if hit {
                totals.cache_hits += 1;
            } else {
                cache.insert(&r)?;
            }
            records.push(r);
        }
        records.sort_by(|a, b| a.code.levels().cmp(b.code.levels()));
        for (i, r) in records.iter().enumerate() {
            if spot_checked(i, records.len(), opts.seed) {
                totals.spot_checks += 1;
                let again = m_below_average(&r.code.to_tree()?)?;
                if again != r.m_below_avg {
                    return Err(HarnessError::SpotCheck {
                        code: r.code.to_string(),
                        stored: r.m_below_avg,
                        derived: again,
                    });
                }
            }
            totals.trees_checked += 1;
            totals.equality_cases += u64::from(r.equality);
            totals.between_avg_and_2 += u64::from(r.m_between_avg_and_2 > 0);
            for v in &r.violations {
                violations.push(Violation { code: r.code.clone(), n: r.n, check: v.clone() });
            }
            serde_json::to_writer(&mut *sink, r)?;
            sink.write_all(b"\n")?;
        }
    }
    cache.flush()?;
    sink.flush()?;
    totals.violations = violations.len() as u64;
    Ok(RunManifest {
        schema_version: super::SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_string(),
        n_min: opts.n_min,
        n_max: opts.n_max,
        checks: opts.checks.clone(),
        shard_index: opts.shard_index,
        shards: opts.shards,
        seed: opts.seed,
        totals,
        violations,
    })
}

/// Path of the manifest written next to a record file.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Writes records to `out` and the manifest to `<out>.manifest.json`.
pub fn cmd_verify(opts: &VerifyOptions, out: &Path) -> Result<RunManifest, HarnessError> {
    let mut w = BufWriter::new(File::create(out)?);
    let manifest = run_verify(opts, &mut w)?;
    drop(w);
    let mut m = serde_json::to_string_pretty(&manifest)?;
    m.push('\n');
    fs::write(manifest_path(out), m)?;
    Ok(manifest)
}

/// Reads a line-delimited record file.
pub fn read_records(path: &Path) -> Result<Vec<TreeRecord>, HarnessError> {
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    checks: CheckSet,
    record: TreeRecord,
}

/// Append-only record cache. Entries are reused only when code, check set
/// and artifact version all match.
struct RecordCache {
    file: Option<PathBuf>,
    checks: CheckSet,
    known: HashMap<CanonicalCode, TreeRecord>,
    fresh: Vec<String>,
}

impl RecordCache {
    fn open(dir: Option<&Path>, checks: &CheckSet) -> Result<Self, HarnessError> {
        let mut cache = RecordCache { file: None, checks: checks.clone(), known: HashMap::new(), fresh: Vec::new() };
        let Some(dir) = dir else { return Ok(cache) };
        fs::create_dir_all(dir)?;
        let file = dir.join("records.jsonl");
        if file.exists() {
            for line in BufReader::new(File::open(&file)?).lines() {
                // skip lines from older formats rather than fail
                let Ok(e) = serde_json::from_str::<CacheEntry>(&line?) else { continue };
                if e.version == ARTIFACT_VERSION && e.checks == *checks {
                    cache.known.insert(e.record.code.clone(), e.record);
                }
            }
        }
        cache.file = Some(file);
        Ok(cache)
    }

    fn get(&self, code: &CanonicalCode) -> Option<&TreeRecord> {
        self.known.get(code)
    }

    fn insert(&mut self, r: &TreeRecord) -> Result<(), HarnessError> {
        if self.file.is_some() {
            let e =
                CacheEntry { version: ARTIFACT_VERSION.to_string(), checks: self.checks.clone(), record: r.clone() };
            self.fresh.push(serde_json::to_string(&e)?);
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), HarnessError> {
        let Some(file) = &self.file else { return Ok(()) };
        if self.fresh.is_empty() {
            return Ok(());
        }
        let mut w = BufWriter::new(OpenOptions::new().create(true).append(true).open(file)?);
        for line in self.fresh.drain(..) {
            writeln!(w, "{}", line)?;
        }
        w.flush()?;
        Ok(())
    }
}
