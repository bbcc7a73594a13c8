//! Exhaustive verification over free trees: per-tree records, sharded and
//! cached runs, report aggregation and the diameter-4 closed-form check.

mod check;
mod record;
mod report;
mod theorem7;
mod verify;

pub use check::{Check, CheckSet};
pub use record::{evaluate, spectral_radius_at_least, TreeRecord, LE_DIGITS};
pub use report::{build_report, EnergyExtreme, OrderSummary, Report};
pub use theorem7::{internal_closed_form, root_closed_form, theorem7_closed_form_check, Theorem7Report, Theorem7Row};
pub use verify::{
    cmd_verify, code_hash, manifest_path, read_records, run_verify, shard_of, RunManifest, Totals, VerifyOptions,
    Violation, CACHE_ENV, DEFAULT_VERIFY_CAP,
};

use thiserror::Error;

use crate::graph::{ParseError, TreeError};
use crate::oracle::OracleError;
use crate::spectral::SpectralError;

/// Version of every JSON document the CLI and harness emit.
pub const SCHEMA_VERSION: u32 = 1;

/// Tag stored with cached records; bump when record semantics change.
pub const ARTIFACT_VERSION: &str = concat!("treespec-", env!("CARGO_PKG_VERSION"), "-r1");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("shard index {index} out of range for {count} shards")]
    BadShard { index: u64, count: u64 },
    #[error("spot check failed for {code}: stored {stored}, derived {derived}")]
    SpotCheck { code: String, stored: usize, derived: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
