//! Verification campaigns: configured domains and bound families checked against reference
//! spectra, with CSV/JSON reports and pairwise comparison of families.

mod campaign;
mod compare;
mod config;
mod report;

use std::path::PathBuf;

pub use campaign::{
    exit_code, oracle_spectrum, run_verification, Status, VerificationRecord, ABS_TOLERANCE, THREADS_ENV,
};
pub use compare::{column_label, compare_by_operator, compare_families, ComparisonRow, ComparisonTable, Dominance};
pub use config::{load_config, CampaignConfig, DomainEntry, FamilyEntry, FuzzEntry, Outputs, PlannedFamily};
pub use report::{emit_report, to_csv, to_json, ReportFormat, CSV_HEADER};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config at `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] crate::error::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("compare: {0}")]
    Compare(String),
}
