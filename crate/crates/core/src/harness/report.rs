use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::harness::campaign::VerificationRecord;
use crate::harness::HarnessError;

pub const CSV_HEADER: [&str; 10] =
    ["domain", "operator", "family", "k", "bound", "oracle", "margin", "ratio", "status", "params"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// Picks the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(records: &[VerificationRecord]) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.domain.clone(),
            r.operator.to_string(),
            r.family.to_string(),
            r.k.to_string(),
            cell(r.bound),
            cell(r.oracle),
            cell(r.margin),
            cell(r.ratio),
            r.status.to_string(),
            r.params.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(records: &[VerificationRecord]) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(records)?)
}

pub fn emit_report(
    records: &[VerificationRecord],
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let text = match format {
        ReportFormat::Csv => to_csv(records)?,
        ReportFormat::Json => to_json(records)? + "\n",
    };
    std::fs::write(path, text).map_err(|source| HarnessError::Io { path: path.to_path_buf(), source })
}
