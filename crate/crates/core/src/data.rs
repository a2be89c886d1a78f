//! Bundled experiment datasets and CSV ingestion.
//!
//! The data files are plain CSV with `#` comment lines allowed ahead of the
//! header. The drilling table has one 10-minute session per row; the push
//! table has one peak force per channel width. Copies of both ship embedded
//! so the tooling works without a data directory.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::forelimb::PushTestRow;
use crate::quantities::{ExperimentRecord, GRAVITY};

pub const TABLE3_CSV: &str = include_str!("../../../data/table3.csv");
pub const TABLE4_CSV: &str = include_str!("../../../data/table4.csv");

/// Weight of the bare drill/motor assembly in the drilling sessions (kg).
pub const TABLE3_BASE_WEIGHT_KG: f64 = 7.0;
/// Length of every drilling session (s).
pub const TABLE3_SESSION_S: f64 = 600.0;
/// Rows flagged as outliers on load: the 0.5 kgf row breaks the otherwise
/// monotone depth trend and is excluded from calibration by default.
pub const TABLE3_OUTLIER_LABELS: &[&str] = &["W+0.5"];

#[derive(Debug, Deserialize)]
struct Table3Row {
    label: String,
    wob_kgf_added: f64,
    depth_mm: f64,
    rpm: f64,
    e_s_mpa: f64,
}

#[derive(Debug, Deserialize)]
struct Table4Row {
    d_mm: f64,
    alpha_deg: f64,
    f_h_max_n: f64,
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

/// Parse drilling-session records from CSV text. Weight on bit is the base
/// assembly weight plus the added mass, converted at standard gravity;
/// outlier flags follow [`TABLE3_OUTLIER_LABELS`].
pub fn parse_table3(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    for row in reader(text).deserialize::<Table3Row>() {
        let row = row.map_err(|e| Error::Data(format!("drilling table: {e}")))?;
        let record = ExperimentRecord {
            outlier: TABLE3_OUTLIER_LABELS.contains(&row.label.as_str()),
            wob: (TABLE3_BASE_WEIGHT_KG + row.wob_kgf_added) * GRAVITY,
            drilled_depth: row.depth_mm / 1000.0,
            duration: TABLE3_SESSION_S,
            rpm: row.rpm,
            e_s_reported: row.e_s_mpa * 1e6,
            label: row.label,
        };
        record.validate()?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(Error::Data("drilling table has no rows".to_string()));
    }
    Ok(records)
}

/// Parse push-test rows from CSV text.
pub fn parse_table4(text: &str) -> Result<Vec<PushTestRow>> {
    let mut rows = Vec::new();
    for row in reader(text).deserialize::<Table4Row>() {
        let row = row.map_err(|e| Error::Data(format!("push table: {e}")))?;
        rows.push(PushTestRow {
            d: row.d_mm,
            alpha: row.alpha_deg,
            f_h_max: row.f_h_max_n,
        });
    }
    if rows.is_empty() {
        return Err(Error::Data("push table has no rows".to_string()));
    }
    Ok(rows)
}

pub fn load_table3(path: &Path) -> Result<Vec<ExperimentRecord>> {
    parse_table3(&read(path)?)
}

pub fn load_table4(path: &Path) -> Result<Vec<PushTestRow>> {
    parse_table4(&read(path)?)
}

/// The embedded drilling-session records.
pub fn bundled_table3() -> Vec<ExperimentRecord> {
    parse_table3(TABLE3_CSV).expect("embedded drilling table parses")
}

/// The embedded push-test rows.
pub fn bundled_table4() -> Vec<PushTestRow> {
    parse_table4(TABLE4_CSV).expect("embedded push table parses")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
