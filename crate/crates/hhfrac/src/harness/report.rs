//! Report serialization. CSV carries a fixed 12-column core; JSON carries
//! every record field including the constants map and the certification
//! summary. Floats are printed with 17 significant digits in both formats,
//! which round-trips f64 exactly, so parse(emit(records)) == records.

use std::io;
use std::path::Path;

use serde::Serialize;

use super::VerificationRecord;
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 12] = [
    "theorem", "function", "theta", "alpha", "m", "a", "b", "q", "lhs", "bound", "slack", "status",
];

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn to_csv_string(records: &[VerificationRecord]) -> Result<String> {
    let enc = |e: csv::Error| Error::Config(format!("csv encode: {e}"));
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(CSV_COLUMNS).map_err(enc)?;
    for r in records {
        wtr.write_record(&[
            r.theorem.to_string(),
            r.function.clone(),
            fmt_f64(r.theta),
            fmt_f64(r.alpha),
            fmt_f64(r.m),
            fmt_f64(r.a),
            fmt_f64(r.b),
            fmt_f64(r.q),
            fmt_opt(r.lhs),
            fmt_opt(r.bound),
            fmt_opt(r.slack),
            r.status.to_string(),
        ])
        .map_err(enc)?;
    }
    let bytes = wtr.into_inner().map_err(|e| Error::Config(format!("csv encode: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv encode: {e}")))
}

fn parse_f64(field: &str, col: &str, row: usize) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Config(format!("csv row {row}: bad {col} value {field:?}")))
}

fn parse_opt(field: &str, col: &str, row: usize) -> Result<Option<f64>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_f64(field, col, row).map(Some)
    }
}

/// Reads back the 12-column core; fields the CSV does not carry come back
/// empty, matching [`VerificationRecord::csv_projection`].
pub fn from_csv_str(text: &str) -> Result<Vec<VerificationRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Config(format!("csv parse: {e}")))?;
    if headers.iter().ne(CSV_COLUMNS.iter().copied()) {
        return Err(Error::Config(format!(
            "csv parse: expected columns {CSV_COLUMNS:?}, got {headers:?}"
        )));
    }
    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| Error::Config(format!("csv parse: {e}")))?;
        if row.len() != CSV_COLUMNS.len() {
            return Err(Error::Config(format!(
                "csv row {i}: expected {} fields, got {}",
                CSV_COLUMNS.len(),
                row.len()
            )));
        }
        records.push(VerificationRecord {
            theorem: row[0].parse()?,
            function: row[1].to_string(),
            theta: parse_f64(&row[2], "theta", i)?,
            alpha: parse_f64(&row[3], "alpha", i)?,
            m: parse_f64(&row[4], "m", i)?,
            a: parse_f64(&row[5], "a", i)?,
            b: parse_f64(&row[6], "b", i)?,
            q: parse_f64(&row[7], "q", i)?,
            lhs: parse_opt(&row[8], "lhs", i)?,
            bound: parse_opt(&row[9], "bound", i)?,
            slack: parse_opt(&row[10], "slack", i)?,
            status: row[11].parse()?,
            lemma_gap: None,
            quad_error: None,
            panels: None,
            constants: Default::default(),
            cert: None,
            note: None,
        });
    }
    Ok(records)
}

/// JSON formatter that prints every f64 as {:.16e}, 17 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value with the 17-significant-digit float convention.
pub fn json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).map_err(|e| Error::Config(format!("json encode: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::Config(format!("json encode: {e}")))
}

pub fn to_json_string(records: &[VerificationRecord]) -> Result<String> {
    json_string(&records)
}

pub fn from_json_str(text: &str) -> Result<Vec<VerificationRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("json parse: {e}")))
}

pub fn write_csv_path(records: &[VerificationRecord], path: &Path) -> Result<()> {
    let text = to_csv_string(records)?;
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
}

pub fn read_csv_path(path: &Path) -> Result<Vec<VerificationRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    from_csv_str(&text)
}

pub fn write_json_path(records: &[VerificationRecord], path: &Path) -> Result<()> {
    let text = to_json_string(records)?;
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
}

pub fn read_json_path(path: &Path) -> Result<Vec<VerificationRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    from_json_str(&text)
}
