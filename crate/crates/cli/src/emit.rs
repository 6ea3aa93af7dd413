//! CSV and JSON serialization of sweep rows.
//!
//! CSV: RFC-4180, header exactly [`FIELDS`], floats in shortest round-trip
//! form, undefined values as empty fields. JSON: an array of objects with
//! the same keys, undefined values as `null`.

use std::io::Write;

use crate::sweep::{ResultRow, FIELDS};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else {
        String::new()
    }
}

fn field(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

fn record(row: &ResultRow) -> [String; 16] {
    [
        number(row.t0),
        number(row.t),
        field(row.ergotropy),
        field(row.asymptotic_ergotropy),
        field(row.excess_ergotropy),
        field(row.e_ss),
        field(row.e_gibbs),
        field(row.s_ss),
        field(row.s_gibbs),
        field(row.rel_entropy),
        field(row.delta_s_sys),
        field(row.delta_s_bath),
        field(row.erasure_cost),
        field(row.lambda),
        row.classification.clone(),
        field(row.h_sectors),
    ]
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    w.write_record(FIELDS)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ResultRow], mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Writes `rows` in `format`; fails on an empty slice.
pub fn emit<W: Write>(rows: &[ResultRow], format: Format, out: W) -> Result<(), CliError> {
    if rows.is_empty() {
        return Err(CliError::Validation {
            invariant: "non-empty output",
            detail: "no rows to emit".into(),
        });
    }
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}

pub fn read_json(text: &str) -> Result<Vec<ResultRow>, CliError> {
    Ok(serde_json::from_str(text)?)
}
