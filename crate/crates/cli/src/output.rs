//! Serialization of records. Floats use the shortest representation that
//! round-trips, so identical runs give identical bytes.

use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;
use crate::record::Record;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// CSV with a header row taken from the first record; every record must
/// carry the same keys in the same order.
pub fn to_csv(records: &[Record]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if let Some(first) = records.first() {
        w.write_record(first.keys()).map_err(csv_err)?;
    }
    for r in records {
        debug_assert!(records[0].keys().eq(r.keys()), "ragged records");
        w.write_record(r.values().map(cell)).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// One JSON object per line.
pub fn to_json_lines(records: &[Record]) -> Vec<u8> {
    let mut out = Vec::new();
    for r in records {
        serde_json::to_writer(&mut out, r).expect("in-memory write");
        out.push(b'\n');
    }
    out
}

pub fn render(records: &[Record], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => to_csv(records),
        Format::Json => Ok(to_json_lines(records)),
    }
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|()| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}
