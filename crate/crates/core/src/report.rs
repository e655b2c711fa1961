//! CSV and JSON encodings of search rows.
//!
//! CSV columns follow the field order of [`ReportRow`]; ids are written as
//! `G(order,number)` and an unidentified group leaves the field empty.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::search::ReportRow;

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER).map_err(csv_error)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::internal(e.to_string()))
}

pub fn to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::internal(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = r.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::parse(
            "report csv",
            format!("unexpected header {:?}", header),
        ));
    }
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

pub fn to_json(rows: &[ReportRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<Vec<ReportRow>> {
    serde_json::from_str(text).map_err(|e| Error::parse("report json", e.to_string()))
}

pub const CSV_HEADER: [&str; 17] = [
    "r",
    "g_tilde",
    "g",
    "b",
    "p",
    "index",
    "group_name",
    "group_id",
    "quotient_id",
    "dim_s2",
    "cond_a",
    "B1",
    "b_ge_6",
    "B_status",
    "sigma",
    "canonical_tuple",
    "orbit_complete",
];

fn csv_error(e: csv::Error) -> Error {
    let pos = e
        .position()
        .map(|p| format!("line {}", p.line()))
        .unwrap_or_else(|| "report csv".to_string());
    Error::parse(pos, e.to_string())
}
