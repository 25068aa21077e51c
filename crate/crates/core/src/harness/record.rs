use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::OptimizerKind;
use crate::solve::Method;

pub const CSV_HEADER: &str =
    "seed,size,method,optimizer,layers,shots,obtained,exact,rel_error,evaluations,wall_time_s";

/// One sweep cell. `rel_error` is `None` when the exact value is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub seed: u64,
    pub size: usize,
    pub method: Method,
    pub optimizer: OptimizerKind,
    pub layers: usize,
    pub shots: u64,
    pub obtained: f64,
    pub exact: f64,
    pub rel_error: Option<f64>,
    pub evaluations: usize,
    pub wall_time_s: f64,
}

/// `|obtained - exact| / |exact|`, undefined for `exact == 0`.
pub fn relative_error(obtained: f64, exact: f64) -> Option<f64> {
    (exact != 0.0).then(|| (obtained - exact).abs() / exact.abs())
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        Error::Io(e.to_string())
    } else {
        Error::Parse(e.to_string())
    }
}

/// Writes a header line and one row per record. Undefined relative errors are
/// empty fields.
pub fn emit_csv<W: Write>(records: &[BenchmarkRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(',')).map_err(csv_error)?;
    for r in records {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<BenchmarkRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers().map_err(csv_error)?.iter().map(String::from).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {:?}", header.join(","))));
    }
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

/// Pretty-printed JSON array with the CSV column names as keys.
pub fn emit_json<W: Write>(records: &[BenchmarkRecord], out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, records).map_err(|e| Error::Io(e.to_string()))
}

pub fn parse_json<R: Read>(input: R) -> Result<Vec<BenchmarkRecord>> {
    serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))
}
