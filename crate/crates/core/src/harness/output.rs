//! Result rows and their CSV / JSON files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use crate::error::{Error, Result};

pub const RESULT_HEADER: [&str; 6] = ["k", "t", "value", "reference", "abs_error", "wall_time_ms"];
pub const SWEEP_HEADER: [&str; 6] = ["point", "x", "y", "k", "t", "value"];

/// One schedule step of an experiment. `t = 1 - r^k` for the run's ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub k: u32,
    pub t: f64,
    pub value: f64,
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
    pub wall_time_ms: f64,
}

impl ResultRow {
    pub fn new(k: u32, t: f64, value: f64, reference: Option<f64>) -> Self {
        Self {
            k,
            t,
            value,
            reference,
            abs_error: reference.map(|r| (value - r).abs()),
            wall_time_ms: 0.0,
        }
    }
}

/// Kernel value at one grid point; `k = 0` when the run used a fixed `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub point: usize,
    pub x: f64,
    pub y: f64,
    pub k: u32,
    pub t: f64,
    pub value: f64,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn write_rows<T: Serialize>(
    path: &Path,
    format: OutputFormat,
    header: &[&str],
    rows: &[T],
) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    match format {
        OutputFormat::Csv => {
            // header written explicitly so an empty run still has one
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(file);
            w.write_record(header).map_err(|e| io_err(path, e))?;
            for row in rows {
                w.serialize(row).map_err(|e| io_err(path, e))?;
            }
            w.flush().map_err(|e| io_err(path, e))?;
        }
        OutputFormat::Json => {
            let mut w = BufWriter::new(file);
            serde_json::to_writer_pretty(&mut w, rows).map_err(|e| io_err(path, e))?;
            w.write_all(b"\n").map_err(|e| io_err(path, e))?;
            w.flush().map_err(|e| io_err(path, e))?;
        }
    }
    Ok(())
}

pub fn read_rows<T: DeserializeOwned>(path: &Path, format: OutputFormat) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    match format {
        OutputFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .collect::<std::result::Result<Vec<T>, _>>()
            .map_err(|e| io_err(path, e)),
        OutputFormat::Json => {
            serde_json::from_reader(BufReader::new(file)).map_err(|e| io_err(path, e))
        }
    }
}

pub fn write_results(path: &Path, format: OutputFormat, rows: &[ResultRow]) -> Result<()> {
    write_rows(path, format, &RESULT_HEADER, rows)
}

pub fn read_results(path: &Path, format: OutputFormat) -> Result<Vec<ResultRow>> {
    read_rows(path, format)
}

pub fn write_sweep(path: &Path, format: OutputFormat, rows: &[SweepRow]) -> Result<()> {
    write_rows(path, format, &SWEEP_HEADER, rows)
}

pub fn read_sweep(path: &Path, format: OutputFormat) -> Result<Vec<SweepRow>> {
    read_rows(path, format)
}
