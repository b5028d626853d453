//! Region scan over `(θ₁, θ₂, Δφ)`.
//!
//! The scan samples cell centres of a `resolution³` grid over
//! `[0, π] × [0, π] × [0, 2π)` and records S, C and regime at each point, in
//! row-major order with θ₁ outermost and Δφ innermost. Only Δφ is stored
//! since neither S nor C depends on the individual phases.
//!
//! Output is CSV (`theta1,theta2,delta_phi,s,c,regime`) or a JSON array of
//! objects with the same keys. Every number is rounded to 12 significant
//! digits before it is classified and written, so a record is consistent
//! with itself after a round trip.

use std::f64::consts::{PI, TAU};
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classification::{classify_s, Regime};
use crate::error::Error;
use crate::measures::{concurrence_msr, s_closed_form};
use crate::msr::MsrPair;

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    /// Cells per axis.
    pub resolution: usize,
    pub format: OutputFormat,
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub theta1: f64,
    pub theta2: f64,
    pub delta_phi: f64,
    pub s: f64,
    pub c: f64,
    pub regime: Regime,
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant decimal digits.
pub fn round_significant(x: f64) -> f64 {
    format!("{x:.*e}", SIGNIFICANT_DIGITS - 1)
        .parse()
        .expect("formatted float parses")
}

fn cell_centre(index: usize, cells: usize, span: f64) -> f64 {
    (index as f64 + 0.5) * span / cells as f64
}

fn record_at(theta1: f64, theta2: f64, delta_phi: f64) -> ScanRecord {
    let pair = MsrPair::from_delta_phi(theta1, theta2, delta_phi)
        .expect("cell centres lie inside [0, π]");
    let s = round_significant(s_closed_form(&pair).value());
    ScanRecord {
        theta1: round_significant(theta1),
        theta2: round_significant(theta2),
        delta_phi: round_significant(delta_phi),
        s,
        c: round_significant(concurrence_msr(&pair).value()),
        regime: classify_s(s).expect("S of a physical state lies in the KCBS spectrum"),
    }
}

/// All `resolution³` records in output order. Cells are evaluated in
/// parallel; ordering does not depend on scheduling.
pub fn scan_grid(resolution: usize) -> Result<Vec<ScanRecord>, Error> {
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let n = resolution;
    Ok((0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (n * n), idx / n % n, idx % n);
            record_at(
                cell_centre(i, n, PI),
                cell_centre(j, n, PI),
                cell_centre(k, n, TAU),
            )
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub contextual_nonlocal: usize,
    pub nonlocal_noncontextual: usize,
    pub local: usize,
}

impl ScanSummary {
    pub fn count(&self, regime: Regime) -> usize {
        match regime {
            Regime::ContextualNonlocal => self.contextual_nonlocal,
            Regime::NonlocalNoncontextual => self.nonlocal_noncontextual,
            Regime::Local => self.local,
        }
    }

    pub fn contextual_fraction(&self) -> f64 {
        self.contextual_nonlocal as f64 / self.total as f64
    }
}

pub fn summarize(records: &[ScanRecord]) -> ScanSummary {
    records.iter().fold(ScanSummary::default(), |mut acc, r| {
        acc.total += 1;
        match r.regime {
            Regime::ContextualNonlocal => acc.contextual_nonlocal += 1,
            Regime::NonlocalNoncontextual => acc.nonlocal_noncontextual += 1,
            Regime::Local => acc.local += 1,
        }
        acc
    })
}

/// First record with the smallest S.
pub fn grid_minimum(records: &[ScanRecord]) -> Option<&ScanRecord> {
    records
        .iter()
        .reduce(|best, r| if r.s < best.s { r } else { best })
}

pub fn write_records<W: Write>(
    records: &[ScanRecord],
    format: OutputFormat,
    writer: W,
) -> Result<(), ScanError> {
    match format {
        OutputFormat::Csv => {
            let mut wtr = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(writer);
            for r in records {
                wtr.serialize(r)?;
            }
            wtr.flush()?;
        }
        OutputFormat::Json => {
            let mut writer = writer;
            serde_json::to_writer_pretty(&mut writer, records)?;
            writer.write_all(b"\n")?;
            writer.flush()?;
        }
    }
    Ok(())
}

pub fn read_records<R: Read>(format: OutputFormat, reader: R) -> Result<Vec<ScanRecord>, ScanError> {
    match format {
        OutputFormat::Csv => Ok(csv::Reader::from_reader(reader)
            .deserialize()
            .collect::<Result<_, _>>()?),
        OutputFormat::Json => Ok(serde_json::from_reader(reader)?),
    }
}

/// Runs the scan and writes it to `config.output`.
pub fn run_scan(config: &ScanConfig) -> Result<ScanSummary, ScanError> {
    let records = scan_grid(config.resolution)?;
    let file = File::create(&config.output)?;
    write_records(&records, config.format, BufWriter::new(file))?;
    Ok(summarize(&records))
}
