//! CSV and JSON output for experiment results.

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::{CellResult, ExperimentConfig};
use crate::error::{Error, Result};
use crate::hypervolume::ReferencePoint;
use crate::variation::GENERATOR_ID;

pub const SUMMARY_CSV_HEADER: [&str; 13] = [
    "problem",
    "algorithm",
    "archive",
    "mu_rule",
    "mu",
    "n",
    "runs",
    "successes",
    "capped",
    "mean_evals",
    "censored_mean_evals",
    "std_evals",
    "base_seed",
];

pub const RUNS_CSV_HEADER: [&str; 12] = [
    "problem",
    "algorithm",
    "archive",
    "mu_rule",
    "mu",
    "n",
    "run",
    "seed",
    "success",
    "evaluations_at_success",
    "evaluations",
    "wall_time_s",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Csv,
    Json,
    Svg,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            _ => Err(Error::Parse(format!(
                "unknown report format {s:?} (expected csv, json or svg)"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
            Self::Svg => "svg",
        })
    }
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.3}")).unwrap_or_default()
}

pub(super) fn write_summary_header<W: Write>(w: &mut csv::Writer<W>) -> Result<()> {
    w.write_record(SUMMARY_CSV_HEADER).map_err(csv_err)
}

pub(super) fn write_summary_row<W: Write>(w: &mut csv::Writer<W>, c: &CellResult) -> Result<()> {
    w.write_record([
        c.problem.short_name().to_string(),
        c.variant.algorithm.short_name().to_string(),
        on_off(c.variant.archive).to_string(),
        c.variant.mu.to_string(),
        c.mu.to_string(),
        c.n.to_string(),
        c.runs.to_string(),
        c.successes.to_string(),
        c.capped.to_string(),
        num(c.mean_evals),
        num(c.censored_mean_evals),
        num(c.std_evals),
        c.base_seed.to_string(),
    ])
    .map_err(csv_err)
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidInput(format!("csv: {other:?}")),
    }
}

/// One row per cell, deterministic for a given grid and base seed.
pub fn write_summary_csv<W: Write>(results: &[CellResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    write_summary_header(&mut w)?;
    for c in results {
        write_summary_row(&mut w, c)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per run. Includes wall time, so it is not byte-reproducible.
pub fn write_runs_csv<W: Write>(results: &[CellResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUNS_CSV_HEADER).map_err(csv_err)?;
    for c in results {
        for r in &c.records {
            w.write_record([
                c.problem.short_name().to_string(),
                c.variant.algorithm.short_name().to_string(),
                on_off(c.variant.archive).to_string(),
                c.variant.mu.to_string(),
                c.mu.to_string(),
                c.n.to_string(),
                r.run.to_string(),
                r.seed.to_string(),
                r.evaluations_at_success.is_some().to_string(),
                r.evaluations_at_success
                    .map(|e| e.to_string())
                    .unwrap_or_default(),
                r.evaluations.to_string(),
                format!("{:.6}", r.wall_time_s),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    generator: &'a str,
    reference_point: ReferencePoint,
    pc: f64,
    mutation: &'static str,
    base_seed: u64,
    runs: usize,
    cells: &'a [CellResult],
}

/// Results with the metadata needed to reproduce them.
pub fn write_json<W: Write>(results: &[CellResult], cfg: &ExperimentConfig, out: W) -> Result<()> {
    let report = JsonReport {
        generator: GENERATOR_ID,
        reference_point: cfg.reference_point,
        pc: cfg.pc,
        mutation: "1/n",
        base_seed: cfg.base_seed,
        runs: cfg.runs,
        cells: results,
    };
    serde_json::to_writer_pretty(out, &report)?;
    Ok(())
}

/// Writes `results` to `path` in `format`.
pub fn emit_report(
    results: &[CellResult],
    cfg: &ExperimentConfig,
    format: ReportFormat,
    path: &Path,
) -> Result<()> {
    match format {
        ReportFormat::Csv => write_summary_csv(results, File::create(path)?),
        ReportFormat::Json => write_json(results, cfg, File::create(path)?),
        ReportFormat::Svg => {
            let svg = super::render_svg(results)?;
            std::fs::write(path, svg)?;
            Ok(())
        }
    }
}
