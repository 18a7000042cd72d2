//! Experiment grids: which variants to run on which problem sizes, seeded
//! trial execution across worker threads, per-cell statistics and reports.

mod config;
mod report;
mod svg;

use std::fmt;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{run, AlgorithmConfig, AlgorithmKind};
use crate::error::{Error, Result};
use crate::hypervolume::ReferencePoint;
use crate::problems::{Problem, ProblemKind};
use crate::variation::{derive_seed, label_hash};

pub use report::{
    emit_report, write_json, write_runs_csv, write_summary_csv, ReportFormat, RUNS_CSV_HEADER,
    SUMMARY_CSV_HEADER,
};
pub use svg::{render_svg, svg_panel};

/// How a variant's population size depends on the problem size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuRule {
    /// The same μ for every n.
    Const(usize),
    /// μ = k·(n+1).
    PerFront(usize),
}

impl MuRule {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Self::Const(k) => k,
            Self::PerFront(k) => k.saturating_mul(n.saturating_add(1)),
        }
    }
}

impl fmt::Display for MuRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Const(k) => write!(f, "{k}"),
            Self::PerFront(1) => f.write_str("n+1"),
            Self::PerFront(k) => write!(f, "{k}(n+1)"),
        }
    }
}

impl FromStr for MuRule {
    type Err = Error;

    /// Accepts `4`, `n+1` and `k(n+1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || {
            Error::Parse(format!(
                "population rule {s:?} (expected an integer, n+1 or k(n+1))"
            ))
        };
        let positive = |d: &str| match d.parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(bad()),
        };
        if t == "n+1" {
            Ok(Self::PerFront(1))
        } else if let Some(k) = t.strip_suffix("(n+1)") {
            positive(k.strip_suffix('*').unwrap_or(k)).map(Self::PerFront)
        } else {
            positive(&t).map(Self::Const)
        }
    }
}

impl Serialize for MuRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MuRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => format!("{k}").parse(),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// One line of the study: an algorithm, the archive switch and a μ rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    pub algorithm: AlgorithmKind,
    pub archive: bool,
    pub mu: MuRule,
}

impl Variant {
    pub const fn new(algorithm: AlgorithmKind, archive: bool, mu: MuRule) -> Self {
        Self {
            algorithm,
            archive,
            mu,
        }
    }

    /// Stable name, also the variant's seed-stream label.
    pub fn label(&self) -> String {
        let arch = if self.archive { "+archive" } else { "" };
        format!("{}{arch} mu={}", self.algorithm, self.mu)
    }
}

/// Evaluation cap per problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxEvals {
    pub omm: u64,
    pub lotz: u64,
}

impl MaxEvals {
    pub fn for_problem(&self, kind: ProblemKind) -> u64 {
        match kind {
            ProblemKind::OneMinMax => self.omm,
            ProblemKind::LeadingOnesTrailingZeroes => self.lotz,
        }
    }
}

/// Where results go. The summary CSV is written cell by cell while the
/// experiment runs; the other files are written once at the end.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub summary_csv: Option<PathBuf>,
    pub runs_csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl OutputPaths {
    /// The standard file names inside `dir`.
    pub fn in_dir(dir: &Path) -> Self {
        Self {
            summary_csv: Some(dir.join("summary.csv")),
            runs_csv: Some(dir.join("runs.csv")),
            json: Some(dir.join("results.json")),
            svg: Some(dir.join("scaling.svg")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemKind>,
    pub n_values: Vec<usize>,
    pub variants: Vec<Variant>,
    /// Repetitions per cell.
    pub runs: usize,
    pub base_seed: u64,
    pub max_evals: MaxEvals,
    /// Worker threads.
    pub workers: usize,
    /// Crossover probability; mutation stays at 1/n.
    pub pc: f64,
    pub reference_point: ReferencePoint,
    pub output: OutputPaths,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        default_experiment()
    }
}

/// Upper bound on problem and population sizes accepted in a grid.
pub const MAX_SIZE: usize = 1_000_000;

pub const DEFAULT_BASE_SEED: u64 = 20_240_101;

/// Both problems, n = 10..=50 in steps of 10, 1000 runs per cell and the
/// eight variants: the two archive variants and three population sizes for
/// each algorithm without an archive.
pub fn default_experiment() -> ExperimentConfig {
    use AlgorithmKind::{Nsga2, SmsEmoa};
    use MuRule::{Const, PerFront};
    let mut variants = vec![
        Variant::new(Nsga2, true, Const(4)),
        Variant::new(SmsEmoa, true, Const(2)),
    ];
    for algorithm in [Nsga2, SmsEmoa] {
        for k in [1, 2, 4] {
            variants.push(Variant::new(algorithm, false, PerFront(k)));
        }
    }
    ExperimentConfig {
        problems: vec![
            ProblemKind::OneMinMax,
            ProblemKind::LeadingOnesTrailingZeroes,
        ],
        n_values: vec![10, 20, 30, 40, 50],
        variants,
        runs: 1000,
        base_seed: DEFAULT_BASE_SEED,
        max_evals: MaxEvals {
            omm: 50_000,
            lotz: 200_000,
        },
        workers: std::thread::available_parallelism().map_or(1, |w| w.get()),
        pc: 0.9,
        reference_point: ReferencePoint::default(),
        output: OutputPaths::default(),
    }
}

/// One (problem, variant, n) combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub problem: ProblemKind,
    pub variant: Variant,
    pub n: usize,
}

impl Cell {
    pub fn mu(&self) -> usize {
        self.variant.mu.resolve(self.n)
    }

    /// Seed of run `run` in this cell under `base_seed`.
    pub fn seed(&self, base_seed: u64, run: usize) -> u64 {
        derive_seed(
            base_seed,
            &[
                label_hash(self.problem.short_name()),
                label_hash(&self.variant.label()),
                self.n as u64,
                run as u64,
            ],
        )
    }

    fn algorithm_config(&self, cfg: &ExperimentConfig) -> AlgorithmConfig {
        let mut a = AlgorithmConfig::new(
            self.variant.algorithm,
            self.mu(),
            self.variant.archive,
            self.n,
        );
        a.params.pc = cfg.pc;
        a.reference = cfg.reference_point;
        a
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub evaluations_at_success: Option<u64>,
    /// Total evaluations, including any overshoot past the cap within the
    /// last generation.
    pub evaluations: u64,
    /// Informational only.
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub problem: ProblemKind,
    pub variant: Variant,
    pub mu: usize,
    pub n: usize,
    pub runs: usize,
    pub max_evals: u64,
    pub base_seed: u64,
    pub successes: usize,
    pub capped: usize,
    /// Mean evaluations over successful runs.
    pub mean_evals: Option<f64>,
    /// Mean with every capped run counted at the cap.
    pub censored_mean_evals: Option<f64>,
    /// Sample standard deviation over successful runs.
    pub std_evals: Option<f64>,
    pub records: Vec<RunRecord>,
}

impl CellResult {
    fn from_records(cell: &Cell, cfg: &ExperimentConfig, records: Vec<RunRecord>) -> Self {
        let cap = cfg.max_evals.for_problem(cell.problem);
        let hits: Vec<f64> = records
            .iter()
            .filter_map(|r| r.evaluations_at_success.map(|e| e as f64))
            .collect();
        let successes = hits.len();
        let runs = records.len();
        let mean = (successes > 0).then(|| hits.iter().sum::<f64>() / successes as f64);
        let std = mean.filter(|_| successes > 1).map(|m| {
            let ss: f64 = hits.iter().map(|e| (e - m) * (e - m)).sum();
            (ss / (successes - 1) as f64).sqrt()
        });
        let censored = (runs > 0).then(|| {
            let total: f64 = records
                .iter()
                .map(|r| r.evaluations_at_success.unwrap_or(cap) as f64)
                .sum();
            total / runs as f64
        });
        Self {
            problem: cell.problem,
            variant: cell.variant,
            mu: cell.mu(),
            n: cell.n,
            runs,
            max_evals: cap,
            base_seed: cfg.base_seed,
            successes,
            capped: runs - successes,
            mean_evals: mean,
            censored_mean_evals: censored,
            std_evals: std,
            records,
        }
    }

    pub fn success_rate(&self) -> f64 {
        if self.runs == 0 {
            0.0
        } else {
            self.successes as f64 / self.runs as f64
        }
    }
}

impl ExperimentConfig {
    /// Cells in output order: problem, then variant, then n.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out =
            Vec::with_capacity(self.problems.len() * self.variants.len() * self.n_values.len());
        for &problem in &self.problems {
            for &variant in &self.variants {
                for &n in &self.n_values {
                    out.push(Cell {
                        problem,
                        variant,
                        n,
                    });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.problems.is_empty() {
            return fail("no problems listed".into());
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return fail("n_values must be a non-empty list of positive sizes".into());
        }
        if self.variants.is_empty() {
            return fail("no variants listed".into());
        }
        if self.workers == 0 {
            return fail("workers must be at least 1".into());
        }
        if self.max_evals.omm == 0 || self.max_evals.lotz == 0 {
            return fail("evaluation caps must be positive".into());
        }
        if let Some(n) = self.n_values.iter().find(|&&n| n > MAX_SIZE) {
            return fail(format!("problem size {n} exceeds {MAX_SIZE}"));
        }
        for cell in self.cells() {
            Problem::new(cell.problem, cell.n)?;
            if cell.mu() > MAX_SIZE {
                return fail(format!(
                    "population size {} at n={} exceeds {MAX_SIZE}",
                    cell.mu(),
                    cell.n
                ));
            }
            let a = cell.algorithm_config(self);
            a.validate().map_err(|e| {
                Error::Config(format!(
                    "variant {} at n={}: {e}",
                    cell.variant.label(),
                    cell.n
                ))
            })?;
            if a.kind == AlgorithmKind::SmsEmoa && (a.reference.r1 >= 0 || a.reference.r2 >= 0) {
                return fail(format!(
                    "reference point ({}) must be strictly negative",
                    a.reference
                ));
            }
        }
        Ok(())
    }
}

fn run_cell(cell: &Cell, cfg: &ExperimentConfig) -> Result<CellResult> {
    let problem = Problem::new(cell.problem, cell.n)?;
    let algo = cell.algorithm_config(cfg);
    let cap = cfg.max_evals.for_problem(cell.problem);
    let records = (0..cfg.runs)
        .into_par_iter()
        .map(|i| {
            let seed = cell.seed(cfg.base_seed, i);
            let start = Instant::now();
            let out = run(&algo, &problem, seed, cap)?;
            Ok(RunRecord {
                run: i,
                seed,
                evaluations_at_success: out.evaluations_at_success,
                evaluations: out.evaluations,
                wall_time_s: start.elapsed().as_secs_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellResult::from_records(cell, cfg, records))
}

/// Runs every cell of the grid with seeds derived from
/// `(base_seed, problem, variant, n, run)`, so results do not depend on the
/// worker count or scheduling.
///
/// When `cfg.output.summary_csv` is set, the file is created before the
/// first run and each cell's row is appended as soon as the cell finishes.
/// `on_cell` sees every finished cell in output order.
pub fn run_experiment_with(
    cfg: &ExperimentConfig,
    mut on_cell: impl FnMut(&CellResult),
) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let mut summary = match &cfg.output.summary_csv {
        Some(path) => {
            let mut w = csv::Writer::from_writer(File::create(path)?);
            report::write_summary_header(&mut w)?;
            w.flush()?;
            Some(w)
        }
        None => None,
    };
    // Fail on unwritable paths before spending any evaluations.
    for path in [&cfg.output.runs_csv, &cfg.output.json, &cfg.output.svg]
        .into_iter()
        .flatten()
    {
        File::create(path)?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?;

    let mut results = Vec::new();
    for cell in cfg.cells() {
        let res = pool.install(|| run_cell(&cell, cfg))?;
        if let Some(w) = summary.as_mut() {
            report::write_summary_row(w, &res)?;
            w.flush()?;
        }
        on_cell(&res);
        results.push(res);
    }

    if let Some(path) = &cfg.output.runs_csv {
        write_runs_csv(&results, File::create(path)?)?;
    }
    if let Some(path) = &cfg.output.json {
        write_json(&results, cfg, File::create(path)?)?;
    }
    if let Some(path) = &cfg.output.svg {
        if !results.is_empty() && cfg.runs > 0 {
            std::fs::write(path, render_svg(&results)?)?;
        }
    }
    Ok(results)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CellResult>> {
    run_experiment_with(cfg, |_| {})
}
