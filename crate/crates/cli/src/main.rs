use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use moea_archive::harness::{
    default_experiment, emit_report, run_experiment_with, ExperimentConfig, OutputPaths,
    ReportFormat,
};
use moea_archive::variation::GENERATOR_ID;
use moea_archive::{run, AlgorithmConfig, AlgorithmKind, Problem, ProblemKind, ReferencePoint};

#[derive(Parser)]
#[command(
    name = "moea",
    version,
    about = "NSGA-II and SMS-EMOA with an optional archive on OneMinMax and LOTZ"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One seeded run; prints or writes a JSON outcome.
    Run(RunArgs),
    /// A grid of runs with summary statistics.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Omm,
    Lotz,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Nsga2,
    Smsemoa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunFormat {
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentFormat {
    Csv,
    Json,
    Svg,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "on")]
    archive: Switch,
    #[arg(long)]
    mu: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_evals: u64,
    #[arg(long, default_value_t = 0.9)]
    pc: f64,
    /// SMS-EMOA reference point as `r1,r2`.
    #[arg(long, default_value = "-1,-1", allow_hyphen_values = true)]
    reference_point: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: RunFormat,
}

#[derive(clap::Args)]
struct ExperimentArgs {
    /// TOML grid; the default grid when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Runs per cell [default: 1000, or the config file's value].
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    base_seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Report formats. The summary CSV is always written while the grid runs.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "csv,json,svg"
    )]
    format: Vec<ExperimentFormat>,
}

fn main() -> ExitCode {
    let res = match Cli::parse().command {
        Command::Run(a) => run_one(a),
        Command::Experiment(a) => experiment(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run_one(a: RunArgs) -> Result<()> {
    let kind = match a.problem {
        ProblemArg::Omm => ProblemKind::OneMinMax,
        ProblemArg::Lotz => ProblemKind::LeadingOnesTrailingZeroes,
    };
    let algo = match a.algo {
        AlgoArg::Nsga2 => AlgorithmKind::Nsga2,
        AlgoArg::Smsemoa => AlgorithmKind::SmsEmoa,
    };
    let RunFormat::Json = a.format;
    let problem = Problem::new(kind, a.n)?;
    let mut cfg = AlgorithmConfig::new(algo, a.mu, a.archive == Switch::On, a.n);
    cfg.params.pc = a.pc;
    cfg.reference = a.reference_point.parse::<ReferencePoint>()?;
    let outcome = run(&cfg, &problem, a.seed, a.max_evals)?;

    let doc = serde_json::json!({
        "generator": GENERATOR_ID,
        "problem": kind,
        "n": a.n,
        "config": cfg,
        "seed": a.seed,
        "max_evals": a.max_evals,
        "outcome": outcome,
    });
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match a.out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let mut cfg = match &a.config {
        Some(p) => ExperimentConfig::from_toml_file(p)
            .with_context(|| format!("loading {}", p.display()))?,
        None => default_experiment(),
    };
    if let Some(r) = a.runs {
        cfg.runs = r;
    }
    if let Some(s) = a.base_seed {
        cfg.base_seed = s;
    }
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    if a.format.is_empty() {
        bail!("no output format selected");
    }
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let all = OutputPaths::in_dir(&a.out_dir);
    cfg.output = OutputPaths {
        summary_csv: all.summary_csv,
        runs_csv: a
            .format
            .contains(&ExperimentFormat::Csv)
            .then_some(all.runs_csv)
            .flatten(),
        json: None,
        svg: None,
    };

    let total = cfg.cells().len();
    let mut done = 0;
    let results = run_experiment_with(&cfg, |c| {
        done += 1;
        eprintln!(
            "[{done}/{total}] {} {} n={}: {}/{} covered, mean {}",
            c.problem.short_name(),
            c.variant.label(),
            c.n,
            c.successes,
            c.runs,
            c.mean_evals.map_or("-".into(), |m| format!("{m:.1}")),
        );
    })?;

    if a.format.contains(&ExperimentFormat::Json) {
        emit_report(
            &results,
            &cfg,
            ReportFormat::Json,
            &a.out_dir.join("results.json"),
        )?;
    }
    if a.format.contains(&ExperimentFormat::Svg) {
        if cfg.runs == 0 {
            eprintln!("no runs, skipping the plot");
        } else {
            emit_report(
                &results,
                &cfg,
                ReportFormat::Svg,
                &a.out_dir.join("scaling.svg"),
            )?;
        }
    }
    eprintln!("wrote results to {}", a.out_dir.display());
    Ok(())
}
