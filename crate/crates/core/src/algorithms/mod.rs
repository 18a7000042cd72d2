//! NSGA-II and SMS-EMOA run loops, with or without an archive.

mod nsga2;
mod smsemoa;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archive::Archive;
use crate::bitstring::Bitstring;
use crate::error::{Error, Result};
use crate::hypervolume::ReferencePoint;
use crate::objective::{covers_front, Individual, ParetoFrontSpec, Population};
use crate::problems::{EvaluationCounter, Problem};
use crate::variation::{RandomSource, VariationParams};

pub use nsga2::nsga2_generation;
pub use smsemoa::smsemoa_step;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmKind {
    #[serde(rename = "nsga2")]
    Nsga2,
    #[serde(rename = "smsemoa")]
    SmsEmoa,
}

impl AlgorithmKind {
    pub fn short_name(self) -> &'static str {
        match self {
            Self::Nsga2 => "nsga2",
            Self::SmsEmoa => "smsemoa",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nsga2" | "nsga-ii" => Ok(Self::Nsga2),
            "smsemoa" | "sms-emoa" => Ok(Self::SmsEmoa),
            _ => Err(Error::Parse(format!(
                "unknown algorithm {s:?} (expected nsga2 or smsemoa)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    pub mu: usize,
    pub use_archive: bool,
    pub params: VariationParams,
    /// Only used by SMS-EMOA.
    pub reference: ReferencePoint,
}

impl AlgorithmConfig {
    /// Default variation parameters for problem size `n` and reference point `(-1, -1)`.
    pub fn new(kind: AlgorithmKind, mu: usize, use_archive: bool, n: usize) -> Self {
        Self {
            kind,
            mu,
            use_archive,
            params: VariationParams::for_size(n),
            reference: ReferencePoint::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let min_mu = match self.kind {
            AlgorithmKind::Nsga2 => 4,
            AlgorithmKind::SmsEmoa => 2,
        };
        if self.mu < min_mu {
            return Err(Error::Config(format!(
                "{} needs a population of at least {min_mu}, got {}",
                self.kind, self.mu
            )));
        }
        Ok(())
    }

    fn validate_for(&self, problem: &Problem) -> Result<()> {
        self.validate()?;
        if self.kind == AlgorithmKind::SmsEmoa {
            let r = self.reference;
            if r.r1 >= 0 || r.r2 >= 0 {
                return Err(Error::Config(format!(
                    "reference point ({r}) must lie strictly below the objective minimum 0 of {}",
                    problem.kind()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOutcome {
    /// Evaluations spent when the front was first covered, if it was.
    pub evaluations_at_success: Option<u64>,
    pub hit_cap: bool,
    /// Total evaluations spent.
    pub evaluations: u64,
    /// Generations (NSGA-II) or steps (SMS-EMOA) after initialization.
    pub generations: u64,
    pub final_population: Population,
    pub final_archive: Option<Archive>,
}

/// Hooks for inspecting a run without changing it.
pub trait RunObserver {
    fn evaluated(&mut self, _x: &Individual) {}
    /// Called after initialization and after every generation or step.
    fn population(&mut self, _generation: u64, _pop: &[Individual], _archive: Option<&Archive>) {}
}

/// Observes nothing.
pub struct Silent;

impl RunObserver for Silent {}

pub(crate) fn evaluate_into<O: RunObserver + ?Sized>(
    genotype: Bitstring,
    problem: &Problem,
    counter: &mut EvaluationCounter,
    observer: &mut O,
) -> Result<Individual> {
    let objectives = problem.evaluate(&genotype, counter)?;
    let ind = Individual::new(genotype, objectives);
    observer.evaluated(&ind);
    Ok(ind)
}

/// `mu` uniformly random evaluated individuals, drawn with replacement.
pub fn init_population(
    mu: usize,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
) -> Result<Population> {
    init_population_observed(mu, problem, rng, counter, &mut Silent)
}

fn init_population_observed<O: RunObserver + ?Sized>(
    mu: usize,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
    observer: &mut O,
) -> Result<Population> {
    if mu == 0 {
        return Err(Error::Config("population size must be positive".into()));
    }
    (0..mu)
        .map(|_| {
            evaluate_into(
                Bitstring::random(problem.n(), rng)?,
                problem,
                counter,
                observer,
            )
        })
        .collect()
}

fn success_covered(front: &ParetoFrontSpec, pop: &[Individual], archive: Option<&Archive>) -> bool {
    match archive {
        Some(a) => a.len() >= front.len() && covers_front(a.members().map(|z| z.objectives), front),
        None => pop.len() >= front.len() && covers_front(pop.iter().map(|z| z.objectives), front),
    }
}

/// Runs until the success set covers the Pareto front or `max_evals`
/// evaluations have been spent.
///
/// The success set is the archive when one is used, the population
/// otherwise. Coverage is checked after initialization and after each
/// generation (NSGA-II) or step (SMS-EMOA); the μ initial evaluations count.
pub fn run(
    cfg: &AlgorithmConfig,
    problem: &Problem,
    seed: u64,
    max_evals: u64,
) -> Result<RunOutcome> {
    run_observed(cfg, problem, seed, max_evals, &mut Silent)
}

pub fn run_observed<O: RunObserver + ?Sized>(
    cfg: &AlgorithmConfig,
    problem: &Problem,
    seed: u64,
    max_evals: u64,
    observer: &mut O,
) -> Result<RunOutcome> {
    cfg.validate_for(problem)?;
    if max_evals == 0 {
        return Err(Error::Config("evaluation cap must be positive".into()));
    }
    let mut rng = RandomSource::new(seed);
    let mut counter = EvaluationCounter::new();
    let front = problem.pareto_front();

    let mut pop = init_population_observed(cfg.mu, problem, &mut rng, &mut counter, observer)?;
    let mut archive = cfg.use_archive.then(Archive::new);
    if let Some(a) = archive.as_mut() {
        for x in &pop {
            a.try_insert(x.clone());
        }
    }
    observer.population(0, &pop, archive.as_ref());

    let mut generations = 0;
    let mut success = success_covered(&front, &pop, archive.as_ref()).then(|| counter.count());
    while success.is_none() && counter.count() < max_evals {
        pop = match cfg.kind {
            AlgorithmKind::Nsga2 => nsga2::generation(
                pop,
                cfg,
                problem,
                &mut rng,
                &mut counter,
                archive.as_mut(),
                observer,
            )?,
            AlgorithmKind::SmsEmoa => smsemoa::step(
                pop,
                cfg,
                problem,
                &mut rng,
                &mut counter,
                archive.as_mut(),
                observer,
            )?,
        };
        generations += 1;
        observer.population(generations, &pop, archive.as_ref());
        if success_covered(&front, &pop, archive.as_ref()) {
            success = Some(counter.count());
        }
    }

    Ok(RunOutcome {
        evaluations_at_success: success,
        hit_cap: success.is_none(),
        evaluations: counter.count(),
        generations,
        final_population: pop,
        final_archive: archive,
    })
}
