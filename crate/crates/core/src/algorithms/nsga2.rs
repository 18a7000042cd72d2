use rand::Rng;

use super::{evaluate_into, AlgorithmConfig, RunObserver, Silent};
use crate::archive::Archive;
use crate::error::Result;
use crate::objective::Population;
use crate::problems::{EvaluationCounter, Problem};
use crate::ranking::{nsga2_survival, ranked_view};
use crate::variation::{
    binary_tournament, bitwise_mutation, one_point_crossover_pair, RandomSource,
};

/// One NSGA-II generation: μ offspring from tournament-selected pairs, then
/// survival over parents and offspring.
///
/// Ranks and crowding distances for selection come from `state` alone. With
/// an odd μ the last pair contributes only its first child. When an archive
/// is given, every offspring is offered to it before survival.
pub fn nsga2_generation(
    state: Population,
    cfg: &AlgorithmConfig,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
    archive: Option<&mut Archive>,
) -> Result<Population> {
    generation(state, cfg, problem, rng, counter, archive, &mut Silent)
}

pub(super) fn generation<O: RunObserver + ?Sized>(
    state: Population,
    cfg: &AlgorithmConfig,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
    archive: Option<&mut Archive>,
    observer: &mut O,
) -> Result<Population> {
    let mu = cfg.mu;
    debug_assert_eq!(state.len(), mu);
    let view = ranked_view(&state);
    let mut offspring = Population::with_capacity(mu);
    while offspring.len() < mu {
        let x = binary_tournament(&state, &view, rng);
        let y = binary_tournament(&state, &view, rng);
        let u: f64 = rng.random();
        let (x1, y1) = if u < cfg.params.pc {
            one_point_crossover_pair(&x.genotype, &y.genotype, rng)?
        } else {
            (x.genotype.clone(), y.genotype.clone())
        };
        let x2 = bitwise_mutation(&x1, cfg.params.pm, rng)?;
        offspring.push(evaluate_into(x2, problem, counter, observer)?);
        if offspring.len() < mu {
            let y2 = bitwise_mutation(&y1, cfg.params.pm, rng)?;
            offspring.push(evaluate_into(y2, problem, counter, observer)?);
        }
    }
    if let Some(a) = archive {
        for child in &offspring {
            a.try_insert(child.clone());
        }
    }
    let mut pool = state;
    pool.extend(offspring);
    nsga2_survival(&pool, mu)
}
