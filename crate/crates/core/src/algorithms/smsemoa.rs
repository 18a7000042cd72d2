use rand::Rng;

use super::{evaluate_into, AlgorithmConfig, RunObserver, Silent};
use crate::archive::Archive;
use crate::error::Result;
use crate::hypervolume::smsemoa_removal_index;
use crate::objective::Population;
use crate::problems::{EvaluationCounter, Problem};
use crate::ranking::non_dominated_sort;
use crate::variation::{
    bitwise_mutation, one_point_crossover_single, uniform_select, RandomSource,
};

/// One SMS-EMOA step: a single offspring joins the population and one member
/// of the worst front is discarded.
pub fn smsemoa_step(
    state: Population,
    cfg: &AlgorithmConfig,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
    archive: Option<&mut Archive>,
) -> Result<Population> {
    step(state, cfg, problem, rng, counter, archive, &mut Silent)
}

pub(super) fn step<O: RunObserver + ?Sized>(
    state: Population,
    cfg: &AlgorithmConfig,
    problem: &Problem,
    rng: &mut RandomSource,
    counter: &mut EvaluationCounter,
    archive: Option<&mut Archive>,
    observer: &mut O,
) -> Result<Population> {
    debug_assert_eq!(state.len(), cfg.mu);
    let x = uniform_select(&state, rng);
    let u: f64 = rng.random();
    let child = if u < cfg.params.pc {
        let y = uniform_select(&state, rng);
        one_point_crossover_single(&x.genotype, &y.genotype, rng)?
    } else {
        x.genotype.clone()
    };
    let child = bitwise_mutation(&child, cfg.params.pm, rng)?;
    let child = evaluate_into(child, problem, counter, observer)?;
    if let Some(a) = archive {
        a.try_insert(child.clone());
    }
    let mut pool = state;
    pool.push(child);
    let partition = non_dominated_sort(&pool);
    let victim = smsemoa_removal_index(&pool, &partition, cfg.reference, rng)?;
    pool.remove(victim);
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{init_population, AlgorithmKind};
    use crate::objective::ObjectiveVector;
    use crate::problems::ProblemKind;

    fn setup(
        kind: ProblemKind,
        n: usize,
        mu: usize,
        seed: u64,
    ) -> (
        Problem,
        AlgorithmConfig,
        RandomSource,
        EvaluationCounter,
        Population,
    ) {
        let p = Problem::new(kind, n).unwrap();
        let cfg = AlgorithmConfig::new(AlgorithmKind::SmsEmoa, mu, false, n);
        let mut rng = RandomSource::new(seed);
        let mut c = EvaluationCounter::new();
        let pop = init_population(mu, &p, &mut rng, &mut c).unwrap();
        (p, cfg, rng, c, pop)
    }

    #[test]
    fn counter_advances_by_one() {
        let (p, cfg, mut rng, mut c, mut pop) = setup(ProblemKind::OneMinMax, 10, 3, 1);
        for s in 1..=50u64 {
            pop = smsemoa_step(pop, &cfg, &p, &mut rng, &mut c, None).unwrap();
            assert_eq!(pop.len(), 3);
            assert_eq!(c.count(), 3 + s);
        }
    }

    #[test]
    fn copying_step_keeps_vectors() {
        let sorted = |pop: &Population| {
            let mut v: Vec<ObjectiveVector> = pop.iter().map(|x| x.objectives).collect();
            v.sort();
            v
        };
        // Distinct vectors: the copy and its original tie at zero contribution,
        // so the multiset comes back unchanged.
        let (p, mut cfg, mut rng, mut c, _) = setup(ProblemKind::OneMinMax, 8, 5, 2);
        cfg.params.pc = 0.0;
        cfg.params.pm = 0.0;
        let mut pop: Population = [0, 2, 3, 5, 8]
            .iter()
            .map(|&a| {
                let x = crate::bitstring::Bitstring::leading_block(8, a).unwrap();
                let f = p.objectives_unmetered(&x);
                crate::objective::Individual::new(x, f)
            })
            .collect();
        let before = sorted(&pop);
        for _ in 0..20 {
            pop = smsemoa_step(pop, &cfg, &p, &mut rng, &mut c, None).unwrap();
            assert_eq!(sorted(&pop), before);
        }
        // With duplicates present only the set of vectors is guaranteed.
        let (p, mut cfg, mut rng, mut c, mut pop) = setup(ProblemKind::OneMinMax, 8, 5, 2);
        cfg.params.pc = 0.0;
        cfg.params.pm = 0.0;
        let mut set = sorted(&pop);
        set.dedup();
        for _ in 0..20 {
            pop = smsemoa_step(pop, &cfg, &p, &mut rng, &mut c, None).unwrap();
            let mut now = sorted(&pop);
            now.dedup();
            assert_eq!(now, set);
        }
    }

    #[test]
    fn boundary_vectors_persist() {
        for kind in [
            ProblemKind::OneMinMax,
            ProblemKind::LeadingOnesTrailingZeroes,
        ] {
            for seed in 0..10 {
                let (p, cfg, mut rng, mut c, mut pop) = setup(kind, 12, 2, seed);
                let mut best = (0, 0);
                for _ in 0..1_000 {
                    pop = smsemoa_step(pop, &cfg, &p, &mut rng, &mut c, None).unwrap();
                    let f1 = pop.iter().map(|x| x.objectives.f1).max().unwrap();
                    let f2 = pop.iter().map(|x| x.objectives.f2).max().unwrap();
                    assert!(f1 >= best.0 && f2 >= best.1);
                    best = (f1, f2);
                }
            }
        }
    }
}
