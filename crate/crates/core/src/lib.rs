//! Multi-objective evolutionary optimization on pseudo-Boolean benchmarks.
//!
//! The crate provides NSGA-II and SMS-EMOA, each optionally coupled with an
//! unbounded archive of non-dominated solutions, the OneMinMax and
//! LeadingOnesTrailingZeroes problems, and an experiment harness that measures
//! how many fitness evaluations each variant needs to cover the Pareto front.
//!
//! ```
//! use moea_archive::{run, AlgorithmConfig, AlgorithmKind, Problem, ProblemKind};
//!
//! let problem = Problem::new(ProblemKind::OneMinMax, 10).unwrap();
//! let cfg = AlgorithmConfig::new(AlgorithmKind::Nsga2, 4, true, 10);
//! let outcome = run(&cfg, &problem, 7, 50_000).unwrap();
//! assert!(outcome.evaluations_at_success.is_some());
//! ```

pub mod algorithms;
pub mod archive;
pub mod bitstring;
pub mod error;
pub mod harness;
pub mod hypervolume;
pub mod objective;
pub mod problems;
pub mod ranking;
pub mod variation;

pub use algorithms::{run, AlgorithmConfig, AlgorithmKind, RunOutcome};
pub use archive::{Archive, InsertOutcome};
pub use bitstring::Bitstring;
pub use error::{Error, Result};
pub use hypervolume::ReferencePoint;
pub use objective::{
    covers_front, dominates, incomparable, weakly_dominates, Individual, ObjectiveVector,
    ParetoFrontSpec, Population,
};
pub use problems::{EvaluationCounter, Problem, ProblemKind};
pub use variation::{RandomSource, VariationParams};
