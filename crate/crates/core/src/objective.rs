//! Objective vectors, the domination relations between them, and Pareto-front
//! coverage. All objectives are maximized.

use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;

/// A bi-objective integer point. Serializes as `[f1, f2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct ObjectiveVector {
    pub f1: i64,
    pub f2: i64,
}

impl ObjectiveVector {
    pub const fn new(f1: i64, f2: i64) -> Self {
        Self { f1, f2 }
    }
}

impl From<(i64, i64)> for ObjectiveVector {
    fn from((f1, f2): (i64, i64)) -> Self {
        Self { f1, f2 }
    }
}

impl From<ObjectiveVector> for (i64, i64) {
    fn from(v: ObjectiveVector) -> Self {
        (v.f1, v.f2)
    }
}

/// `a ⪰ b`: at least as good in both objectives.
pub fn weakly_dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool {
    a.f1 >= b.f1 && a.f2 >= b.f2
}

/// `a ≻ b`: weakly dominates and strictly better somewhere.
pub fn dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool {
    weakly_dominates(a, b) && a != b
}

pub fn incomparable(a: ObjectiveVector, b: ObjectiveVector) -> bool {
    !weakly_dominates(a, b) && !weakly_dominates(b, a)
}

/// An evaluated genotype. The objectives are computed once by the problem and
/// never recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub genotype: Bitstring,
    pub objectives: ObjectiveVector,
}

impl Individual {
    pub fn new(genotype: Bitstring, objectives: ObjectiveVector) -> Self {
        Self {
            genotype,
            objectives,
        }
    }
}

/// A multiset of individuals; duplicates are distinct members.
pub type Population = Vec<Individual>;

/// The objective vectors making up a problem's Pareto front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoFrontSpec {
    points: Vec<ObjectiveVector>,
}

impl ParetoFrontSpec {
    pub fn new(points: impl IntoIterator<Item = ObjectiveVector>) -> Self {
        let mut points: Vec<_> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        Self { points }
    }

    /// Sorted ascending by `f1`.
    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: ObjectiveVector) -> bool {
        self.points.binary_search(&v).is_ok()
    }
}

/// True iff every front point occurs among `points`.
pub fn covers_front<I>(points: I, front: &ParetoFrontSpec) -> bool
where
    I: IntoIterator<Item = ObjectiveVector>,
{
    let mut seen = vec![false; front.len()];
    let mut missing = front.len();
    for p in points {
        if missing == 0 {
            break;
        }
        if let Ok(k) = front.points.binary_search(&p) {
            if !seen[k] {
                seen[k] = true;
                missing -= 1;
            }
        }
    }
    missing == 0
}
