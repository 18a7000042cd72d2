//! Brute-force oracles shared by the integration tests. They are written
//! directly from the definitions and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use moea_archive::algorithms::RunObserver;
use moea_archive::{Archive, Individual, ObjectiveVector};

pub fn v(f1: i64, f2: i64) -> ObjectiveVector {
    ObjectiveVector::new(f1, f2)
}

fn dom(a: ObjectiveVector, b: ObjectiveVector) -> bool {
    a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 > b.f1 || a.f2 > b.f2)
}

/// Fronts by repeatedly removing the non-dominated subset; indices ascending.
pub fn peel(points: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| dom(points[j], points[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Counts unit lattice cells above `r` covered by some point's box.
pub fn lattice_hv(points: &[ObjectiveVector], r: (i64, i64)) -> i128 {
    let (Some(x_hi), Some(y_hi)) = (
        points.iter().map(|p| p.f1).max(),
        points.iter().map(|p| p.f2).max(),
    ) else {
        return 0;
    };
    let mut cells = 0;
    for a in r.0..x_hi {
        for b in r.1..y_hi {
            if points.iter().any(|p| p.f1 > a && p.f2 > b) {
                cells += 1;
            }
        }
    }
    cells
}

/// Distinct vectors of `history` not strictly dominated by any other entry.
pub fn nondominated_filter(history: &[ObjectiveVector]) -> BTreeSet<ObjectiveVector> {
    history
        .iter()
        .copied()
        .filter(|&x| !history.iter().any(|&y| dom(y, x)))
        .collect()
}

/// Records every evaluation and the population after every step.
#[derive(Default)]
pub struct Recorder {
    pub history: Vec<ObjectiveVector>,
    pub populations: Vec<Vec<ObjectiveVector>>,
    pub archive_sizes: Vec<usize>,
    pub archive_snapshots: Vec<Vec<ObjectiveVector>>,
    pub keep_snapshots: bool,
}

impl RunObserver for Recorder {
    fn evaluated(&mut self, x: &Individual) {
        self.history.push(x.objectives);
    }

    fn population(&mut self, _generation: u64, pop: &[Individual], archive: Option<&Archive>) {
        self.populations
            .push(pop.iter().map(|x| x.objectives).collect());
        if let Some(a) = archive {
            self.archive_sizes.push(a.len());
            if self.keep_snapshots {
                self.archive_snapshots.push(a.objective_set());
            }
        }
    }
}
