//! Non-dominated sorting and crowding distance for two objectives.

use std::cmp::Ordering;

use crate::error::{invalid, Result};
use crate::objective::{Individual, ObjectiveVector, Population};
use crate::variation::RankedView;

/// Fronts `R₁, …, R_v` as index lists into the sorted pool. Members of each
/// front appear in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn last(&self) -> &[usize] {
        self.fronts.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// 1-based rank of every pool slot.
    pub fn ranks(&self, pool_len: usize) -> Vec<usize> {
        let mut rank = vec![0; pool_len];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                rank[i] = r + 1;
            }
        }
        rank
    }
}

/// Does the front whose highest-`f2` member is `top` contain a point that
/// dominates `p`? Only valid while every member has `f1 ≥ p.f1`.
fn front_dominates(top: ObjectiveVector, p: ObjectiveVector) -> bool {
    top.f2 > p.f2 || (top.f2 == p.f2 && top.f1 > p.f1)
}

/// Partitions `pool` into successive non-dominated fronts.
///
/// Points are swept in decreasing `(f1, f2)` order. Every point seen so far
/// has `f1` at least as large, so a front dominates the current point iff its
/// most recently added member (the one with the largest `f2`) does, and the
/// first non-dominating front is found by binary search. `O(N log N)`.
pub fn non_dominated_sort(pool: &[Individual]) -> FrontPartition {
    sort_keyed(pool.iter().map(|x| x.objectives))
}

pub fn non_dominated_sort_vectors(points: &[ObjectiveVector]) -> FrontPartition {
    sort_keyed(points.iter().copied())
}

fn sort_keyed(points: impl ExactSizeIterator<Item = ObjectiveVector>) -> FrontPartition {
    // (−f1, −f2, index) ascending = (f1, f2) descending
    let mut keys: Vec<(i64, i64, usize)> =
        points.enumerate().map(|(i, p)| (-p.f1, -p.f2, i)).collect();
    keys.sort_unstable();

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut tops: Vec<ObjectiveVector> = Vec::new();
    for (f1, f2, i) in keys {
        let p = ObjectiveVector::new(-f1, -f2);
        let k = tops.partition_point(|&top| front_dominates(top, p));
        if k == fronts.len() {
            fronts.push(vec![i]);
            tops.push(p);
        } else {
            fronts[k].push(i);
            tops[k] = p;
        }
    }
    for f in &mut fronts {
        f.sort_unstable();
    }
    FrontPartition { fronts }
}

fn objective(v: ObjectiveVector, j: usize) -> i64 {
    if j == 0 {
        v.f1
    } else {
        v.f2
    }
}

/// Crowding distances of the pool members listed in `front`, in the same order.
pub fn crowding_of(pool: &[Individual], front: &[usize]) -> Vec<f64> {
    let k = front.len();
    let mut dist = vec![0.0f64; k];
    if k == 0 {
        return dist;
    }
    let mut sorted: Vec<usize> = (0..k).collect();
    for j in 0..2 {
        let value = |pos: usize| objective(pool[front[pos]].objectives, j);
        // stable: ties keep input order
        sorted.sort_by_key(|&pos| value(pos));
        dist[sorted[0]] = f64::INFINITY;
        dist[sorted[k - 1]] = f64::INFINITY;
        let span = value(sorted[k - 1]) - value(sorted[0]);
        if span == 0 {
            continue;
        }
        for l in 1..k.saturating_sub(1) {
            let gap = value(sorted[l + 1]) - value(sorted[l - 1]);
            dist[sorted[l]] += gap as f64 / span as f64;
        }
    }
    dist
}

/// Crowding distance of each member of `front`.
pub fn crowding_distances(front: &[Individual]) -> Vec<f64> {
    let all: Vec<usize> = (0..front.len()).collect();
    crowding_of(front, &all)
}

/// Ranks and crowding distances of `pop`, computed on `pop` alone.
pub fn ranked_view(pop: &[Individual]) -> RankedView {
    let partition = non_dominated_sort(pop);
    let rank = partition.ranks(pop.len());
    let mut crowding = vec![0.0; pop.len()];
    for front in &partition.fronts {
        for (&i, d) in front.iter().zip(crowding_of(pop, front)) {
            crowding[i] = d;
        }
    }
    RankedView { rank, crowding }
}

/// Indices of the `mu` survivors: whole fronts while they fit, then the
/// members of the critical front with the largest crowding distance.
pub fn nsga2_survival_indices(pool: &[Individual], mu: usize) -> Result<Vec<usize>> {
    if mu == 0 || pool.len() < mu {
        return Err(invalid(format!(
            "cannot select {mu} survivors from a pool of {}",
            pool.len()
        )));
    }
    let partition = non_dominated_sort(pool);
    let mut chosen = Vec::with_capacity(mu);
    for front in &partition.fronts {
        if chosen.len() + front.len() < mu {
            chosen.extend_from_slice(front);
            continue;
        }
        let crowding = crowding_of(pool, front);
        let mut by_crowding: Vec<usize> = (0..front.len()).collect();
        by_crowding.sort_by(|&a, &b| {
            crowding[a]
                .partial_cmp(&crowding[b])
                .unwrap_or(Ordering::Equal)
        });
        let take = mu - chosen.len();
        chosen.extend(
            by_crowding[front.len() - take..]
                .iter()
                .map(|&pos| front[pos]),
        );
        break;
    }
    Ok(chosen)
}

pub fn nsga2_survival(pool: &[Individual], mu: usize) -> Result<Population> {
    Ok(nsga2_survival_indices(pool, mu)?
        .into_iter()
        .map(|i| pool[i].clone())
        .collect())
}
