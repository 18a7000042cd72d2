//! Exact two-dimensional hypervolume and SMS-EMOA's removal step.
//!
//! All arithmetic is on integers: objectives and reference point are
//! integral, so areas and contributions are exact and argmin ties are real
//! ties.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::objective::{Individual, ObjectiveVector, Population};
use crate::ranking::FrontPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct ReferencePoint {
    pub r1: i64,
    pub r2: i64,
}

impl Default for ReferencePoint {
    /// `(-1, -1)`, strictly below the minimum of both benchmark objectives.
    fn default() -> Self {
        Self { r1: -1, r2: -1 }
    }
}

impl From<(i64, i64)> for ReferencePoint {
    fn from((r1, r2): (i64, i64)) -> Self {
        Self { r1, r2 }
    }
}

impl From<ReferencePoint> for (i64, i64) {
    fn from(r: ReferencePoint) -> Self {
        (r.r1, r.r2)
    }
}

impl fmt::Display for ReferencePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r1, self.r2)
    }
}

impl FromStr for ReferencePoint {
    type Err = Error;

    /// Parses `r1,r2`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| {
            Error::Parse(format!("reference point {s:?} is not of the form r1,r2"))
        })?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("reference point coordinate {t:?}: {e}")))
        };
        Ok(Self {
            r1: parse(a)?,
            r2: parse(b)?,
        })
    }
}

fn check_above(points: &[ObjectiveVector], r: ReferencePoint) -> Result<()> {
    match points.iter().find(|p| p.f1 <= r.r1 || p.f2 <= r.r2) {
        Some(p) => Err(invalid(format!(
            "point ({}, {}) does not strictly exceed reference point ({r})",
            p.f1, p.f2
        ))),
        None => Ok(()),
    }
}

/// Area of the union of boxes `[r1, f1] × [r2, f2]`.
pub fn hypervolume_2d(points: &[ObjectiveVector], r: ReferencePoint) -> Result<i128> {
    check_above(points, r)?;
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| b.f1.cmp(&a.f1).then(b.f2.cmp(&a.f2)));
    let mut area = 0i128;
    let mut covered_f2 = r.r2;
    for p in sorted {
        if p.f2 > covered_f2 {
            area += i128::from(p.f1 - r.r1) * i128::from(p.f2 - covered_f2);
            covered_f2 = p.f2;
        }
    }
    Ok(area)
}

/// `HV(front) − HV(front \ {front[member]})`.
pub fn contribution(member: usize, front: &[ObjectiveVector], r: ReferencePoint) -> Result<i128> {
    if member >= front.len() {
        return Err(invalid(format!(
            "member {member} is not part of a front of size {}",
            front.len()
        )));
    }
    let rest: Vec<ObjectiveVector> = front
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != member)
        .map(|(_, &p)| p)
        .collect();
    Ok(hypervolume_2d(front, r)? - hypervolume_2d(&rest, r)?)
}

/// Contributions of every member at once.
///
/// On a front (no member dominated) this takes `O(k log k)`: among the
/// distinct vectors sorted by ascending `f1`, a point's exclusive region is
/// the rectangle spanned by its left neighbour's `f1` and its right
/// neighbour's `f2`, and duplicated members contribute nothing. Dominated
/// members eat into their dominators' rectangles, so any other input falls
/// back to one hypervolume difference per member.
pub fn contributions(front: &[ObjectiveVector], r: ReferencePoint) -> Result<Vec<i128>> {
    check_above(front, r)?;
    let mut keys: Vec<(i64, i64, usize)> = front
        .iter()
        .enumerate()
        .map(|(i, p)| (-p.f1, -p.f2, i))
        .collect();
    keys.sort_unstable();

    // Staircase of distinct vectors in descending f1: (vector, a member holding it, duplicated?).
    let mut stair: Vec<(ObjectiveVector, usize, bool)> = Vec::with_capacity(front.len());
    for (_, _, i) in keys {
        let p = front[i];
        match stair.last_mut() {
            Some((q, _, dup)) if *q == p => *dup = true,
            Some((q, _, _)) if q.f2 >= p.f2 => {
                return (0..front.len())
                    .map(|i| contribution(i, front, r))
                    .collect();
            }
            _ => stair.push((p, i, false)),
        }
    }

    let mut out = vec![0i128; front.len()];
    for (k, &(p, member, dup)) in stair.iter().enumerate() {
        if dup {
            continue;
        }
        // neighbours: k-1 has larger f1 / smaller f2, k+1 smaller f1 / larger f2
        let lower_f2 = if k == 0 { r.r2 } else { stair[k - 1].0.f2 };
        let lower_f1 = stair.get(k + 1).map_or(r.r1, |(q, _, _)| q.f1);
        out[member] = i128::from(p.f1 - lower_f1) * i128::from(p.f2 - lower_f2);
    }
    Ok(out)
}

/// Chooses which member of `pool` SMS-EMOA discards.
///
/// The victim comes from the last front `R_v` and minimizes the hypervolume
/// contribution within `R_v`. One holder of the pool-wide maximum `f1` vector
/// and one holder of the pool-wide maximum `f2` vector are exempt; further
/// copies of those vectors stay eligible. If every member of `R_v` is exempt
/// the minimum is taken over all of `R_v`. Ties are broken uniformly.
pub fn smsemoa_removal_index<R: Rng + ?Sized>(
    pool: &[Individual],
    partition: &FrontPartition,
    r: ReferencePoint,
    rng: &mut R,
) -> Result<usize> {
    let last = partition.last();
    if last.is_empty() {
        return Err(invalid("cannot remove from an empty pool"));
    }
    let max_f1 = pool
        .iter()
        .map(|x| x.objectives.f1)
        .max()
        .expect("non-empty");
    let max_f2 = pool
        .iter()
        .map(|x| x.objectives.f2)
        .max()
        .expect("non-empty");

    let vectors: Vec<ObjectiveVector> = last.iter().map(|&i| pool[i].objectives).collect();
    let holder_f1 = vectors.iter().position(|v| v.f1 == max_f1);
    let holder_f2 = vectors.iter().position(|v| v.f2 == max_f2);
    let mut candidates: Vec<usize> = (0..last.len())
        .filter(|&pos| Some(pos) != holder_f1 && Some(pos) != holder_f2)
        .collect();
    if candidates.is_empty() {
        candidates = (0..last.len()).collect();
    }

    let delta = contributions(&vectors, r)?;
    let least = candidates
        .iter()
        .map(|&pos| delta[pos])
        .min()
        .expect("non-empty");
    let ties: Vec<usize> = candidates
        .into_iter()
        .filter(|&pos| delta[pos] == least)
        .collect();
    let pick = if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.random_range(0..ties.len())]
    };
    Ok(last[pick])
}

/// `pool` minus the member chosen by [`smsemoa_removal_index`], order kept.
pub fn smsemoa_remove<R: Rng + ?Sized>(
    pool: &[Individual],
    partition: &FrontPartition,
    r: ReferencePoint,
    rng: &mut R,
) -> Result<Population> {
    let victim = smsemoa_removal_index(pool, partition, r, rng)?;
    Ok(pool
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != victim)
        .map(|(_, x)| x.clone())
        .collect())
}
