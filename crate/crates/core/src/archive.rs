//! Unbounded archive of mutually non-dominated individuals.
//!
//! Members have pairwise distinct `f1` values (two members sharing `f1` would
//! be comparable), so they are keyed by `f1`; `f2` then strictly decreases as
//! `f1` increases. The member with the smallest `f1 ≥ x.f1` has the largest
//! `f2` among all candidates that could dominate `x`, which makes the
//! domination test a single ordered lookup.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::objective::{Individual, ObjectiveVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InsertOutcome {
    Inserted,
    RejectedDominated,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Archive {
    members: BTreeMap<i64, Individual>,
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True if some member strictly dominates `v`.
    pub fn is_dominated(&self, v: ObjectiveVector) -> bool {
        match self.members.range(v.f1..).next() {
            Some((_, z)) => {
                let o = z.objectives;
                o.f2 > v.f2 || (o.f2 == v.f2 && o.f1 > v.f1)
            }
            None => false,
        }
    }

    /// Rejects `x` if a member strictly dominates it; otherwise evicts every
    /// member `x` weakly dominates (including an equal vector) and adds `x`.
    pub fn try_insert(&mut self, x: Individual) -> InsertOutcome {
        let v = x.objectives;
        if self.is_dominated(v) {
            return InsertOutcome::RejectedDominated;
        }
        // Weakly dominated members have f1 ≤ v.f1 and, walking downwards in
        // f1, f2 grows; stop at the first one above v.f2.
        let evicted: Vec<i64> = self
            .members
            .range(..=v.f1)
            .rev()
            .take_while(|(_, z)| z.objectives.f2 <= v.f2)
            .map(|(&k, _)| k)
            .collect();
        for k in evicted {
            self.members.remove(&k);
        }
        self.members.insert(v.f1, x);
        InsertOutcome::Inserted
    }

    /// Members in ascending `f1` order.
    pub fn members(&self) -> impl Iterator<Item = &Individual> {
        self.members.values()
    }

    pub fn objective_set(&self) -> Vec<ObjectiveVector> {
        self.members.values().map(|z| z.objectives).collect()
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members.into_values().collect()
    }

    /// JSON list of `{"genotype": "0101…", "objectives": [f1, f2]}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Rebuilds an archive from [`Archive::to_json`] output. The entries must
    /// share one genotype length and be mutually non-dominated with distinct
    /// objective vectors.
    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<Individual> = serde_json::from_str(s)?;
        let mut archive = Self::new();
        let len = entries.first().map(|e| e.genotype.len());
        for (i, e) in entries.into_iter().enumerate() {
            if Some(e.genotype.len()) != len {
                return Err(invalid(format!(
                    "archive entry {i} has a different genotype length"
                )));
            }
            let before = archive.len();
            if archive.try_insert(e) == InsertOutcome::RejectedDominated
                || archive.len() != before + 1
            {
                return Err(invalid(format!(
                    "archive entry {i} is comparable with an earlier entry"
                )));
            }
        }
        Ok(archive)
    }
}

impl Serialize for Archive {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.values())
    }
}
