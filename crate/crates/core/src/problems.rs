//! OneMinMax and LeadingOnesTrailingZeroes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{invalid, Error, Result};
use crate::objective::{ObjectiveVector, ParetoFrontSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "omm")]
    OneMinMax,
    #[serde(rename = "lotz")]
    LeadingOnesTrailingZeroes,
}

impl ProblemKind {
    /// Short name used on the command line and in CSV output.
    pub fn short_name(self) -> &'static str {
        match self {
            Self::OneMinMax => "omm",
            Self::LeadingOnesTrailingZeroes => "lotz",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "omm" => Ok(Self::OneMinMax),
            "lotz" => Ok(Self::LeadingOnesTrailingZeroes),
            _ => Err(Error::Parse(format!(
                "unknown problem {s:?} (expected omm or lotz)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    kind: ProblemKind,
    n: usize,
}

/// Number of fitness evaluations performed in one run.
#[derive(Debug, Default)]
pub struct EvaluationCounter {
    count: u64,
}

impl EvaluationCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

impl Problem {
    pub fn new(kind: ProblemKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("problem size n must be at least 1".into()));
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Evaluates `x` and charges one evaluation to `counter`.
    pub fn evaluate(
        &self,
        x: &Bitstring,
        counter: &mut EvaluationCounter,
    ) -> Result<ObjectiveVector> {
        self.check_len(x)?;
        counter.count += 1;
        Ok(self.objectives_unmetered(x))
    }

    /// Objective values without touching any counter. Only for oracles and
    /// reporting; algorithms go through [`Problem::evaluate`].
    pub fn objectives_unmetered(&self, x: &Bitstring) -> ObjectiveVector {
        match self.kind {
            ProblemKind::OneMinMax => {
                let ones = x.count_ones() as i64;
                ObjectiveVector::new(self.n as i64 - ones, ones)
            }
            ProblemKind::LeadingOnesTrailingZeroes => {
                ObjectiveVector::new(x.leading_ones() as i64, x.trailing_zeros() as i64)
            }
        }
    }

    /// `{(a, n-a) : a ∈ [0..n]}` for both problems.
    pub fn pareto_front(&self) -> ParetoFrontSpec {
        let n = self.n as i64;
        ParetoFrontSpec::new((0..=n).map(|a| ObjectiveVector::new(a, n - a)))
    }

    pub fn is_pareto_optimal(&self, x: &Bitstring) -> Result<bool> {
        self.check_len(x)?;
        Ok(match self.kind {
            ProblemKind::OneMinMax => true,
            ProblemKind::LeadingOnesTrailingZeroes => {
                x.leading_ones() + x.trailing_zeros() == self.n
            }
        })
    }

    fn check_len(&self, x: &Bitstring) -> Result<()> {
        if x.len() != self.n {
            return Err(invalid(format!(
                "bitstring of length {} passed to a problem of size {}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{dominates, ObjectiveVector as V};
    use proptest::prelude::*;

    fn bs(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    fn omm(n: usize) -> Problem {
        Problem::new(ProblemKind::OneMinMax, n).unwrap()
    }

    fn lotz(n: usize) -> Problem {
        Problem::new(ProblemKind::LeadingOnesTrailingZeroes, n).unwrap()
    }

    fn all_strings(n: usize) -> impl Iterator<Item = Bitstring> {
        (0u32..1 << n).map(move |m| {
            let bits: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            Bitstring::from_bits(&bits).unwrap()
        })
    }

    #[test]
    fn evaluation_examples() {
        let mut c = EvaluationCounter::new();
        assert_eq!(omm(5).evaluate(&bs("10110"), &mut c).unwrap(), V::new(2, 3));
        assert_eq!(
            lotz(5).evaluate(&bs("11010"), &mut c).unwrap(),
            V::new(2, 1)
        );
        for a in 0..=7 {
            let x = Bitstring::leading_block(7, a).unwrap();
            assert_eq!(
                lotz(7).evaluate(&x, &mut c).unwrap(),
                V::new(a as i64, 7 - a as i64)
            );
        }
        assert_eq!(c.count(), 10);
    }

    #[test]
    fn all_ones_under_lotz() {
        let p = lotz(6);
        assert_eq!(
            p.objectives_unmetered(&Bitstring::ones(6).unwrap()),
            V::new(6, 0)
        );
        assert_eq!(
            p.objectives_unmetered(&Bitstring::zeros(6).unwrap()),
            V::new(0, 6)
        );
    }

    #[test]
    fn length_mismatch_is_rejected_without_counting() {
        let mut c = EvaluationCounter::new();
        assert!(matches!(
            omm(4).evaluate(&bs("101"), &mut c),
            Err(Error::InvalidInput(_))
        ));
        assert!(lotz(4).is_pareto_optimal(&bs("101")).is_err());
        assert_eq!(c.count(), 0);
    }

    #[test]
    fn front_examples() {
        assert_eq!(
            omm(2).pareto_front().points(),
            &[V::new(0, 2), V::new(1, 1), V::new(2, 0)]
        );
        assert_eq!(
            lotz(1).pareto_front().points(),
            &[V::new(0, 1), V::new(1, 0)]
        );
        assert_eq!(omm(50).pareto_front().len(), 51);
        assert!(Problem::new(ProblemKind::OneMinMax, 0).is_err());
    }

    #[test]
    fn pareto_optimality_examples() {
        assert!(omm(5).is_pareto_optimal(&bs("10100")).unwrap());
        assert!(lotz(5).is_pareto_optimal(&bs("11000")).unwrap());
        assert!(!lotz(5).is_pareto_optimal(&bs("10100")).unwrap());
        // 10100 ↦ (1,2) is beaten by 11100 ↦ (3,2) among all 5-bit strings.
        let p = lotz(5);
        let fx = p.objectives_unmetered(&bs("10100"));
        assert_eq!(fx, V::new(1, 2));
        assert!(all_strings(5).any(|y| dominates(p.objectives_unmetered(&y), fx)));
        assert!(dominates(p.objectives_unmetered(&bs("11100")), fx));
    }

    #[test]
    fn names_parse_case_insensitively() {
        assert_eq!(
            "OMM".parse::<ProblemKind>().unwrap(),
            ProblemKind::OneMinMax
        );
        assert_eq!(
            "Lotz".parse::<ProblemKind>().unwrap(),
            ProblemKind::LeadingOnesTrailingZeroes
        );
        assert!("onemax".parse::<ProblemKind>().is_err());
    }

    #[test]
    fn brute_force_fronts_match() {
        for n in 1..=12 {
            for p in [omm(n), lotz(n)] {
                let values: Vec<V> = all_strings(n).map(|x| p.objectives_unmetered(&x)).collect();
                let nd = values
                    .iter()
                    .copied()
                    .filter(|v| !values.iter().any(|w| dominates(*w, *v)));
                assert_eq!(
                    ParetoFrontSpec::new(nd),
                    p.pareto_front(),
                    "{:?} n={n}",
                    p.kind()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn omm_conserves_bit_count(bits in prop::collection::vec(any::<bool>(), 1..130)) {
            let x = Bitstring::from_bits(&bits).unwrap();
            let f = omm(bits.len()).objectives_unmetered(&x);
            prop_assert_eq!(f.f1 + f.f2, bits.len() as i64);
        }

        #[test]
        fn lotz_sum_bounded_with_equality_iff_optimal(bits in prop::collection::vec(any::<bool>(), 1..130)) {
            let p = lotz(bits.len());
            let x = Bitstring::from_bits(&bits).unwrap();
            let f = p.objectives_unmetered(&x);
            prop_assert!(f.f1 + f.f2 <= bits.len() as i64);
            prop_assert_eq!(f.f1 + f.f2 == bits.len() as i64, p.is_pareto_optimal(&x).unwrap());
            // straightforward recount
            let lo = bits.iter().take_while(|b| **b).count() as i64;
            let tz = bits.iter().rev().take_while(|b| !**b).count() as i64;
            prop_assert_eq!(f, V::new(lo, tz));
        }
    }
}
