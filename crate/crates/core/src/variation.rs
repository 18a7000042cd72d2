//! Random streams, parent selection, one-point crossover and bit-wise mutation.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::bitstring::Bitstring;
use crate::error::{invalid, Result};
use crate::objective::Individual;

/// Identifies the generator family in output metadata. Changing the generator
/// or the seeding scheme must change this string.
pub const GENERATOR_ID: &str = "chacha8/rand_chacha-0.9/seed_from_u64+splitmix64-streams/v1";

/// A seeded, reproducible random stream owned by a single run.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream identified by `parts` under `base`.
    pub fn derived(base: u64, parts: &[u64]) -> Self {
        Self::new(derive_seed(base, parts))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `parts` into `base` with SplitMix64: `h ← splitmix64(h ⊕ part)`.
/// Stable across platforms and releases.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(base), |h, &p| splitmix64(h ^ p))
}

/// FNV-1a, used to turn labels into stream identifiers.
pub fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationParams {
    /// Probability of applying crossover.
    pub pc: f64,
    /// Per-bit flip probability.
    pub pm: f64,
}

impl VariationParams {
    /// `pc = 0.9`, `pm = 1/n`.
    pub fn for_size(n: usize) -> Self {
        Self {
            pc: 0.9,
            pm: 1.0 / n as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("pc", self.pc), ("pm", self.pm)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(crate::Error::Config(format!(
                    "{name} = {p} is not a probability"
                )));
            }
        }
        Ok(())
    }
}

/// Rank (1 = first front) and crowding distance for each member of one
/// population, by slot.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedView {
    pub rank: Vec<usize>,
    pub crowding: Vec<f64>,
}

impl RankedView {
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// Picks two slots with replacement and returns the better one's index:
/// lower rank, then larger crowding distance, then a fair coin.
pub fn binary_tournament_index<R: Rng + ?Sized>(view: &RankedView, rng: &mut R) -> usize {
    assert!(!view.is_empty(), "tournament on an empty population");
    let a = rng.random_range(0..view.len());
    let b = rng.random_range(0..view.len());
    let (ra, rb) = (view.rank[a], view.rank[b]);
    let (ca, cb) = (view.crowding[a], view.crowding[b]);
    if ra != rb {
        return if ra < rb { a } else { b };
    }
    if ca != cb {
        return if ca > cb { a } else { b };
    }
    if rng.random_bool(0.5) {
        a
    } else {
        b
    }
}

pub fn binary_tournament<'p, R: Rng + ?Sized>(
    pop: &'p [Individual],
    view: &RankedView,
    rng: &mut R,
) -> &'p Individual {
    assert_eq!(
        pop.len(),
        view.len(),
        "ranked view was computed on a different population"
    );
    &pop[binary_tournament_index(view, rng)]
}

pub fn uniform_select<'p, R: Rng + ?Sized>(pop: &'p [Individual], rng: &mut R) -> &'p Individual {
    assert!(!pop.is_empty(), "selection from an empty population");
    &pop[rng.random_range(0..pop.len())]
}

fn check_same_len(x: &Bitstring, y: &Bitstring) -> Result<()> {
    if x.len() != y.len() {
        return Err(invalid(format!(
            "crossover parents differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

fn crossover_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> usize {
    rng.random_range(1..=n)
}

/// Exchanges the first `i` bits: returns `(y[..i] ⧺ x[i..], x[..i] ⧺ y[i..])`.
pub fn one_point_crossover_pair_at(
    x: &Bitstring,
    y: &Bitstring,
    i: usize,
) -> Result<(Bitstring, Bitstring)> {
    check_same_len(x, y)?;
    if i == 0 || i > x.len() {
        return Err(invalid(format!(
            "crossover point {i} outside [1..{}]",
            x.len()
        )));
    }
    Ok((Bitstring::splice(y, x, i), Bitstring::splice(x, y, i)))
}

/// Both children of a one-point crossover with point uniform on `[1..n]`.
pub fn one_point_crossover_pair<R: Rng + ?Sized>(
    x: &Bitstring,
    y: &Bitstring,
    rng: &mut R,
) -> Result<(Bitstring, Bitstring)> {
    check_same_len(x, y)?;
    let i = crossover_point(x.len(), rng);
    one_point_crossover_pair_at(x, y, i)
}

/// `x[..i] ⧺ y[i..]`.
pub fn one_point_crossover_single_at(x: &Bitstring, y: &Bitstring, i: usize) -> Result<Bitstring> {
    check_same_len(x, y)?;
    if i == 0 || i > x.len() {
        return Err(invalid(format!(
            "crossover point {i} outside [1..{}]",
            x.len()
        )));
    }
    Ok(Bitstring::splice(x, y, i))
}

/// The child made of the first parent's head and the second parent's tail.
pub fn one_point_crossover_single<R: Rng + ?Sized>(
    x: &Bitstring,
    y: &Bitstring,
    rng: &mut R,
) -> Result<Bitstring> {
    check_same_len(x, y)?;
    let i = crossover_point(x.len(), rng);
    one_point_crossover_single_at(x, y, i)
}

/// Flips each bit independently with probability `pm`.
///
/// Flip positions are found by sampling geometric gaps between flips, which
/// costs one draw per flip rather than one per bit.
pub fn bitwise_mutation<R: Rng + ?Sized>(x: &Bitstring, pm: f64, rng: &mut R) -> Result<Bitstring> {
    if !(0.0..=1.0).contains(&pm) {
        return Err(invalid(format!("mutation probability {pm} outside [0, 1]")));
    }
    let mut out = x.clone();
    if pm == 0.0 {
        return Ok(out);
    }
    if pm == 1.0 {
        out.complement_in_place();
        return Ok(out);
    }
    let gaps = Geometric::new(pm).expect("probability checked above");
    let n = x.len() as u64;
    let mut pos = gaps.sample(rng);
    while pos < n {
        out.flip(pos as usize);
        pos = pos.saturating_add(1).saturating_add(gaps.sample(rng));
    }
    Ok(out)
}
