//! Randomly assembled cubes: exact solvability probabilities and seeded
//! Monte Carlo estimates.
//!
//! Monte Carlo runs are split into blocks of [`BLOCK_SIZE`] samples. Block `j`
//! draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream `j`, so an
//! estimate depends only on `(mode, n, seed)` and never on how blocks are
//! spread over shards.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{edge_type, Configuration, Configuration3};
use crate::cube::geometry::{CENTERS, EDGE_SLOTS};
use crate::cube::EdgeType;
use crate::law::{check_cube3, check_revenge};
use crate::perm::Permutation;

pub const BLOCK_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("sample count must be positive")]
    NoSamples,
    #[error("shard count must be positive")]
    NoShards,
    #[error("unknown mode `{0}` (expected theoretical, market or cube3)")]
    UnknownMode(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssemblyMode {
    /// Edges may be put back flipped; pair members and same-colour centres
    /// are indistinguishable.
    RevengeTheoretical,
    /// The mechanism forces edge orientation.
    RevengeMarket,
    Cube3,
}

impl AssemblyMode {
    pub const ALL: [AssemblyMode; 3] = [
        AssemblyMode::RevengeTheoretical,
        AssemblyMode::RevengeMarket,
        AssemblyMode::Cube3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AssemblyMode::RevengeTheoretical => "theoretical",
            AssemblyMode::RevengeMarket => "market",
            AssemblyMode::Cube3 => "cube3",
        }
    }
}

impl fmt::Display for AssemblyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssemblyMode {
    type Err = SamplerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AssemblyMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| SamplerError::UnknownMode(s.to_string()))
    }
}

/// A physically assembled cube. Revenge pieces carry the labels they were
/// drawn with, which [`is_solvable`] is free to exchange within a colour class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assembly {
    Revenge(Configuration),
    Cube3(Configuration3),
}

fn shuffled<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

pub fn sample_assembly<R: Rng + ?Sized>(mode: AssemblyMode, rng: &mut R) -> Assembly {
    match mode {
        AssemblyMode::RevengeTheoretical => Assembly::Revenge(Configuration::random(rng)),
        AssemblyMode::RevengeMarket => {
            let mut c = Configuration::random(rng);
            for (j, o) in c.edge_occupancy().iter().enumerate() {
                c.y[j] = o.expected_orientation();
            }
            Assembly::Revenge(c)
        }
        AssemblyMode::Cube3 => {
            let sigma = shuffled(rng, 8);
            let tau = shuffled(rng, 12);
            Assembly::Cube3(Configuration3 {
                sigma,
                tau,
                x: std::array::from_fn(|_| rng.random_range(0..3)),
                y: std::array::from_fn(|_| rng.random_range(0..2)),
            })
        }
    }
}

/// Type an edge must carry to sit in sub-slot `slot` with orientation `y`.
fn required_type(slot: usize, y: u8) -> EdgeType {
    match (EdgeType::of_index(slot), y) {
        (t, 0) => t,
        (EdgeType::A, _) => EdgeType::B,
        (EdgeType::B, _) => EdgeType::A,
    }
}

/// Exchanges labels of indistinguishable pieces so that as many conditions
/// as possible hold. Centres of one colour are interchangeable in both
/// Revenge modes; the members of an edge pair only in theoretical mode.
pub fn best_labeling(c: &Configuration, mode: AssemblyMode) -> Configuration {
    let mut out = c.clone();
    if out.sigma.sign() != out.rho.sign() {
        out.rho = Permutation::transposition(CENTERS, 0, 1).then(&out.rho);
    }
    if mode == AssemblyMode::RevengeTheoretical {
        let mut images: Vec<usize> = out.tau.images().collect();
        for pair in 0..EDGE_SLOTS / 2 {
            let (e0, e1) = (2 * pair, 2 * pair + 1);
            let t0 = required_type(images[e0], out.y[images[e0]]);
            let t1 = required_type(images[e1], out.y[images[e1]]);
            if t0 != t1 && t0 != edge_type(e0) {
                images.swap(e0, e1);
            }
        }
        out.tau = Permutation::from_images(images).unwrap();
    }
    out
}

/// Whether every edge pair admits an a/b labeling meeting the edge law.
pub fn pair_constraints_hold(c: &Configuration) -> bool {
    (0..EDGE_SLOTS / 2).all(|pair| {
        let s0 = c.tau.image(2 * pair);
        let s1 = c.tau.image(2 * pair + 1);
        required_type(s0, c.y[s0]) != required_type(s1, c.y[s1])
    })
}

pub fn is_solvable(a: &Assembly, mode: AssemblyMode) -> bool {
    match a {
        Assembly::Revenge(c) => check_revenge(&best_labeling(c, mode)).valid,
        Assembly::Cube3(c) => check_cube3(c).valid,
    }
}

pub fn closed_form_probability(mode: AssemblyMode) -> Ratio<u64> {
    match mode {
        AssemblyMode::RevengeTheoretical => Ratio::new(1, (1 << 12) * 3),
        AssemblyMode::RevengeMarket => Ratio::new(1, 3),
        AssemblyMode::Cube3 => Ratio::new(1, 12),
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `8!·3⁸·12!·2¹²/12`.
pub fn count_cube3_patterns() -> BigUint {
    factorial(8) * BigUint::from(3u32).pow(8) * factorial(12) * BigUint::from(2u32).pow(12) / 12u32
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub hits: u64,
    pub samples: u64,
    pub std_error: f64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_counts(hits: u64, samples: u64, seed: u64) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            p_hat: p,
            hits,
            samples,
            std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            seed,
        }
    }

    /// Distance from `p` in standard errors.
    pub fn z_score(&self, p: f64) -> f64 {
        (self.p_hat - p).abs() / self.std_error.max(f64::MIN_POSITIVE)
    }
}

pub fn block_count(n: u64) -> u64 {
    n.div_ceil(BLOCK_SIZE)
}

pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Solvable samples in block `block` of an `n`-sample run.
pub fn block_hits(mode: AssemblyMode, n: u64, seed: u64, block: u64) -> u64 {
    let start = block * BLOCK_SIZE;
    let len = BLOCK_SIZE.min(n.saturating_sub(start));
    let mut rng = block_rng(seed, block);
    (0..len)
        .filter(|_| is_solvable(&sample_assembly(mode, &mut rng), mode))
        .count() as u64
}

/// Sums [`block_hits`] over the blocks `shard`, `shard + shards`, ...
pub fn shard_hits(mode: AssemblyMode, n: u64, seed: u64, shard: u64, shards: u64) -> u64 {
    (shard..block_count(n))
        .step_by(shards as usize)
        .map(|b| block_hits(mode, n, seed, b))
        .sum()
}

pub fn monte_carlo(mode: AssemblyMode, n: u64, seed: u64) -> Result<Estimate, SamplerError> {
    monte_carlo_sharded(mode, n, seed, 1)
}

/// Runs the shards on a pool of `shards` threads and merges their counts.
pub fn monte_carlo_sharded(mode: AssemblyMode, n: u64, seed: u64, shards: u64) -> Result<Estimate, SamplerError> {
    if n == 0 {
        return Err(SamplerError::NoSamples);
    }
    if shards == 0 {
        return Err(SamplerError::NoShards);
    }
    let hits = if shards == 1 {
        shard_hits(mode, n, seed, 0, 1)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(shards as usize)
            .build()
            .map_err(|e| SamplerError::Pool(e.to_string()))?;
        pool.install(|| {
            (0..shards)
                .into_par_iter()
                .map(|s| shard_hits(mode, n, seed, s, shards))
                .sum()
        })
    };
    Ok(Estimate::from_counts(hits, n, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::geometry::CENTERS;
    use crate::cube::{random_word, CubeState};

    fn revenge(a: Assembly) -> Configuration {
        match a {
            Assembly::Revenge(c) => c,
            Assembly::Cube3(_) => panic!("expected a Revenge assembly"),
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_probability(AssemblyMode::RevengeTheoretical), Ratio::new(1, 12288));
        assert_eq!(closed_form_probability(AssemblyMode::RevengeMarket), Ratio::new(1, 3));
        assert_eq!(closed_form_probability(AssemblyMode::Cube3), Ratio::new(1, 12));
    }

    #[test]
    fn cube3_pattern_count() {
        let n = count_cube3_patterns();
        assert_eq!(n.to_string(), "43252003274489856000");
        // the 3×3 law cuts the assembly space by 2·3·2
        let space = factorial(8) * BigUint::from(3u32).pow(8) * factorial(12) * BigUint::from(2u32).pow(12);
        assert_eq!(n.clone() * 12u32, space);
        assert_eq!(n % (factorial(8) / 2u32), BigUint::from(0u32));
    }

    #[test]
    fn mode_names_round_trip() {
        for m in AssemblyMode::ALL {
            assert_eq!(m.name().parse::<AssemblyMode>().unwrap(), m);
        }
        assert!("revenge".parse::<AssemblyMode>().is_err());
    }

    #[test]
    fn same_seed_same_assembly() {
        for mode in AssemblyMode::ALL {
            let a = sample_assembly(mode, &mut block_rng(5, 0));
            let b = sample_assembly(mode, &mut block_rng(5, 0));
            assert_eq!(a, b);
            assert_ne!(a, sample_assembly(mode, &mut block_rng(5, 1)));
        }
    }

    #[test]
    fn corner_marginal_is_uniform() {
        let mut rng = block_rng(17, 0);
        let n = 10_000;
        let hits = (0..n)
            .filter(|_| revenge(sample_assembly(AssemblyMode::RevengeTheoretical, &mut rng)).sigma.image(0) == 0)
            .count() as f64;
        let p = 1.0 / 8.0;
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((hits - n as f64 * p).abs() < 5.0 * sd, "{hits}");
    }

    #[test]
    fn market_assemblies_meet_the_edge_law() {
        let mut rng = block_rng(2, 0);
        for _ in 0..1000 {
            let c = revenge(sample_assembly(AssemblyMode::RevengeMarket, &mut rng));
            assert!(check_revenge(&c).condition3.pass);
        }
    }

    #[test]
    fn reachable_states_are_solvable() {
        let mut rng = block_rng(8, 0);
        for _ in 0..100 {
            let c = Configuration::of_word(&random_word(&mut rng, 30));
            // forget which centre and which pair member is which
            let mut scrambled = c.clone();
            scrambled.rho = Permutation::transposition(CENTERS, 4, 6).then(&c.rho);
            scrambled.tau = Permutation::transposition(EDGE_SLOTS, 10, 11).then(&c.tau);
            for mode in [AssemblyMode::RevengeTheoretical, AssemblyMode::RevengeMarket] {
                assert!(is_solvable(&Assembly::Revenge(c.clone()), mode));
            }
            assert!(is_solvable(&Assembly::Revenge(scrambled), AssemblyMode::RevengeTheoretical));
        }
    }

    #[test]
    fn single_flip_and_single_twist_are_unsolvable() {
        let mut flipped = Configuration::initial();
        flipped.y[4] = 1;
        assert!(!is_solvable(&Assembly::Revenge(flipped), AssemblyMode::RevengeTheoretical));
        let mut twisted = Configuration::initial();
        twisted.x[2] = 1;
        assert!(!is_solvable(&Assembly::Revenge(twisted), AssemblyMode::RevengeMarket));
    }

    #[test]
    fn relabeling_keeps_the_colored_state() {
        let mut rng = block_rng(9, 0);
        for _ in 0..200 {
            let c = revenge(sample_assembly(AssemblyMode::RevengeTheoretical, &mut rng));
            let l = best_labeling(&c, AssemblyMode::RevengeTheoretical);
            assert_eq!(l.realize().to_colored(), c.realize().to_colored());
            assert!(check_revenge(&l).condition1.pass);
            assert_eq!(check_revenge(&l).condition3.pass, pair_constraints_hold(&c));
        }
    }

    #[test]
    fn colored_solved_relabeling_is_solvable() {
        // two same-coloured centres exchanged: a different labeled state, same colours
        let mut c = Configuration::initial();
        c.rho = Permutation::transposition(CENTERS, 0, 3);
        let colored: CubeState = c.realize().to_colored();
        assert_eq!(colored, Configuration::initial().realize().to_colored());
        assert!(!check_revenge(&c).valid);
        assert!(is_solvable(&Assembly::Revenge(c), AssemblyMode::RevengeMarket));
    }

    #[test]
    fn zero_samples_rejected() {
        assert_eq!(monte_carlo(AssemblyMode::Cube3, 0, 1), Err(SamplerError::NoSamples));
        assert_eq!(monte_carlo_sharded(AssemblyMode::Cube3, 10, 1, 0), Err(SamplerError::NoShards));
    }

    #[test]
    fn shards_do_not_change_the_estimate() {
        let n = 3 * BLOCK_SIZE + 123;
        let one = monte_carlo(AssemblyMode::RevengeMarket, n, 77).unwrap();
        for k in [2, 3, 5] {
            assert_eq!(monte_carlo_sharded(AssemblyMode::RevengeMarket, n, 77, k).unwrap(), one);
            let merged: u64 = (0..k).map(|s| shard_hits(AssemblyMode::RevengeMarket, n, 77, s, k)).sum();
            assert_eq!(merged, one.hits);
        }
        assert_eq!(monte_carlo(AssemblyMode::RevengeMarket, n, 77).unwrap(), one);
    }

    #[test]
    fn std_error_halves_when_n_quadruples() {
        let small = monte_carlo(AssemblyMode::RevengeMarket, 10_000, 4).unwrap();
        let large = monte_carlo(AssemblyMode::RevengeMarket, 40_000, 4).unwrap();
        let ratio = large.std_error / small.std_error;
        assert!((ratio - 0.5).abs() < 0.05, "{ratio}");
        assert!(small.z_score(1.0 / 3.0) < 5.0 && large.z_score(1.0 / 3.0) < 5.0);
    }

    #[test]
    fn estimate_fields() {
        let e = Estimate::from_counts(25, 100, 3);
        assert_eq!(e.p_hat, 0.25);
        assert!((e.std_error - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
        assert_eq!(block_count(1), 1);
        assert_eq!(block_count(BLOCK_SIZE), 1);
        assert_eq!(block_count(BLOCK_SIZE + 1), 2);
    }

    #[test]
    fn twist_and_pair_events_are_independent() {
        let n = 1_000_000u64;
        let mut table = [[0u64; 2]; 2];
        for b in 0..block_count(n) {
            let mut rng = block_rng(123, b);
            let len = BLOCK_SIZE.min(n - b * BLOCK_SIZE);
            for _ in 0..len {
                let c = revenge(sample_assembly(AssemblyMode::RevengeTheoretical, &mut rng));
                let twist = check_revenge(&c).condition2.pass;
                let pairs = pair_constraints_hold(&c);
                table[twist as usize][pairs as usize] += 1;
            }
        }
        let nf = n as f64;
        let twist_rate = (table[1][0] + table[1][1]) as f64 / nf;
        let pair_rate = (table[0][1] + table[1][1]) as f64 / nf;
        let z = |rate: f64, p: f64| (rate - p).abs() / (p * (1.0 - p) / nf).sqrt();
        assert!(z(twist_rate, 1.0 / 3.0) < 5.0, "{twist_rate}");
        assert!(z(pair_rate, 1.0 / 4096.0) < 5.0, "{pair_rate}");
        // chi-square of the 2×2 contingency table, one degree of freedom
        let mut chi2 = 0.0;
        for (t, row) in table.iter().enumerate() {
            for (p, &obs) in row.iter().enumerate() {
                let rt = if t == 1 { twist_rate } else { 1.0 - twist_rate };
                let rp = if p == 1 { pair_rate } else { 1.0 - pair_rate };
                let exp = nf * rt * rp;
                chi2 += (obs as f64 - exp).powi(2) / exp;
            }
        }
        assert!(chi2 < 25.0, "chi2 = {chi2}");
    }
}
