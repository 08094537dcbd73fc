//! Seeded fuzzing of the moment inequalities over admissible profiles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rearrangement::profile::{lemma_chain_check, sample_admissible_profile, LemmaKind};

/// Margin below which a trial counts as a violation.
pub const VIOLATION_TOLERANCE: f64 = -1e-10;

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index`, independent of evaluation order.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub dimensions: Vec<u32>,
    /// Pieces per profile are drawn from 1..=max_pieces.
    #[serde(default = "default_pieces")]
    pub max_pieces: u32,
}

fn default_pieces() -> u32 {
    8
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { seed: 0, trials: 1000, dimensions: vec![2, 3, 4], max_pieces: default_pieces() }
    }
}

/// Outcome of one lemma in one dimension. Failed evaluations count as violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub lemma: String,
    pub n: u32,
    pub trials: u64,
    pub violations: u64,
    pub worst_margin: f64,
    pub worst_seed: u64,
}

#[derive(Clone, Copy)]
struct Tally {
    violations: u64,
    worst: (f64, u64),
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        let worst = if other.worst.0 < self.worst.0 || (other.worst.0 == self.worst.0 && other.worst.1 < self.worst.1) {
            other.worst
        } else {
            self.worst
        };
        Tally { violations: self.violations + other.violations, worst }
    }
}

/// Runs every applicable lemma in each requested dimension over `cfg.trials` profiles
/// (ψ(0) ≤ 1, slope bound 1). The i-th profile is the same for every lemma and dimension.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<Vec<FuzzSummary>> {
    if cfg.max_pieces == 0 {
        return Err(Error::InvalidParameter { name: "max_pieces", reason: "must be >= 1".into() });
    }
    let mut out = Vec::new();
    for &n in &cfg.dimensions {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "dimensions",
                reason: format!("n = {n} has no profile lemma"),
            });
        }
        for lemma in LemmaKind::applicable(n) {
            out.push(fuzz_lemma(cfg, n, lemma));
        }
    }
    Ok(out)
}

pub fn fuzz_lemma(cfg: &FuzzConfig, n: u32, lemma: LemmaKind) -> FuzzSummary {
    let identity = Tally { violations: 0, worst: (f64::INFINITY, u64::MAX) };
    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.seed, i);
            let pieces = 1 + (seed % u64::from(cfg.max_pieces)) as u32;
            let margin =
                sample_admissible_profile::<f64>(seed, 1.0, 1.0, pieces).and_then(|p| lemma_chain_check(&p, n, lemma));
            match margin {
                Ok(m) => Tally { violations: u64::from(!(m >= VIOLATION_TOLERANCE)), worst: (m, seed) },
                Err(_) => Tally { violations: 1, worst: (f64::NEG_INFINITY, seed) },
            }
        })
        .reduce(|| identity, Tally::merge);
    FuzzSummary {
        lemma: lemma.to_string(),
        n,
        trials: cfg.trials,
        violations: tally.violations,
        worst_margin: tally.worst.0,
        worst_seed: if cfg.trials == 0 { 0 } else { tally.worst.1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|i| trial_seed(5, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn fuzz_is_deterministic() {
        let cfg = FuzzConfig { seed: 9, trials: 200, dimensions: vec![2, 3], max_pieces: 8 };
        let a = run_fuzz(&cfg).unwrap();
        let b = run_fuzz(&cfg).unwrap();
        assert_eq!(a, b);
        let corrected = a.iter().find(|s| s.lemma == "KL_corrected" && s.n == 2).unwrap();
        assert_eq!(corrected.violations, 0);
    }
}
