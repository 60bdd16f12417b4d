//! Fixed workloads shared by the benchmarks.

use stablemat::generate::{marriage_ties, random_partition, Labels, MarriageParams, RandomParams};
use stablemat::Instance;

pub const SIZES: [usize; 3] = [8, 16, 32];

/// Random partition instance with mixed labels and three tiers.
pub fn partition(size: usize, seed: u64) -> Instance {
    random_partition(RandomParams { size, tiers: 3, labels: Labels::Random, seed }).expect("valid parameters")
}

/// Complete `n x n` marriage with two tier levels on each side.
pub fn marriage(n: usize, labels: Labels, seed: u64) -> Instance {
    marriage_ties(MarriageParams { men: n, women: n, tiers: 2, density: 1.0, labels, seed }).expect("valid parameters")
}
