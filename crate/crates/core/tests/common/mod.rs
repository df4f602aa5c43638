#![allow(dead_code)]

use psi_score::synth::random_graph;
use psi_score::{ActivityProfile, DirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub seed: u64,
    pub graph: DirectedGraph,
    pub activity: ActivityProfile,
}

/// Seeded random graphs with N in [10, 200], edge probability in
/// [0.05, 0.3] and activity drawn from (0, 1).
pub fn random_corpus(count: usize, base_seed: u64, leader_complete: bool) -> Vec<Case> {
    (0..count as u64)
        .map(|k| {
            let seed = base_seed + k;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(10..=200);
            let p = rng.gen_range(0.05..=0.3);
            let graph = random_graph(n, p, seed.wrapping_mul(7919), leader_complete).unwrap();
            let activity =
                ActivityProfile::random_uniform(n, seed.wrapping_add(1_000_003)).unwrap();
            Case {
                seed,
                graph,
                activity,
            }
        })
        .collect()
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
