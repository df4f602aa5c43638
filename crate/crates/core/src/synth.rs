//! Seeded synthetic graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Directed Erdos-Renyi graph: every ordered pair `(i, j)`, `i != j`, is an
/// edge with probability `p`. With `leader_complete`, any node left without
/// a leader is given one chosen uniformly among the other nodes.
pub fn random_graph(n: usize, p: f64, seed: u64, leader_complete: bool) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "random graphs need at least 2 nodes".into(),
        ));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for src in 0..n {
        let before = edges.len();
        for dst in 0..n {
            if dst != src && rng.gen::<f64>() < p {
                edges.push((src, dst));
            }
        }
        if leader_complete && edges.len() == before {
            let mut dst = rng.gen_range(0..n - 1);
            if dst >= src {
                dst += 1;
            }
            edges.push((src, dst));
        }
    }
    DirectedGraph::from_index_edges(n, edges).map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_leader_complete() {
        let a = random_graph(50, 0.02, 3, true).unwrap();
        let b = random_graph(50, 0.02, 3, true).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert!(a.is_leader_complete());
    }

    #[test]
    fn edge_density_is_close_to_p() {
        let g = random_graph(400, 0.05, 1, false).unwrap();
        let expected = 0.05 * 400.0 * 399.0;
        let m = g.num_edges() as f64;
        assert!((m - expected).abs() < 0.05 * expected, "{m} vs {expected}");
    }
}
