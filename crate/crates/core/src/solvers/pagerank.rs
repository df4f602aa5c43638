use std::time::Instant;

use super::{l1_distance, SolverConfig, SolverResult};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::operator::MatvecCounter;

/// PageRank power method `pi_t = alpha pi_{t-1} W + (1 - alpha) / N`, where
/// `W` moves uniformly from a follower to one of its leaders.
///
/// Nodes that follow nobody have a zero row in `W` and their mass is not
/// redistributed. This is the walk that the psi-score reduces to under
/// homogeneous activity, so `pi` equals psi for `alpha = mu / (lambda + mu)`.
pub fn pagerank_power(
    graph: &DirectedGraph,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    cfg.validate()?;
    let n = graph.num_nodes();
    let inv_out: Vec<f64> = (0..n)
        .map(|j| match graph.out_degree(j) {
            0 => 0.0,
            deg => 1.0 / deg as f64,
        })
        .collect();

    let start = Instant::now();
    let teleport = (1.0 - alpha) / n as f64;
    let mut pi = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut counter = MatvecCounter::default();
    let mut gap_history = Vec::new();
    let mut converged = false;

    while gap_history.len() < cfg.max_iterations {
        for (i, x) in next.iter_mut().enumerate() {
            let walk: f64 = graph
                .followers_of(i)
                .iter()
                .map(|&j| pi[j as usize] * inv_out[j as usize])
                .sum();
            *x = alpha * walk + teleport;
        }
        counter.a += 1;
        let gap = l1_distance(&next, &pi);
        std::mem::swap(&mut pi, &mut next);
        gap_history.push(gap);
        if gap <= cfg.tolerance {
            converged = true;
            break;
        }
    }

    Ok(SolverResult {
        psi: pi,
        iterations: gap_history.len(),
        matvecs: counter,
        gap_history,
        wall_seconds: start.elapsed().as_secs_f64(),
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list_str;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symmetric_graphs_are_uniform() {
        let cfg = SolverConfig::with_tolerance(1e-9);
        let g = parse_edge_list_str("0 1\n1 2\n2 0\n").unwrap().graph;
        let r = pagerank_power(&g, 0.85, &cfg).unwrap();
        assert!(r.converged);
        for x in &r.psi {
            assert_abs_diff_eq!(*x, 1.0 / 3.0, epsilon = 1e-12);
        }
        let g = parse_edge_list_str("0 1\n1 0\n").unwrap().graph;
        let r = pagerank_power(&g, 0.85, &cfg).unwrap();
        assert_eq!(r.psi, vec![0.5, 0.5]);
    }

    #[test]
    fn alpha_must_be_open_unit() {
        let g = parse_edge_list_str("0 1\n").unwrap().graph;
        let cfg = SolverConfig::default();
        for alpha in [0.0, 1.0, 1.2, -0.5, f64::NAN] {
            assert!(pagerank_power(&g, alpha, &cfg).is_err(), "alpha {alpha}");
        }
    }

    #[test]
    fn dangling_mass_is_not_redistributed() {
        // 0 follows 1; node 1 follows nobody, so its mass leaks.
        let g = parse_edge_list_str("0 1\n").unwrap().graph;
        let r = pagerank_power(&g, 0.5, &SolverConfig::with_tolerance(1e-14)).unwrap();
        // pi_0 = 0.25, pi_1 = 0.5 * pi_0 + 0.25
        assert_abs_diff_eq!(r.psi[0], 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(r.psi[1], 0.375, epsilon = 1e-14);
    }
}
