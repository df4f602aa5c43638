use std::time::Instant;

use rayon::prelude::*;

use super::{l1_distance, SolverConfig, SolverResult};
use crate::error::{Error, Result};
use crate::operator::{MatvecCounter, PsiOperator};

/// Newsfeed (`p`) and wall (`q`) shares of posts from one origin.
#[derive(Debug, Clone, PartialEq)]
pub struct NewsfeedWall {
    pub origin: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub iterations: usize,
    pub matvecs: u64,
    /// Final `||p(t) - p(t-1)||_1`.
    pub gap: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NfOptions {
    /// Solve origins on the rayon pool. Results are identical to the
    /// sequential run, but wall time is no longer comparable.
    pub parallel: bool,
    /// Keep every origin's `p` and `q` (N^2 memory).
    pub retain: bool,
}

struct OriginRun {
    iterations: usize,
    matvecs: u64,
    gap: f64,
    converged: bool,
}

// Fixed-point iteration p <- A p + b_i from p = b_i. Leaves the final
// iterate in `p`.
fn iterate_origin(
    op: &PsiOperator<'_>,
    origin: usize,
    cfg: &SolverConfig,
    b: &mut [f64],
    p: &mut Vec<f64>,
    next: &mut Vec<f64>,
) -> OriginRun {
    b.fill(0.0);
    for (j, v) in op.b_column(origin).expect("origin index checked by caller") {
        b[j] = v;
    }
    p.copy_from_slice(b);

    let mut counter = MatvecCounter::default();
    let mut iterations = 0;
    let mut gap = f64::INFINITY;
    while iterations < cfg.max_iterations {
        op.apply_a_right_into(p, next, &mut counter)
            .expect("buffer sizes match operator");
        for (x, &bj) in next.iter_mut().zip(b.iter()) {
            *x += bj;
        }
        gap = l1_distance(next, p);
        std::mem::swap(p, next);
        iterations += 1;
        if gap <= cfg.tolerance {
            break;
        }
    }
    OriginRun {
        iterations,
        matvecs: counter.a,
        gap,
        converged: gap <= cfg.tolerance,
    }
}

// q_i = C p_i + d_i
fn wall_from_newsfeed(op: &PsiOperator<'_>, origin: usize, p: &[f64]) -> Vec<f64> {
    let mut q: Vec<f64> = p.iter().zip(op.c()).map(|(&pj, &cj)| cj * pj).collect();
    q[origin] += op.d()[origin];
    q
}

// psi_i = (1/N) sum_n q_i^(n), without materializing q_i.
fn psi_entry(op: &PsiOperator<'_>, origin: usize, p: &[f64]) -> f64 {
    let wall: f64 = p.iter().zip(op.c()).map(|(&pj, &cj)| cj * pj).sum();
    (wall + op.d()[origin]) / op.num_nodes() as f64
}

/// Power-NF for one origin `i`.
pub fn power_nf(op: &PsiOperator<'_>, origin: usize, cfg: &SolverConfig) -> Result<NewsfeedWall> {
    cfg.validate()?;
    let n = op.num_nodes();
    if origin >= n {
        return Err(Error::NodeOutOfRange {
            index: origin,
            num_nodes: n,
        });
    }
    let (mut b, mut p, mut next) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let run = iterate_origin(op, origin, cfg, &mut b, &mut p, &mut next);
    let q = wall_from_newsfeed(op, origin, &p);
    Ok(NewsfeedWall {
        origin,
        p,
        q,
        iterations: run.iterations,
        matvecs: run.matvecs,
        gap: run.gap,
        converged: run.converged,
    })
}

/// psi by running Power-NF for every origin, sequentially.
pub fn psi_via_power_nf(op: &PsiOperator<'_>, cfg: &SolverConfig) -> Result<SolverResult> {
    psi_via_power_nf_with(op, cfg, NfOptions::default()).map(|(r, _)| r)
}

/// psi by running Power-NF for every origin.
///
/// `iterations` in the result is the largest per-origin iteration count;
/// `matvecs` sums all origins. Per-origin vectors are returned only when
/// `opts.retain` is set.
pub fn psi_via_power_nf_with(
    op: &PsiOperator<'_>,
    cfg: &SolverConfig,
    opts: NfOptions,
) -> Result<(SolverResult, Option<Vec<NewsfeedWall>>)> {
    cfg.validate()?;
    let n = op.num_nodes();
    let start = Instant::now();

    let solve_one = |bufs: &mut (Vec<f64>, Vec<f64>, Vec<f64>), origin: usize| {
        let (b, p, next) = bufs;
        let run = iterate_origin(op, origin, cfg, b, p, next);
        let psi = psi_entry(op, origin, p);
        let kept = opts.retain.then(|| NewsfeedWall {
            origin,
            p: p.clone(),
            q: wall_from_newsfeed(op, origin, p),
            iterations: run.iterations,
            matvecs: run.matvecs,
            gap: run.gap,
            converged: run.converged,
        });
        (psi, run, kept)
    };
    let buffers = || (vec![0.0; n], vec![0.0; n], vec![0.0; n]);

    let runs: Vec<(f64, OriginRun, Option<NewsfeedWall>)> = if opts.parallel {
        (0..n)
            .into_par_iter()
            .map_init(buffers, solve_one)
            .collect()
    } else {
        let mut bufs = buffers();
        (0..n).map(|origin| solve_one(&mut bufs, origin)).collect()
    };

    let mut psi = Vec::with_capacity(n);
    let mut gap_history = Vec::with_capacity(n);
    let mut walls = opts.retain.then(|| Vec::with_capacity(n));
    let mut matvecs = MatvecCounter::default();
    let mut iterations = 0;
    let mut converged = true;
    for (value, run, kept) in runs {
        psi.push(value);
        gap_history.push(run.gap);
        matvecs.a += run.matvecs;
        iterations = iterations.max(run.iterations);
        converged &= run.converged;
        if let (Some(walls), Some(w)) = (walls.as_mut(), kept) {
            walls.push(w);
        }
    }

    Ok((
        SolverResult {
            psi,
            iterations,
            matvecs,
            gap_history,
            wall_seconds: start.elapsed().as_secs_f64(),
            converged,
        },
        walls,
    ))
}
