use std::time::Instant;

use super::{l1_distance, SolverConfig, SolverResult};
use crate::error::Result;
use crate::operator::{MatvecCounter, PsiOperator};

/// Step-by-step evaluation of the truncated series `s_t = sum_{k<=t} c^T A^k`.
///
/// Starts at `s_0 = c`; each [`step`](Self::step) performs one left product
/// with `A` and returns `||s_t - s_{t-1}||_1`.
#[derive(Debug, Clone)]
pub struct PowerPsiIter<'a, 'g> {
    op: &'a PsiOperator<'g>,
    s: Vec<f64>,
    next: Vec<f64>,
    counter: MatvecCounter,
    iterations: usize,
}

impl<'a, 'g> PowerPsiIter<'a, 'g> {
    pub fn new(op: &'a PsiOperator<'g>) -> Self {
        PowerPsiIter {
            op,
            s: op.c().to_vec(),
            next: vec![0.0; op.num_nodes()],
            counter: MatvecCounter::default(),
            iterations: 0,
        }
    }

    pub fn step(&mut self) -> f64 {
        self.op
            .apply_a_left_into(&self.s, &mut self.next, &mut self.counter)
            .expect("iterate length matches operator");
        for (x, &c) in self.next.iter_mut().zip(self.op.c()) {
            *x += c;
        }
        let eps = l1_distance(&self.next, &self.s);
        std::mem::swap(&mut self.s, &mut self.next);
        self.iterations += 1;
        eps
    }

    pub fn series(&self) -> &[f64] {
        &self.s
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn matvecs(&self) -> MatvecCounter {
        self.counter
    }

    /// psi for the current truncation. Costs one product with `B`, which is
    /// not added to this iterator's counter.
    pub fn psi(&self) -> Vec<f64> {
        psi_from_series(self.op, &self.s, &mut MatvecCounter::default())
    }
}

/// `psi = (s^T B + d^T) / N`.
pub fn psi_from_series(op: &PsiOperator<'_>, s: &[f64], counter: &mut MatvecCounter) -> Vec<f64> {
    let n = op.num_nodes() as f64;
    let mut psi = op
        .apply_b_left(s, counter)
        .expect("series length matches operator");
    for (x, &d) in psi.iter_mut().zip(op.d()) {
        *x = (*x + d) / n;
    }
    psi
}

/// Power-psi: iterates the series until `||B||_1 * ||s_t - s_{t-1}||_1` drops
/// to the tolerance, so consecutive psi iterates differ by at most
/// `tolerance / N` in L1. Hitting `max_iterations` returns the current
/// estimate with `converged = false`.
pub fn power_psi(op: &PsiOperator<'_>, cfg: &SolverConfig) -> Result<SolverResult> {
    cfg.validate()?;
    let start = Instant::now();
    let b_norm = op.b_norm();
    let mut it = PowerPsiIter::new(op);
    let mut gap_history = Vec::new();
    let mut converged = false;
    while it.iterations() < cfg.max_iterations {
        let gap = b_norm * it.step();
        gap_history.push(gap);
        if gap <= cfg.tolerance {
            converged = true;
            break;
        }
    }
    let mut matvecs = it.matvecs();
    let psi = psi_from_series(op, it.series(), &mut matvecs);
    Ok(SolverResult {
        psi,
        iterations: it.iterations(),
        matvecs,
        gap_history,
        wall_seconds: start.elapsed().as_secs_f64(),
        converged,
    })
}
