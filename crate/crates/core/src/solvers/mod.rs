//! psi-score and PageRank solvers.
//!
//! * [`power_psi`]: single-system recursion `s_t = s_{t-1} A + c`, then
//!   `psi = (s B + d) / N`.
//! * [`power_nf`] / [`psi_via_power_nf`]: one fixed-point solve
//!   `p_i = A p_i + b_i` per origin, mapped to walls and averaged.
//! * [`pagerank_power`]: classic power method on the follower-to-leader walk.
//! * [`exact_psi`]: dense LU solve, used as ground truth on small graphs.

mod exact;
mod pagerank;
mod power_nf;
mod power_psi;

pub use exact::{exact_psi, DEFAULT_DENSE_CAP};
pub use pagerank::pagerank_power;
pub use power_nf::{power_nf, psi_via_power_nf, psi_via_power_nf_with, NewsfeedWall, NfOptions};
pub use power_psi::{power_psi, psi_from_series, PowerPsiIter};

use crate::error::{Error, Result};
use crate::operator::MatvecCounter;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

/// Termination settings shared by the iterative solvers. Gaps are measured
/// in the L1 norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

impl SolverConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SolverConfig {
            tolerance,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive and finite, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub psi: Vec<f64>,
    pub iterations: usize,
    pub matvecs: MatvecCounter,
    /// Termination-rule value after each iteration. For the N-system solver
    /// this holds the final gap of each origin instead, indexed by origin.
    pub gap_history: Vec<f64>,
    pub wall_seconds: f64,
    pub converged: bool,
}

impl SolverResult {
    /// All operator applications (`A` and `B`, or `W` for PageRank).
    pub fn matvec_count(&self) -> u64 {
        self.matvecs.total()
    }
}

pub(crate) fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
