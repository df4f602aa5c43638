//! Tolerance sweeps: run each method at a grid of tolerances and record its
//! cost (operator applications, iterations, wall time) and its relative
//! error against a reference psi.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::activity::ActivityProfile;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::metrics::relative_error;
use crate::operator::PsiOperator;
use crate::solvers::{
    exact_psi, pagerank_power, power_psi, psi_via_power_nf, SolverConfig, SolverResult,
    DEFAULT_DENSE_CAP, DEFAULT_MAX_ITERATIONS,
};

/// Tolerance of the Power-psi run used as reference when the graph is too
/// large for the dense solve.
pub const TIGHTEST_RUN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    PageRank,
    PowerNf,
    PowerPsi,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::PageRank => "pagerank",
            Method::PowerNf => "power-nf",
            Method::PowerPsi => "power-psi",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pagerank" => Ok(Method::PageRank),
            "power-nf" => Ok(Method::PowerNf),
            "power-psi" => Ok(Method::PowerPsi),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Dense LU solve; requires `N <= dense_cap`.
    Exact,
    /// Power-psi at [`TIGHTEST_RUN_TOLERANCE`].
    TightestRun,
}

impl Reference {
    pub fn name(self) -> &'static str {
        match self {
            Reference::Exact => "exact",
            Reference::TightestRun => "tightest-run",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub methods: Vec<Method>,
    pub tolerances: Vec<f64>,
    pub reference: Reference,
    /// Damping factor for the PageRank method.
    pub alpha: f64,
    pub max_iterations: usize,
    pub dense_cap: usize,
    /// Run cells concurrently. Timings are then not comparable.
    pub parallel_cells: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            methods: vec![Method::PowerPsi, Method::PowerNf],
            tolerances: decade_grid(1, 9),
            reference: Reference::Exact,
            alpha: 0.85,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            dense_cap: DEFAULT_DENSE_CAP,
            parallel_cells: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub tolerance: f64,
    pub matvecs: u64,
    pub iterations: usize,
    pub seconds: f64,
    pub error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    /// Free-form `key: value` lines written as `#` comments.
    pub notes: Vec<String>,
    pub rows: Vec<BenchRow>,
}

pub const BENCH_CSV_HEADER: &str = "method,tolerance,matvecs,iterations,seconds,error,converged";

impl BenchReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        writeln!(out, "{BENCH_CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{:.16e},{},{},{:.16e},{:.16e},{}",
                r.method, r.tolerance, r.matvecs, r.iterations, r.seconds, r.error, r.converged
            )?;
        }
        Ok(())
    }

    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &BenchRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

/// Powers of ten `10^-first ..= 10^-last`, one per decade.
pub fn decade_grid(first: i32, last: i32) -> Vec<f64> {
    let step = if last >= first { 1 } else { -1 };
    let mut out = Vec::new();
    let mut k = first;
    loop {
        out.push(format!("1e{}", -k).parse().expect("valid float literal"));
        if k == last {
            break;
        }
        k += step;
    }
    out
}

/// Parses either a decade range `1e-1:1e-9` or a comma-separated list.
pub fn parse_tolerances(text: &str) -> Result<Vec<f64>> {
    let bad = |s: &str| Error::InvalidParameter(format!("invalid tolerance list {s:?}"));
    let tolerances: Vec<f64> = if let Some((hi, lo)) = text.split_once(':') {
        let exponent = |t: &str| -> Result<i32> {
            let v: f64 = t.trim().parse().map_err(|_| bad(text))?;
            let e = v.log10().round();
            if v <= 0.0 || (10f64.powf(e) - v).abs() > 1e-9 * v {
                return Err(bad(text));
            }
            Ok(-(e as i32))
        };
        decade_grid(exponent(hi)?, exponent(lo)?)
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad(text)))
            .collect::<Result<_>>()?
    };
    if tolerances.is_empty() || tolerances.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(bad(text));
    }
    Ok(tolerances)
}

fn run_method(
    method: Method,
    graph: &DirectedGraph,
    op: &PsiOperator<'_>,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    match method {
        Method::PowerPsi => power_psi(op, cfg),
        Method::PowerNf => psi_via_power_nf(op, cfg),
        Method::PageRank => pagerank_power(graph, alpha, cfg),
    }
}

/// Runs every `(method, tolerance)` cell and measures it against the
/// reference psi. Rows come back sorted by method name, then by tolerance
/// from loosest to tightest.
pub fn tolerance_sweep(
    graph: &DirectedGraph,
    activity: &ActivityProfile,
    cfg: &SweepConfig,
) -> Result<BenchReport> {
    if cfg.methods.is_empty() || cfg.tolerances.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one method and tolerance".into(),
        ));
    }
    for &t in &cfg.tolerances {
        SolverConfig {
            tolerance: t,
            max_iterations: cfg.max_iterations,
        }
        .validate()?;
    }
    if cfg.methods.contains(&Method::PageRank) && !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {}",
            cfg.alpha
        )));
    }
    if cfg.reference == Reference::Exact && graph.num_nodes() > cfg.dense_cap {
        return Err(Error::DenseCapExceeded {
            num_nodes: graph.num_nodes(),
            cap: cfg.dense_cap,
        });
    }

    let op = PsiOperator::new(graph, activity)?;
    let truth = match cfg.reference {
        Reference::Exact => exact_psi(&op, cfg.dense_cap)?,
        Reference::TightestRun => {
            let run = power_psi(
                &op,
                &SolverConfig {
                    tolerance: TIGHTEST_RUN_TOLERANCE,
                    max_iterations: cfg.max_iterations,
                },
            )?;
            if !run.converged {
                log::warn!("reference power-psi run did not converge");
            }
            run.psi
        }
    };

    let mut methods = cfg.methods.clone();
    methods.sort_by_key(|m| m.name());
    methods.dedup();
    let mut tolerances = cfg.tolerances.clone();
    tolerances.sort_by(|a, b| b.total_cmp(a));
    tolerances.dedup();
    let cells: Vec<(Method, f64)> = methods
        .iter()
        .flat_map(|&m| tolerances.iter().map(move |&t| (m, t)))
        .collect();

    let run_cell = |&(method, tolerance): &(Method, f64)| -> Result<BenchRow> {
        let solver_cfg = SolverConfig {
            tolerance,
            max_iterations: cfg.max_iterations,
        };
        let res = run_method(method, graph, &op, cfg.alpha, &solver_cfg)?;
        Ok(BenchRow {
            method,
            tolerance,
            matvecs: res.matvec_count(),
            iterations: res.iterations,
            seconds: res.wall_seconds,
            error: relative_error(&truth, &res.psi)?,
            converged: res.converged,
        })
    };
    let rows: Vec<BenchRow> = if cfg.parallel_cells {
        cells.par_iter().map(run_cell).collect::<Result<_>>()?
    } else {
        cells.iter().map(run_cell).collect::<Result<_>>()?
    };

    let mut notes = vec![
        format!("nodes: {}", graph.num_nodes()),
        format!("edges: {}", graph.num_edges()),
        match cfg.reference {
            Reference::Exact => "reference: exact (dense LU)".to_string(),
            Reference::TightestRun => {
                format!("reference: tightest-run (power-psi at {TIGHTEST_RUN_TOLERANCE:e})")
            }
        },
        format!("machine: {}", machine_description()),
    ];
    if cfg.parallel_cells {
        notes.push("parallel-cells: true (timings not comparable)".into());
    }
    if methods.contains(&Method::PageRank) && !pagerank_matches(activity, cfg.alpha) {
        log::warn!("pagerank errors are measured against psi under non-matching activity");
        notes.push(format!(
            "pagerank error is against psi; activity is not homogeneous with mu/(lambda+mu) = {}",
            cfg.alpha
        ));
    }
    Ok(BenchReport { notes, rows })
}

/// Whether PageRank with damping `alpha` targets the same vector as psi.
fn pagerank_matches(activity: &ActivityProfile, alpha: f64) -> bool {
    activity
        .as_homogeneous()
        .is_some_and(|(lambda, mu)| (mu / (lambda + mu) - alpha).abs() <= 1e-12)
}

pub fn machine_description() -> String {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    format!(
        "{}-{} with {threads} hardware threads",
        std::env::consts::ARCH,
        std::env::consts::OS
    )
}
