//! Command-line front end.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::activity::{load_activity, save_activity, ActivityProfile};
use crate::bench::{parse_tolerances, tolerance_sweep, Method, Reference, SweepConfig};
use crate::error::Error;
use crate::graph::{parse_edge_list_with, DirectedGraph, EdgeListOptions};
use crate::metrics::rank_vector;
use crate::operator::PsiOperator;
use crate::solvers::{
    exact_psi, pagerank_power, power_psi, psi_via_power_nf_with, NfOptions, SolverConfig,
    SolverResult, DEFAULT_DENSE_CAP, DEFAULT_MAX_ITERATIONS,
};

pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

/// Graphs above this size get a cost warning when ranked with power-nf.
pub const POWER_NF_WARN_NODES: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "psi-score",
    version,
    about = "Rank social-network users by psi-score"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank users by psi-score.
    Rank(RankArgs),
    /// Rank users by PageRank (follower-to-leader walk).
    Pagerank(PagerankArgs),
    /// Sweep tolerances and report cost and error per method.
    Bench(BenchArgs),
    /// Write an activity CSV (label,lambda,mu).
    GenActivity(GenActivityArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list, one `follower leader` pair per line.
    #[arg(long, value_name = "PATH")]
    pub edges: PathBuf,
    /// Ignore columns after the second (KONECT weights/timestamps).
    #[arg(long)]
    pub extra_columns: bool,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct ActivityArgs {
    /// Activity CSV with `label,lambda,mu` rows.
    #[arg(long, value_name = "PATH")]
    pub activity: Option<PathBuf>,
    /// Same rates for every user [default: 0.15 0.85].
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"])]
    pub homogeneous: Option<Vec<f64>>,
    /// Rates drawn uniformly from (0, 1) with this seed.
    #[arg(long, value_name = "SEED")]
    pub random_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Stop once the L1 convergence gap falls to this value.
    #[arg(long = "tol", default_value = "1e-9", value_parser = parse_positive)]
    pub tolerance: f64,
    /// Iteration cap; hitting it exits with status 4.
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RankMethod {
    PowerPsi,
    PowerNf,
    Exact,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub activity: ActivityArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Solver to run.
    #[arg(long, value_enum, default_value_t = RankMethod::PowerPsi)]
    pub method: RankMethod,
    /// Largest graph accepted by the exact method.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
    /// Solve power-nf origins on all cores.
    #[arg(long)]
    pub parallel: bool,
    /// Output CSV [default: stdout].
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PagerankArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Damping factor in (0, 1).
    #[arg(long, default_value_t = 0.85, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Output CSV [default: stdout].
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceArg {
    Exact,
    Tightest,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub activity: ActivityArgs,
    /// Comma-separated: power-psi, power-nf, pagerank.
    #[arg(long, value_delimiter = ',', default_value = "power-psi,power-nf")]
    pub methods: Vec<Method>,
    /// Decade range `HI:LO` or a comma-separated list.
    #[arg(long, default_value = "1e-1:1e-9")]
    pub tolerances: String,
    /// Ground truth: dense solve, or power-psi at 1e-12.
    #[arg(long, value_enum, default_value_t = ReferenceArg::Exact)]
    pub reference: ReferenceArg,
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85, value_parser = parse_alpha)]
    pub alpha: f64,
    /// Iteration cap per run.
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
    /// Largest graph accepted by the exact reference.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
    /// Run sweep cells concurrently (timings become incomparable).
    #[arg(long)]
    pub parallel_cells: bool,
    /// Output CSV [default: stdout].
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenActivityArgs {
    /// Take node labels from this edge list.
    #[arg(
        long,
        value_name = "PATH",
        required_unless_present = "nodes",
        conflicts_with = "nodes"
    )]
    pub edges: Option<PathBuf>,
    /// Use labels 0..N-1.
    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,
    /// Ignore columns after the second in the edge list.
    #[arg(long)]
    pub extra_columns: bool,
    /// Draw rates uniformly from (0, 1) with this seed.
    #[arg(
        long,
        value_name = "SEED",
        required_unless_present = "homogeneous",
        conflicts_with = "homogeneous"
    )]
    pub seed: Option<u64>,
    /// Same rates for every node.
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"])]
    pub homogeneous: Option<Vec<f64>>,
    /// Output CSV [default: stdout].
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("alpha must lie in (0, 1), got {v}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

/// Failure of a command, with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Io(_) => EXIT_IO,
            Error::InvalidParameter(_) | Error::DenseCapExceeded { .. } => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

fn io_error(path: &Path, err: io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {err}", path.display()),
    }
}

/// Runs one command. `Ok(code)` is 0 on success or [`EXIT_NOT_CONVERGED`]
/// when output was written from a solver that hit its iteration cap.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Rank(args) => cmd_rank(&args),
        Command::Pagerank(args) => cmd_pagerank(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::GenActivity(args) => cmd_gen_activity(&args),
    }
}

fn load_graph(path: &Path, extra_columns: bool) -> Result<DirectedGraph, CliError> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let opts = EdgeListOptions {
        allow_extra_columns: extra_columns,
    };
    let parsed = parse_edge_list_with(BufReader::new(file), opts).map_err(|e| match e {
        Error::Io(io) => io_error(path, io),
        other => CliError {
            code: EXIT_DATA,
            message: format!("{}: {other}", path.display()),
        },
    })?;
    Ok(parsed.graph)
}

fn resolve_activity(
    args: &ActivityArgs,
    graph: &DirectedGraph,
) -> Result<ActivityProfile, CliError> {
    let n = graph.num_nodes();
    if let Some(path) = &args.activity {
        let file = File::open(path).map_err(|e| io_error(path, e))?;
        return load_activity(BufReader::new(file), graph).map_err(|e| CliError {
            code: if matches!(e, Error::Io(_)) {
                EXIT_IO
            } else {
                EXIT_DATA
            },
            message: format!("{}: {e}", path.display()),
        });
    }
    if let Some(seed) = args.random_seed {
        return Ok(ActivityProfile::random_uniform(n, seed)?);
    }
    let (lambda, mu) = match args.homogeneous.as_deref() {
        Some(&[l, m]) => (l, m),
        _ => (0.15, 0.85),
    };
    ActivityProfile::homogeneous(n, lambda, mu).map_err(|e| CliError::usage(e.to_string()))
}

fn describe_activity(args: &ActivityArgs) -> String {
    if let Some(path) = &args.activity {
        format!("file {}", path.display())
    } else if let Some(seed) = args.random_seed {
        format!("random uniform (0,1), seed {seed}")
    } else {
        match args.homogeneous.as_deref() {
            Some(&[l, m]) => format!("homogeneous lambda={l} mu={m}"),
            _ => "homogeneous lambda=0.15 mu=0.85".into(),
        }
    }
}

fn with_output<F>(path: Option<&Path>, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> crate::error::Result<()>,
{
    let map = |e: Error, p: Option<&Path>| match (e, p) {
        (Error::Io(io), Some(p)) => io_error(p, io),
        (e, _) => CliError::from(e),
    };
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_error(p, e))?;
            let mut out = BufWriter::new(file);
            write(&mut out).map_err(|e| map(e, Some(p)))?;
            out.flush().map_err(|e| io_error(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out).map_err(|e| map(e, None))?;
            out.flush().map_err(|e| CliError {
                code: EXIT_IO,
                message: e.to_string(),
            })
        }
    }
}

/// Writes a `label,<score_name>,rank` CSV. Scores carry 17 significant digits.
pub fn write_ranking<W: Write + ?Sized>(
    out: &mut W,
    graph: &DirectedGraph,
    scores: &[f64],
    score_name: &str,
    not_converged_after: Option<usize>,
) -> crate::error::Result<()> {
    let ranked = rank_vector(scores, graph.labels())?;
    if let Some(iters) = not_converged_after {
        writeln!(out, "# not converged after {iters} iterations")?;
    }
    writeln!(out, "label,{score_name},rank")?;
    for r in ranked {
        writeln!(out, "{},{:.16e},{}", r.label, r.score, r.rank)?;
    }
    Ok(())
}

fn summarize(graph: &DirectedGraph, method: &str, res: &SolverResult) {
    eprintln!(
        "nodes={} edges={} method={} iterations={} matvecs={} seconds={:.6} converged={}",
        graph.num_nodes(),
        graph.num_edges(),
        method,
        res.iterations,
        res.matvec_count(),
        res.wall_seconds,
        res.converged
    );
}

fn finish(res: &SolverResult) -> i32 {
    if res.converged {
        0
    } else {
        eprintln!(
            "error: solver did not converge within {} iterations",
            res.iterations
        );
        EXIT_NOT_CONVERGED
    }
}

pub fn cmd_rank(args: &RankArgs) -> Result<i32, CliError> {
    let graph = load_graph(&args.graph.edges, args.graph.extra_columns)?;
    let activity = resolve_activity(&args.activity, &graph)?;
    let op = PsiOperator::new(&graph, &activity)?;
    let cfg = SolverConfig {
        tolerance: args.solver.tolerance,
        max_iterations: args.solver.max_iterations,
    };
    cfg.validate()?;

    let (res, name) = match args.method {
        RankMethod::PowerPsi => (power_psi(&op, &cfg)?, "power-psi"),
        RankMethod::PowerNf => {
            if graph.num_nodes() > POWER_NF_WARN_NODES {
                log::warn!(
                    "power-nf solves one system per node ({} systems); expect a long run",
                    graph.num_nodes()
                );
            }
            let opts = NfOptions {
                parallel: args.parallel,
                retain: false,
            };
            (psi_via_power_nf_with(&op, &cfg, opts)?.0, "power-nf")
        }
        RankMethod::Exact => {
            let start = std::time::Instant::now();
            let psi = exact_psi(&op, args.dense_cap)?;
            let res = SolverResult {
                psi,
                iterations: 0,
                matvecs: Default::default(),
                gap_history: Vec::new(),
                wall_seconds: start.elapsed().as_secs_f64(),
                converged: true,
            };
            (res, "exact")
        }
    };

    let flag = (!res.converged).then_some(res.iterations);
    with_output(args.output.as_deref(), |out| {
        write_ranking(out, &graph, &res.psi, "psi", flag)
    })?;
    summarize(&graph, name, &res);
    Ok(finish(&res))
}

pub fn cmd_pagerank(args: &PagerankArgs) -> Result<i32, CliError> {
    let graph = load_graph(&args.graph.edges, args.graph.extra_columns)?;
    let cfg = SolverConfig {
        tolerance: args.solver.tolerance,
        max_iterations: args.solver.max_iterations,
    };
    let res = pagerank_power(&graph, args.alpha, &cfg)?;
    let flag = (!res.converged).then_some(res.iterations);
    with_output(args.output.as_deref(), |out| {
        write_ranking(out, &graph, &res.psi, "pagerank", flag)
    })?;
    summarize(&graph, "pagerank", &res);
    Ok(finish(&res))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let tolerances =
        parse_tolerances(&args.tolerances).map_err(|e| CliError::usage(e.to_string()))?;
    let graph = load_graph(&args.graph.edges, args.graph.extra_columns)?;
    let activity = resolve_activity(&args.activity, &graph)?;
    let cfg = SweepConfig {
        methods: args.methods.clone(),
        tolerances,
        reference: match args.reference {
            ReferenceArg::Exact => Reference::Exact,
            ReferenceArg::Tightest => Reference::TightestRun,
        },
        alpha: args.alpha,
        max_iterations: args.max_iterations,
        dense_cap: args.dense_cap,
        parallel_cells: args.parallel_cells,
    };
    let mut report = tolerance_sweep(&graph, &activity, &cfg)?;
    report
        .notes
        .insert(0, format!("graph: {}", args.graph.edges.display()));
    report.notes.insert(
        1,
        format!("activity: {}", describe_activity(&args.activity)),
    );
    with_output(args.output.as_deref(), |out| report.write_csv(out))?;

    let stalled = report.rows.iter().filter(|r| !r.converged).count();
    if stalled > 0 {
        eprintln!("warning: {stalled} sweep cell(s) hit the iteration cap");
    }
    Ok(0)
}

pub fn cmd_gen_activity(args: &GenActivityArgs) -> Result<i32, CliError> {
    let graph = match (&args.edges, args.nodes) {
        (Some(path), _) => load_graph(path, args.extra_columns)?,
        (None, Some(n)) if n > 0 => DirectedGraph::from_index_edges(n, std::iter::empty())?.0,
        _ => {
            return Err(CliError::usage(
                "need --edges PATH or --nodes N with N >= 1",
            ))
        }
    };
    let n = graph.num_nodes();
    let profile = match (args.seed, args.homogeneous.as_deref()) {
        (Some(seed), _) => ActivityProfile::random_uniform(n, seed)?,
        (None, Some(&[l, m])) => {
            ActivityProfile::homogeneous(n, l, m).map_err(|e| CliError::usage(e.to_string()))?
        }
        _ => {
            return Err(CliError::usage(
                "need --seed SEED or --homogeneous LAMBDA MU",
            ))
        }
    };
    with_output(args.output.as_deref(), |out| {
        save_activity(&profile, &graph, out)
    })?;
    Ok(0)
}
