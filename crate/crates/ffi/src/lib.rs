//! C ABI over the `psi-score` library.
//!
//! Graphs, activity profiles and results are opaque heap handles returned
//! through out-pointers and released with the matching `*_free` function. Every fallible call returns a [`PsiStatus`]; on failure a
//! description is available from [`psi_last_error_message`] on the same
//! thread. Panics never cross the boundary and surface as
//! `PSI_STATUS_PANIC`.
//!
//! The generated header lives at `include/psi_score.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use psi_score::solvers::{psi_via_power_nf, DEFAULT_DENSE_CAP};
use psi_score::{
    exact_psi, pagerank_power, parse_edge_list, parse_edge_list_str, power_psi, ActivityProfile,
    DirectedGraph, Error, PsiOperator, SolverConfig, SolverResult,
};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A numeric argument, array length or string was rejected.
    InvalidArgument = 2,
    /// Malformed edge list input.
    Parse = 3,
    /// A file could not be opened or read.
    Io = 4,
    /// The exact solver was asked for a graph above its size cap.
    DenseCapExceeded = 5,
    /// The dense linear system could not be factorized.
    Singular = 6,
    /// An internal panic was caught.
    Panic = 7,
}

/// Solver selected by [`psi_compute`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMethod {
    PowerPsi = 0,
    PowerNf = 1,
    Exact = 2,
}

/// Opaque follower graph.
pub struct PsiGraph {
    inner: DirectedGraph,
}

/// Opaque per-node posting and re-posting rates.
pub struct PsiActivity {
    inner: ActivityProfile,
}

/// Opaque solver output.
pub struct PsiResult {
    scores: Vec<f64>,
    iterations: usize,
    matvecs: u64,
    converged: bool,
}

struct Failure {
    status: PsiStatus,
    message: String,
}

impl Failure {
    fn new(status: PsiStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Failure::new(PsiStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::Parse { .. } | Error::EmptyGraph => PsiStatus::Parse,
            Error::Io(_) => PsiStatus::Io,
            Error::DenseCapExceeded { .. } => PsiStatus::DenseCapExceeded,
            Error::Singular => PsiStatus::Singular,
            _ => PsiStatus::InvalidArgument,
        };
        Failure::new(status, err.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn guard<F>(f: F) -> PsiStatus
where
    F: FnOnce() -> Result<(), Failure> + UnwindSafe,
{
    clear_last_error();
    match catch_unwind(f) {
        Ok(Ok(())) => PsiStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(fail.message);
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            PsiStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(name))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn c_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::new(
            PsiStatus::InvalidArgument,
            format!("{name} is not valid UTF-8"),
        )
    })
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn solver_config(tolerance: f64, max_iterations: usize) -> SolverConfig {
    SolverConfig {
        tolerance,
        max_iterations,
    }
}

impl From<SolverResult> for PsiResult {
    fn from(r: SolverResult) -> Self {
        PsiResult {
            matvecs: r.matvec_count(),
            scores: r.psi,
            iterations: r.iterations,
            converged: r.converged,
        }
    }
}

/// Message describing the last failure on the calling thread, or null if
/// the last call succeeded. The pointer stays valid until the next call
/// into this library from the same thread.
#[no_mangle]
pub extern "C" fn psi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn psi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an edge list held in memory (one `follower leader` pair per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_from_edge_list(
    text: *const c_char,
    out: *mut *mut PsiGraph,
) -> PsiStatus {
    guard(|| {
        let text = c_str(text, "text")?;
        let parsed = parse_edge_list_str(text)?;
        store(
            out,
            PsiGraph {
                inner: parsed.graph,
            },
        )
    })
}

/// Reads an edge list from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_from_file(
    path: *const c_char,
    out: *mut *mut PsiGraph,
) -> PsiStatus {
    guard(|| {
        let path = c_str(path, "path")?;
        let file =
            File::open(path).map_err(|e| Failure::new(PsiStatus::Io, format!("{path}: {e}")))?;
        let parsed = parse_edge_list(BufReader::new(file))?;
        store(
            out,
            PsiGraph {
                inner: parsed.graph,
            },
        )
    })
}

/// Builds a graph on nodes `0..num_nodes` from parallel arrays of
/// `(follower, leader)` indices. Self-loops and duplicates are dropped.
///
/// # Safety
/// `followers` and `leaders` must each point to `num_edges` elements.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_from_edges(
    num_nodes: usize,
    followers: *const usize,
    leaders: *const usize,
    num_edges: usize,
    out: *mut *mut PsiGraph,
) -> PsiStatus {
    guard(|| {
        let f = slice(followers, num_edges, "followers")?;
        let l = slice(leaders, num_edges, "leaders")?;
        let (graph, _) =
            DirectedGraph::from_index_edges(num_nodes, f.iter().copied().zip(l.iter().copied()))?;
        store(out, PsiGraph { inner: graph })
    })
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_num_nodes(graph: *const PsiGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.num_nodes())
}

/// Number of distinct edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_num_edges(graph: *const PsiGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.num_edges())
}

/// Copies the node labels (in index order) into `out`, which must hold at
/// least `psi_graph_num_nodes` elements.
///
/// # Safety
/// `graph` must be a live handle and `out` must point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_labels(
    graph: *const PsiGraph,
    out: *mut u64,
    len: usize,
) -> PsiStatus {
    guard(|| {
        let labels = deref(graph, "graph")?.inner.labels();
        copy_out(labels, out, len)
    })
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psi_graph_free(graph: *mut PsiGraph) {
    free(graph)
}

/// Same rates for every node.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_activity_homogeneous(
    num_nodes: usize,
    lambda: f64,
    mu: f64,
    out: *mut *mut PsiActivity,
) -> PsiStatus {
    guard(|| {
        let inner = ActivityProfile::homogeneous(num_nodes, lambda, mu)?;
        store(out, PsiActivity { inner })
    })
}

/// Rates drawn uniformly from (0, 1) with a seeded generator.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_activity_random(
    num_nodes: usize,
    seed: u64,
    out: *mut *mut PsiActivity,
) -> PsiStatus {
    guard(|| {
        let inner = ActivityProfile::random_uniform(num_nodes, seed)?;
        store(out, PsiActivity { inner })
    })
}

/// Rates copied from two arrays of length `num_nodes`, indexed like the graph.
///
/// # Safety
/// `lambda` and `mu` must each point to `num_nodes` elements.
#[no_mangle]
pub unsafe extern "C" fn psi_activity_from_arrays(
    lambda: *const f64,
    mu: *const f64,
    num_nodes: usize,
    out: *mut *mut PsiActivity,
) -> PsiStatus {
    guard(|| {
        let l = slice(lambda, num_nodes, "lambda")?.to_vec();
        let m = slice(mu, num_nodes, "mu")?.to_vec();
        let inner = ActivityProfile::new(l, m)?;
        store(out, PsiActivity { inner })
    })
}

/// # Safety
/// `activity` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psi_activity_free(activity: *mut PsiActivity) {
    free(activity)
}

/// Computes the psi-score of every node. `tolerance` and `max_iterations`
/// are ignored by the exact solver, which is limited to small graphs.
///
/// # Safety
/// `graph` and `activity` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_compute(
    graph: *const PsiGraph,
    activity: *const PsiActivity,
    method: PsiMethod,
    tolerance: f64,
    max_iterations: usize,
    out: *mut *mut PsiResult,
) -> PsiStatus {
    guard(|| {
        let graph = &deref(graph, "graph")?.inner;
        let activity = &deref(activity, "activity")?.inner;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let op = PsiOperator::new(graph, activity)?;
        let cfg = solver_config(tolerance, max_iterations);
        let result = match method {
            PsiMethod::PowerPsi => power_psi(&op, &cfg)?.into(),
            PsiMethod::PowerNf => psi_via_power_nf(&op, &cfg)?.into(),
            PsiMethod::Exact => PsiResult {
                scores: exact_psi(&op, DEFAULT_DENSE_CAP)?,
                iterations: 0,
                matvecs: 0,
                converged: true,
            },
        };
        store(out, result)
    })
}

/// PageRank with damping `alpha` in (0, 1).
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn psi_pagerank(
    graph: *const PsiGraph,
    alpha: f64,
    tolerance: f64,
    max_iterations: usize,
    out: *mut *mut PsiResult,
) -> PsiStatus {
    guard(|| {
        let graph = &deref(graph, "graph")?.inner;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let res = pagerank_power(graph, alpha, &solver_config(tolerance, max_iterations))?;
        store(out, PsiResult::from(res))
    })
}

/// Number of scores, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_result_len(result: *const PsiResult) -> usize {
    result.as_ref().map_or(0, |r| r.scores.len())
}

/// Copies the scores (in node index order) into `out`.
///
/// # Safety
/// `result` must be a live handle and `out` must point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn psi_result_scores(
    result: *const PsiResult,
    out: *mut f64,
    len: usize,
) -> PsiStatus {
    guard(|| copy_out(&deref(result, "result")?.scores, out, len))
}

/// Iterations performed (0 for the exact solver or a null handle).
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_result_iterations(result: *const PsiResult) -> usize {
    result.as_ref().map_or(0, |r| r.iterations)
}

/// Sparse matrix-vector products performed.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_result_matvecs(result: *const PsiResult) -> u64 {
    result.as_ref().map_or(0, |r| r.matvecs)
}

/// Whether the stopping rule was met before the iteration cap.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psi_result_converged(result: *const PsiResult) -> bool {
    result.as_ref().is_some_and(|r| r.converged)
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psi_result_free(result: *mut PsiResult) {
    free(result)
}

unsafe fn copy_out<T: Copy>(src: &[T], out: *mut T, len: usize) -> Result<(), Failure> {
    if len < src.len() {
        return Err(Failure::new(
            PsiStatus::InvalidArgument,
            format!("buffer holds {len} elements, {} needed", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}
