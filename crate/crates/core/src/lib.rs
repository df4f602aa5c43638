//! psi-score influence ranking for directed follower/leader graphs.
//!
//! A user's psi-score is the average, over all walls in the network, of the
//! expected share of posts that originate from that user. It depends on the
//! follow graph and on each user's posting rate `lambda` and re-posting rate
//! `mu`; with equal rates for everyone it coincides with PageRank.
//!
//! The main entry point is [`solvers::power_psi`], which evaluates the score
//! with one power-iteration series instead of one linear system per user:
//!
//! ```
//! use psi_score::{parse_edge_list_str, power_psi, ActivityProfile, PsiOperator, SolverConfig};
//!
//! let graph = parse_edge_list_str("0 1\n").unwrap().graph;
//! let activity = ActivityProfile::homogeneous(2, 0.5, 0.5).unwrap();
//! let op = PsiOperator::new(&graph, &activity).unwrap();
//! let res = power_psi(&op, &SolverConfig::with_tolerance(1e-12)).unwrap();
//! assert_eq!(res.psi, vec![0.25, 0.375]);
//! ```

pub mod activity;
pub mod bench;
pub mod cli;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod operator;
pub mod solvers;
pub mod synth;

pub use activity::{load_activity, save_activity, ActivityProfile};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, parse_edge_list_str, write_edge_list, DirectedGraph};
pub use metrics::{rank_vector, relative_error, RankedNode};
pub use operator::{MatvecCounter, PsiOperator};
pub use solvers::{
    exact_psi, pagerank_power, power_nf, power_psi, psi_via_power_nf, NewsfeedWall, SolverConfig,
    SolverResult,
};
