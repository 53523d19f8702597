//! Heuristics and an exact reference solver for hop-constrained connected
//! facility location.
//!
//! An [`Instance`] pairs a core graph with facilities, customers and a hop
//! limit. Solutions are encoded as a [`HarmonyVector`] of open facilities and
//! scored by an [`Evaluator`], which builds a hop-limited Steiner tree with
//! [`nrbi`], assigns customers to their cheapest open facility and closes
//! facilities left unused.
//!
//! ```
//! use hcconfl_core::{parse_tiny, hs_solve, HarmonyParams};
//!
//! let text = "3 2 1 2 1\ne 1 2 1\ne 2 3 1\nf 1 5\nf 3 1\na 1 1 9\na 3 1 1\n";
//! let instance = parse_tiny(text).unwrap();
//! let (best, _stats) = hs_solve(&instance, &HarmonyParams::default()).unwrap();
//! assert_eq!(best.total(), 9.0);
//! ```

pub mod error;
pub mod greedy;
pub mod harmony;
pub mod harness;
pub mod hop_paths;
pub mod instance;
pub mod nrbi;
pub mod objective;
pub mod oracle;
pub mod report;
pub mod tree;
pub mod validate;
pub mod vector;

#[cfg(any(test, feature = "test-util"))]
pub mod testing;

pub use error::{Error, Result};
pub use greedy::{ghs_solve, greedy_close, hybrid_solve, ClosingScores, GreedyParams};
pub use harmony::{hs_solve, HarmonyMemory, HarmonyParams, RunStats};
pub use harness::{run_once, run_repeats, RunOutcome, SolverConfig};
pub use hop_paths::{hop_bellman_ford, HopDistanceTable, HopPath, HopPathCache};
pub use instance::{
    benchmark_name, merge_instances, parse_stp, parse_tiny, parse_uflp, to_tiny, Edge, Instance, InstanceParts, NodeId,
    StpGraph, UflpData,
};
pub use nrbi::{nrbi, NrbiOptions, Phase2Reference};
pub use objective::{evaluate, CostBreakdown, Evaluator, Solution};
pub use oracle::{exact_hcst, exact_solve, HcstOptimum, OracleLimits};
pub use report::{report_csv, report_markdown, Algorithm, RunRecord};
pub use tree::{SteinerTree, TreeArc};
pub use validate::{validate, Constraint, Violation};
pub use vector::HarmonyVector;
