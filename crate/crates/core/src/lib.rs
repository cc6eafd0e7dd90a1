//! Sublinear triangle counting from random-walk access.
//!
//! The estimators only see a graph through an [`OracleSession`]: a seed
//! vertex, uniform random neighbors, degrees, and edge membership. Every
//! request is tallied in a [`QueryLedger`], so query budgets can be compared
//! across algorithms on equal terms.
//!
//! ```
//! use tetris_core::{generate, tetris_estimate, EstimatorConfig, RunOptions};
//!
//! let g = generate::complete(6);
//! let cfg = EstimatorConfig::new(2000, 200, 5).with_rng_seed(1);
//! let opts = RunOptions { exact_edges: Some(15.0), ..RunOptions::default() };
//! let out = tetris_estimate(&g, &cfg, &opts).unwrap();
//! assert!((out.estimate - 20.0).abs() < 8.0);
//! assert_eq!(out.ledger.countable_queries(), 2000 + 2 * 200);
//! ```

pub mod baselines;
mod error;
mod estimator;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod tetris;
pub mod walk;

pub use baselines::{BaselineOutput, Diagnostics};
pub use error::{Error, Result};
pub use estimator::{Algorithm, Estimate};
pub use graph::{exact_triangle_count, load_edge_list, Graph, GraphStats, VertexId};
pub use oracle::{OracleSession, QueryLedger, RNG_ALGORITHM};
pub use tetris::{
    edge_count_estimator, plan_parameters, tetris_estimate, EstimatorConfig, RunOptions,
    TetrisOutput,
};
pub use walk::{random_walk, WalkTrace, WeightedIndexSampler};
