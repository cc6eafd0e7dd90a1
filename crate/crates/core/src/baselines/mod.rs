//! Comparison estimators, run through the same oracle and ledger as TETRIS.
//!
//! Every baseline that needs the edge count uses the collision estimator on
//! its own walk, unless [`RunOptions::exact_edges`] overrides it.

mod rws;
mod serwc;
mod srw;
mod vertex_mcmc;
mod wedge;

pub use rws::rws;
pub use serwc::serwc;
pub use srw::srw;
pub use vertex_mcmc::{mh_acceptance, vertex_mcmc};
pub use wedge::{mh_wedge_count_estimate, wedge_count_estimate};

use crate::error::{Error, Result};
use crate::oracle::QueryLedger;
use crate::tetris::{edge_count_estimator, EstimatorConfig, RunOptions};
use crate::walk::WalkTrace;

#[derive(Clone, Debug, PartialEq)]
pub enum Diagnostics {
    VertexMcmc {
        /// Fraction of sampled wedges that closed.
        success_probability: f64,
        wedge_samples: u64,
        wedges_closed: u64,
        wedges_hat: f64,
        accepted_moves: u64,
        proposals: u64,
        neighbor_draws: u64,
    },
    Srw {
        triples_tested: u64,
        triples_closed: u64,
        weight_sum: u64,
        m_bar: f64,
    },
    Rws {
        /// Triangles in the sampled subgraph (multiplicity-weighted in the
        /// multigraph variant).
        subgraph_triangles: u64,
        distinct_edges: usize,
        sample_probability: f64,
        clamped: bool,
        m_bar: f64,
    },
    Serwc {
        incident_sum: u64,
        m_bar: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineOutput {
    pub estimate: f64,
    pub ledger: QueryLedger,
    pub diagnostics: Diagnostics,
}

pub(crate) fn require_length(cfg: &EstimatorConfig, min_r: usize, name: &str) -> Result<()> {
    if cfg.r < min_r {
        return Err(Error::InvalidConfig(format!(
            "{name} needs a walk of at least {min_r} steps, got {}",
            cfg.r
        )));
    }
    Ok(())
}

pub(crate) fn edge_count(
    trace: &WalkTrace,
    cfg: &EstimatorConfig,
    opts: &RunOptions,
) -> Result<f64> {
    match opts.exact_edges {
        Some(m) => Ok(m),
        None => edge_count_estimator(trace, cfg.t_hat_mix),
    }
}
