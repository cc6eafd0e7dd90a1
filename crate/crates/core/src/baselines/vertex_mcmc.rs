use rand::Rng;

use super::{require_length, BaselineOutput, Diagnostics};
use crate::baselines::wedge::mh_wedge_count_estimate;
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::oracle::OracleSession;
use crate::tetris::{EstimatorConfig, RunOptions};

fn wedges_at(d: usize) -> f64 {
    (d * d.saturating_sub(1) / 2) as f64
}

/// Metropolis-Hastings acceptance for moving from a vertex of degree
/// `d_current` to a proposed neighbor of degree `d_proposed`, targeting
/// `π(v) ∝ C(d(v), 2)`.
pub fn mh_acceptance(d_current: usize, d_proposed: usize) -> f64 {
    let here = wedges_at(d_current);
    if here == 0.0 {
        return 1.0;
    }
    (wedges_at(d_proposed) * d_current as f64 / (here * d_proposed as f64)).min(1.0)
}

/// Wedge-sampling Metropolis-Hastings walk.
///
/// Each of the `r` steps proposes a uniform neighbor and accepts it with
/// [`mh_acceptance`]; then, if the current vertex has degree at least 2, two
/// distinct uniform neighbors are drawn (the second redrawn until it differs)
/// and their pair is edge-queried. The closed fraction `p̂` estimates
/// `3T / W`, so the output is `p̂ · Ŵ / 3`.
pub fn vertex_mcmc(g: &Graph, cfg: &EstimatorConfig, opts: &RunOptions) -> Result<BaselineOutput> {
    require_length(cfg, 1, "VertexMCMC")?;
    let mut session = OracleSession::open(g, cfg.seed_vertex, cfg.rng_seed, opts.strict)?;
    let mut v = session.seed_vertex();
    let mut dv = session.known_degree(v)?;

    let mut states: Vec<(VertexId, u64)> = Vec::with_capacity(cfg.r);
    let (mut samples, mut closed, mut accepted, mut draws) = (0u64, 0u64, 0u64, 0u64);

    for _ in 0..cfg.r {
        let u = session.random_neighbor(v)?;
        let du = session.known_degree(u)?;
        let accept = mh_acceptance(dv, du);
        if accept >= 1.0 || session.rng().random::<f64>() < accept {
            v = u;
            dv = du;
            accepted += 1;
        }
        states.push((v, dv as u64));

        if dv >= 2 {
            let a = session.random_neighbor(v)?;
            draws += 1;
            let b = loop {
                let b = session.random_neighbor(v)?;
                draws += 1;
                if b != a {
                    break b;
                }
            };
            samples += 1;
            if session.edge_query(a, b)? {
                closed += 1;
            }
        }
    }

    let p_hat = if samples == 0 {
        0.0
    } else {
        closed as f64 / samples as f64
    };
    let wedges_hat = match opts.exact_wedges {
        Some(w) => w,
        None => mh_wedge_count_estimate(&states, cfg.t_hat_mix)?,
    };
    Ok(BaselineOutput {
        estimate: p_hat * wedges_hat / 3.0,
        ledger: session.ledger(),
        diagnostics: Diagnostics::VertexMcmc {
            success_probability: p_hat,
            wedge_samples: samples,
            wedges_closed: closed,
            wedges_hat,
            accepted_moves: accepted,
            proposals: cfg.r as u64,
            neighbor_draws: draws,
        },
    })
}
