use super::{edge_count, require_length, BaselineOutput, Diagnostics};
use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::OracleSession;
use crate::tetris::{EstimatorConfig, RunOptions};
use crate::walk::random_walk;

/// Tests every window of three consecutive walk vertices for a triangle.
///
/// A stationary triple `(a, b, c)` has probability `1 / (2m · d(b))`, and each
/// triangle appears as six ordered triples, so weighting a closed window by
/// `d(b)` gives `3T / m` per window. The estimate is
/// `m̄ / (3 (r − 1)) · Σ d(b)`. Windows that revisit a vertex are skipped
/// without a query.
pub fn srw(g: &Graph, cfg: &EstimatorConfig, opts: &RunOptions) -> Result<BaselineOutput> {
    require_length(cfg, 2, "SRW")?;
    let mut session = OracleSession::open(g, cfg.seed_vertex, cfg.rng_seed, opts.strict)?;
    let trace = random_walk(&mut session, cfg.r, opts.lazy)?;
    let m_bar = edge_count(&trace, cfg, opts)?;

    let vs = trace.vertices();
    let ds = trace.vertex_degrees();
    let (mut tested, mut closed, mut weight_sum) = (0u64, 0u64, 0u64);
    for i in 1..cfg.r {
        let (a, b, c) = (vs[i - 1], vs[i], vs[i + 1]);
        if a == c || a == b || b == c {
            continue;
        }
        tested += 1;
        if session.edge_query(a, c)? {
            closed += 1;
            weight_sum += ds[i];
        }
    }

    let estimate = m_bar / (3.0 * (cfg.r - 1) as f64) * weight_sum as f64;
    Ok(BaselineOutput {
        estimate,
        ledger: session.ledger(),
        diagnostics: Diagnostics::Srw {
            triples_tested: tested,
            triples_closed: closed,
            weight_sum,
            m_bar,
        },
    })
}
