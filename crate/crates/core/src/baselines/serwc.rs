use super::{edge_count, BaselineOutput, Diagnostics};
use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::OracleSession;
use crate::tetris::{EstimatorConfig, RunOptions};
use crate::walk::random_walk;

/// For each walk edge, lists the base endpoint's neighbors with indexed
/// queries and edge-queries each against the other endpoint, counting the
/// triangles incident on the edge. Over uniform edges the incident count
/// averages `3T / m`, hence `estimate = m̄ / (3r) · Σ tri(e)`.
pub fn serwc(g: &Graph, cfg: &EstimatorConfig, opts: &RunOptions) -> Result<BaselineOutput> {
    super::require_length(cfg, 1, "SERWC")?;
    let mut session = OracleSession::open(g, cfg.seed_vertex, cfg.rng_seed, opts.strict)?;
    let trace = random_walk(&mut session, cfg.r, opts.lazy)?;
    let m_bar = edge_count(&trace, cfg, opts)?;

    let mut incident_sum = 0u64;
    for &(u, v) in trace.edges() {
        let (du, dv) = (session.known_degree(u)?, session.known_degree(v)?);
        let (base, other, d) = if (du, u) < (dv, v) {
            (u, v, du)
        } else {
            (v, u, dv)
        };
        for i in 1..=d {
            if let Some(w) = session.indexed_neighbor(base, i)? {
                if session.edge_query(other, w)? {
                    incident_sum += 1;
                }
            }
        }
    }

    Ok(BaselineOutput {
        estimate: m_bar / (3.0 * cfg.r as f64) * incident_sum as f64,
        ledger: session.ledger(),
        diagnostics: Diagnostics::Serwc {
            incident_sum,
            m_bar,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn ledger_is_exact_given_trace() {
        let bowtie = generate::bowtie();
        let cfg = EstimatorConfig::new(400, 1, 5)
            .with_rng_seed(12)
            .with_seed_vertex(2);
        let opts = RunOptions {
            strict: true,
            ..RunOptions::default()
        };
        let out = serwc(&bowtie, &cfg, &opts).unwrap();
        // the bowtie's edge degrees are all 2
        assert_eq!(out.ledger.rn_queries, 400);
        assert_eq!(out.ledger.idx_queries, 800);
        assert_eq!(out.ledger.edge_queries, 800);
        match out.diagnostics {
            // every bowtie edge lies on exactly one triangle
            Diagnostics::Serwc { incident_sum, .. } => assert_eq!(incident_sum, 400),
            _ => unreachable!(),
        }
    }

    #[test]
    fn bowtie_edge_2_3_has_one_triangle() {
        // base 3 (degree 2) has neighbors {2, 4}; (2, 4) closes, (2, 2) does not
        let bowtie = generate::bowtie();
        let mut s = OracleSession::open(&bowtie, 3, 0, true).unwrap();
        let mut tri = 0;
        for i in 1..=2 {
            let w = s.indexed_neighbor(3, i).unwrap().unwrap();
            if s.edge_query(2, w).unwrap_or(false) {
                tri += 1;
            }
        }
        // vertex 2 is revealed by the first indexed query
        assert_eq!(tri, 1);
    }
}
