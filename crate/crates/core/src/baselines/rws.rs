use std::collections::HashMap;

use super::{edge_count, require_length, BaselineOutput, Diagnostics};
use crate::error::Result;
use crate::graph::{for_each_triangle, Graph, VertexId};
use crate::oracle::OracleSession;
use crate::tetris::{EstimatorConfig, RunOptions};
use crate::walk::{edge_key, random_walk};

/// Counts triangles in the subgraph formed by the walk's edges and rescales
/// as if each edge had been kept independently with probability `p = r / m̄`:
/// `estimate = count / p³`, or `count` unscaled once `p ≥ 1`.
///
/// By default the subgraph is simple; with
/// [`RunOptions::rws_multiplicity`] each triangle counts the product of its
/// edges' walk multiplicities.
pub fn rws(g: &Graph, cfg: &EstimatorConfig, opts: &RunOptions) -> Result<BaselineOutput> {
    require_length(cfg, 3, "RWS")?;
    let mut session = OracleSession::open(g, cfg.seed_vertex, cfg.rng_seed, opts.strict)?;
    let trace = random_walk(&mut session, cfg.r, opts.lazy)?;
    let m_bar = edge_count(&trace, cfg, opts)?;

    let mut multiplicity: HashMap<u64, u64> = HashMap::new();
    for key in trace.edge_keys() {
        *multiplicity.entry(key).or_insert(0) += 1;
    }

    // relabel the touched vertices densely
    let mut local: HashMap<VertexId, VertexId> = HashMap::new();
    let mut original: Vec<VertexId> = Vec::new();
    let mut id = |v: VertexId, local: &mut HashMap<VertexId, VertexId>| {
        *local.entry(v).or_insert_with(|| {
            original.push(v);
            (original.len() - 1) as VertexId
        })
    };
    let mut edges = Vec::with_capacity(multiplicity.len());
    for &(u, v) in trace.edges() {
        let (a, b) = (id(u, &mut local), id(v, &mut local));
        edges.push((a, b));
    }
    let sub = Graph::from_edges(original.len(), &edges)?;

    let mut count = 0u64;
    for_each_triangle(&sub, |a, b, c| {
        count += if opts.rws_multiplicity {
            let (a, b, c) = (
                original[a as usize],
                original[b as usize],
                original[c as usize],
            );
            multiplicity[&edge_key(a, b)]
                * multiplicity[&edge_key(b, c)]
                * multiplicity[&edge_key(a, c)]
        } else {
            1
        };
    });

    let p = cfg.r as f64 / m_bar;
    let (estimate, clamped) = if p >= 1.0 {
        (count as f64, true)
    } else {
        (count as f64 / (p * p * p), false)
    };
    Ok(BaselineOutput {
        estimate,
        ledger: session.ledger(),
        diagnostics: Diagnostics::Rws {
            subgraph_triangles: count,
            distinct_edges: multiplicity.len(),
            sample_probability: p,
            clamped,
            m_bar,
        },
    })
}
