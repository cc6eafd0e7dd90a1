//! TETRIS triangle estimation and the collision-based edge-count estimator.
//!
//! A walk of `r` steps collects an ordered multiset `R` of edges. TETRIS
//! draws `ell` positions of `R` with probability `d_e / d_R`, picks a
//! uniform neighbor `w` of the lower-degree endpoint of the drawn edge, and
//! scores 1 when `{e, w}` closes a triangle assigned to `e`. With `Y` the
//! mean score and `m̄` the edge-count estimate over the same walk, the output
//! is `X = (m̄ / r) · d_R · Y`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphStats, VertexId};
use crate::oracle::{OracleSession, QueryLedger};
use crate::walk::{random_walk, WalkTrace, WeightedIndexSampler};

/// Default stride / mixing-time estimate.
pub const DEFAULT_T_HAT_MIX: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Walk length.
    pub r: usize,
    /// Number of degree-weighted subsamples.
    pub ell: usize,
    pub t_hat_mix: usize,
    pub rng_seed: u64,
    pub seed_vertex: VertexId,
}

impl EstimatorConfig {
    pub fn new(r: usize, ell: usize, t_hat_mix: usize) -> Self {
        EstimatorConfig {
            r,
            ell,
            t_hat_mix,
            rng_seed: 0,
            seed_vertex: 0,
        }
    }

    pub fn with_seed_vertex(mut self, v: VertexId) -> Self {
        self.seed_vertex = v;
        self
    }

    pub fn with_rng_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_hat_mix == 0 {
            return Err(Error::InvalidConfig("t_hat_mix must be at least 1".into()));
        }
        if self.r < self.t_hat_mix {
            return Err(Error::InvalidConfig(format!(
                "walk length {} shorter than t_hat_mix {}",
                self.r, self.t_hat_mix
            )));
        }
        if self.ell == 0 {
            return Err(Error::InvalidConfig("ell must be at least 1".into()));
        }
        Ok(())
    }
}

/// Execution switches shared by all estimators.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunOptions {
    /// Enforce that queries only touch revealed vertices.
    pub strict: bool,
    /// Lazy walk: stay put with probability 1/2.
    pub lazy: bool,
    /// RWS counts triangles with walk-edge multiplicities.
    pub rws_multiplicity: bool,
    /// Use this edge count instead of the collision estimate.
    pub exact_edges: Option<f64>,
    /// Use this wedge count instead of the VertexMCMC wedge estimate.
    pub exact_wedges: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TetrisOutput {
    pub estimate: f64,
    /// Mean subsample score, in `[0, 1]`.
    pub y: f64,
    pub successes: usize,
    pub d_r: u64,
    pub m_bar: f64,
    pub r: usize,
    pub ell: usize,
    pub ledger: QueryLedger,
}

/// One subsample: returns whether the drawn edge and a random neighbor of
/// its base close a triangle assigned to that edge.
///
/// Always spends one random-neighbor and one edge query. When `w` is the
/// other endpoint, the pair query `(w, w)` is still issued and answers
/// `false`, so the per-trial cost stays at two.
pub fn subsample_trial(
    session: &mut OracleSession<'_>,
    trace: &WalkTrace,
    sampler: &WeightedIndexSampler,
) -> Result<bool> {
    let position = sampler.draw(session.rng());
    let (a, b) = trace.edges()[position];
    let (da, db) = (session.known_degree(a)?, session.known_degree(b)?);
    let (base, other) = if (da, a) < (db, b) { (a, b) } else { (b, a) };
    let w = session.random_neighbor(base)?;
    if !session.edge_query(other, w)? {
        return Ok(false);
    }
    // triangle {base, other, w}: assigned to e iff w is the largest vertex
    let dw = session.known_degree(w)?;
    let d_other = if other == a { da } else { db };
    Ok((d_other, other) < (dw, w))
}

/// Runs the estimator from the configured seed vertex.
pub fn tetris_estimate(
    g: &Graph,
    cfg: &EstimatorConfig,
    opts: &RunOptions,
) -> Result<TetrisOutput> {
    cfg.validate()?;
    let mut session = OracleSession::open(g, cfg.seed_vertex, cfg.rng_seed, opts.strict)?;
    let trace = random_walk(&mut session, cfg.r, opts.lazy)?;
    let m_bar = match opts.exact_edges {
        Some(m) => m,
        None => edge_count_estimator(&trace, cfg.t_hat_mix)?,
    };
    let sampler = WeightedIndexSampler::for_trace(&trace)?;
    let mut successes = 0;
    for _ in 0..cfg.ell {
        if subsample_trial(&mut session, &trace, &sampler)? {
            successes += 1;
        }
    }
    let y = successes as f64 / cfg.ell as f64;
    let d_r = trace.degree_sum();
    Ok(TetrisOutput {
        estimate: combine(m_bar, cfg.r, d_r, y),
        y,
        successes,
        d_r,
        m_bar,
        r: cfg.r,
        ell: cfg.ell,
        ledger: session.ledger(),
    })
}

/// `X = (m̄ / r) · d_R · Y`, evaluated in that order.
#[inline]
pub fn combine(m_bar: f64, r: usize, d_r: u64, y: f64) -> f64 {
    (m_bar / r as f64) * d_r as f64 * y
}

/// Pairwise collisions among edge keys: `Σ_f C(f, 2)` over the frequency
/// table.
pub fn count_collisions(keys: impl IntoIterator<Item = u64>) -> u64 {
    let mut freq: HashMap<u64, u64> = HashMap::new();
    for k in keys {
        *freq.entry(k).or_insert(0) += 1;
    }
    freq.values().map(|&f| f * (f - 1) / 2).sum()
}

/// Mean of `C(|R_i|, 2) / c_i` over strata with at least one collision.
pub fn estimate_from_strata<I, S>(strata: I) -> Result<f64>
where
    I: IntoIterator<Item = S>,
    S: IntoIterator<Item = u64>,
{
    let mut sum = 0.0;
    let mut valid = 0usize;
    for stratum in strata {
        let keys: Vec<u64> = stratum.into_iter().collect();
        let k = keys.len() as u64;
        let c = count_collisions(keys);
        if c > 0 {
            sum += (k * k.saturating_sub(1) / 2) as f64 / c as f64;
            valid += 1;
        }
    }
    if valid == 0 {
        return Err(Error::InsufficientCollisions);
    }
    Ok(sum / valid as f64)
}

/// Edge-count estimate `m̄` from the stride-`t_hat` strata of a walk.
///
/// Strata with no collision are dropped; if every stratum drops the result is
/// [`Error::InsufficientCollisions`], meaning the walk is too short for this
/// graph.
pub fn edge_count_estimator(trace: &WalkTrace, t_hat: usize) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let strata = trace.stride_partition(t_hat)?;
    let keys: Vec<u64> = trace.edge_keys().collect();
    estimate_from_strata(
        strata
            .iter()
            .map(|positions| positions.iter().map(|&p| keys[p])),
    )
}

/// Walk length and subsample count from the concentration bounds, for
/// accuracy `eps` and constant `c`. Logarithms are base 2.
///
/// `r = ⌈(log n / ε²) · max(m·t̂·t_max / T, t̂·√m)⌉` and
/// `ℓ = ⌈(c · log² n / ε³) · d_E / T⌉`.
pub fn plan_parameters(
    stats: &GraphStats,
    t_hat: usize,
    eps: f64,
    c: f64,
) -> Result<EstimatorConfig> {
    if stats.triangles == 0 {
        return Err(Error::NoTriangles);
    }
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidConfig(format!("eps {eps} outside (0, 1/2]")));
    }
    if c <= 6.0 {
        return Err(Error::InvalidConfig(format!("c {c} must exceed 6")));
    }
    if t_hat == 0 {
        return Err(Error::InvalidConfig("t_hat must be at least 1".into()));
    }
    let log_n = (stats.n as f64).log2();
    let m = stats.m as f64;
    let t = stats.triangles as f64;
    let t_hat_f = t_hat as f64;
    let scale = log_n / (eps * eps);
    let r_triangles = scale * (m * t_hat_f * stats.max_assigned as f64 / t);
    let r_edges = scale * t_hat_f * m.sqrt();
    let r = r_triangles.max(r_edges).ceil() as usize;
    let ell =
        (c * log_n * log_n / eps.powi(3) * (stats.edge_degree_sum as f64 / t)).ceil() as usize;
    Ok(EstimatorConfig::new(r.max(t_hat), ell.max(1), t_hat))
}
