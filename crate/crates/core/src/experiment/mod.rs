//! Repeated-trial experiments, degree-bucket seed robustness, summaries, and
//! CSV output.
//!
//! Every trial opens a fresh oracle session whose RNG seed is derived from
//! the plan's master seed and the trial's identity, so a plan replays
//! byte-for-byte regardless of how many threads execute it.

mod record;
mod summary;

pub use record::{
    emit_csv, format_sig6, parse_csv, query_fraction_pct, relative_error_pct, RunRecord,
    RECORD_HEADER,
};
pub use summary::{
    emit_summary_csv, median, summarize, summarize_by, Grouping, Summary, SummaryRow,
    SUMMARY_HEADER,
};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::Algorithm;
use crate::graph::{Graph, VertexId};
use crate::tetris::{EstimatorConfig, RunOptions, DEFAULT_T_HAT_MIX};

pub const DEFAULT_ELL_FRAC: f64 = 0.05;
pub const DEFAULT_REPEATS: usize = 100;
/// Seeds drawn per degree bucket.
pub const SEEDS_PER_BUCKET: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedPolicy {
    /// A fixed vertex, by raw label.
    Fixed(u64),
    /// One non-isolated vertex chosen uniformly from the master seed and
    /// used for every trial.
    UniformRandom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub graph_name: String,
    pub algorithms: Vec<Algorithm>,
    pub r_values: Vec<usize>,
    pub ell_frac: f64,
    pub t_hat_mix: usize,
    pub repeats: usize,
    pub seed_policy: SeedPolicy,
    pub master_seed: u64,
    pub options: RunOptions,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl ExperimentPlan {
    pub fn new(
        graph_name: impl Into<String>,
        algorithms: Vec<Algorithm>,
        r_values: Vec<usize>,
    ) -> Self {
        ExperimentPlan {
            graph_name: graph_name.into(),
            algorithms,
            r_values,
            ell_frac: DEFAULT_ELL_FRAC,
            t_hat_mix: DEFAULT_T_HAT_MIX,
            repeats: DEFAULT_REPEATS,
            seed_policy: SeedPolicy::UniformRandom,
            master_seed: 0,
            options: RunOptions::default(),
            jobs: 0,
        }
    }

    /// `ell = round(ell_frac · r)`, at least 1.
    pub fn ell_for(&self, r: usize) -> usize {
        ((self.ell_frac * r as f64).round() as usize).max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::InvalidConfig("repeats must be at least 1".into()));
        }
        if self.algorithms.is_empty() || self.r_values.is_empty() {
            return Err(Error::InvalidConfig(
                "empty algorithm list or r sweep".into(),
            ));
        }
        if self.ell_frac.is_nan() || self.ell_frac <= 0.0 {
            return Err(Error::InvalidConfig("ell fraction must be positive".into()));
        }
        Ok(())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial RNG seed from the master seed, walk length, and run id.
pub fn derive_seed(master: u64, r: usize, run_id: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(r as u64)) ^ run_id)
}

/// `floor(log10 d)`: bucket `i` holds degrees in `[10^i, 10^(i+1))`.
pub fn degree_bucket(degree: usize) -> u32 {
    assert!(degree > 0, "isolated vertices have no bucket");
    degree.ilog10()
}

fn pick_uniform_seed(g: &Graph, master: u64) -> Result<VertexId> {
    let candidates: Vec<VertexId> = g.vertices().filter(|&v| !g.neighbors(v).is_empty()).collect();
    if candidates.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(master ^ 0x5eed));
    Ok(candidates[rng.random_range(0..candidates.len())])
}

pub fn resolve_seed(g: &Graph, policy: SeedPolicy, master: u64) -> Result<VertexId> {
    match policy {
        SeedPolicy::Fixed(label) => g.vertex_of_label(label).ok_or(Error::VertexOutOfRange {
            vertex: label,
            n: g.vertex_count(),
        }),
        SeedPolicy::UniformRandom => pick_uniform_seed(g, master),
    }
}

#[derive(Clone, Copy)]
struct Trial {
    algo: Algorithm,
    r: usize,
    seed_vertex: VertexId,
    run_id: u64,
    bucket: Option<u32>,
}

fn run_trial(g: &Graph, plan: &ExperimentPlan, truth: Option<u64>, t: Trial) -> RunRecord {
    let ell = plan.ell_for(t.r);
    let rng_seed = derive_seed(plan.master_seed, t.r, t.run_id);
    let cfg = EstimatorConfig {
        r: t.r,
        ell,
        t_hat_mix: plan.t_hat_mix,
        rng_seed,
        seed_vertex: t.seed_vertex,
    };
    let outcome = t.algo.run(g, &cfg, &plan.options);
    let (estimate, ledger, error) = match outcome {
        Ok(est) => (Some(est.value), est.ledger, None),
        Err(e) => (None, Default::default(), Some(e.code().to_string())),
    };
    RunRecord {
        graph: plan.graph_name.clone(),
        algo: t.algo,
        r: t.r,
        ell,
        t_hat_mix: plan.t_hat_mix,
        seed_vertex: g.label(t.seed_vertex),
        rng_seed,
        run_id: t.run_id,
        estimate,
        true_t: truth,
        rel_err_pct: match (truth, estimate) {
            (Some(t), Some(x)) if t > 0 => Some(relative_error_pct(t, x)),
            _ => None,
        },
        rn_queries: ledger.rn_queries,
        deg_queries: ledger.deg_queries,
        edge_queries: ledger.edge_queries,
        idx_queries: ledger.idx_queries,
        query_frac_pct: query_fraction_pct(ledger.countable_queries(), g.edge_count()),
        bucket: t.bucket,
        error,
    }
}

fn execute(
    g: &Graph,
    plan: &ExperimentPlan,
    truth: Option<u64>,
    trials: Vec<Trial>,
) -> Result<Vec<RunRecord>> {
    let work = || -> Vec<RunRecord> {
        trials
            .par_iter()
            .map(|&t| run_trial(g, plan, truth, t))
            .collect()
    };
    let mut records = if plan.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(plan.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(work)
    };
    records.sort_by(|a, b| (a.algo.name(), a.r, a.run_id).cmp(&(b.algo.name(), b.r, b.run_id)));
    Ok(records)
}

/// Runs every `(algorithm, r, repeat)` combination from one seed vertex.
/// Failed trials are kept, with `error` set. `truth` fills the error columns.
pub fn run_experiment(
    g: &Graph,
    plan: &ExperimentPlan,
    truth: Option<u64>,
) -> Result<Vec<RunRecord>> {
    plan.validate()?;
    let seed_vertex = resolve_seed(g, plan.seed_policy, plan.master_seed)?;
    let mut trials = Vec::new();
    for &algo in &plan.algorithms {
        for &r in &plan.r_values {
            for run in 0..plan.repeats {
                trials.push(Trial {
                    algo,
                    r,
                    seed_vertex,
                    run_id: run as u64,
                    bucket: None,
                });
            }
        }
    }
    execute(g, plan, truth, trials)
}

/// Seeds chosen for one degree bucket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BucketSelection {
    pub bucket: u32,
    /// Number of vertices in the bucket.
    pub population: usize,
    /// Chosen seeds, by raw label.
    pub seeds: Vec<u64>,
    /// Fewer than [`SEEDS_PER_BUCKET`] vertices were available.
    pub short: bool,
}

/// Groups non-isolated vertices by `floor(log10 d)` and picks up to four
/// uniformly from each bucket.
pub fn select_bucket_seeds(g: &Graph, master: u64) -> Vec<(BucketSelection, Vec<VertexId>)> {
    let mut buckets: std::collections::BTreeMap<u32, Vec<VertexId>> = Default::default();
    for v in g.vertices() {
        let d = g.neighbors(v).len();
        if d > 0 {
            buckets.entry(degree_bucket(d)).or_default().push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(master ^ 0xb0c4e7));
    buckets
        .into_iter()
        .map(|(bucket, members)| {
            let take = members.len().min(SEEDS_PER_BUCKET);
            let mut picked: Vec<VertexId> = sample(&mut rng, members.len(), take)
                .into_iter()
                .map(|i| members[i])
                .collect();
            picked.sort_unstable();
            let selection = BucketSelection {
                bucket,
                population: members.len(),
                seeds: picked.iter().map(|&v| g.label(v)).collect(),
                short: members.len() < SEEDS_PER_BUCKET,
            };
            (selection, picked)
        })
        .collect()
}

/// Repeats the full protocol from up to four seeds per degree bucket.
/// Run ids are unique across seeds: `seed_index · repeats + repeat`.
pub fn seed_bucket_experiment(
    g: &Graph,
    plan: &ExperimentPlan,
    truth: Option<u64>,
) -> Result<(Vec<RunRecord>, Vec<BucketSelection>)> {
    plan.validate()?;
    let selections = select_bucket_seeds(g, plan.master_seed);
    let mut trials = Vec::new();
    let mut seed_index = 0u64;
    for (selection, seeds) in &selections {
        for &seed_vertex in seeds {
            for &algo in &plan.algorithms {
                for &r in &plan.r_values {
                    for run in 0..plan.repeats as u64 {
                        trials.push(Trial {
                            algo,
                            r,
                            seed_vertex,
                            run_id: seed_index * plan.repeats as u64 + run,
                            bucket: Some(selection.bucket),
                        });
                    }
                }
            }
            seed_index += 1;
        }
    }
    let records = execute(g, plan, truth, trials)?;
    Ok((records, selections.into_iter().map(|(s, _)| s).collect()))
}
