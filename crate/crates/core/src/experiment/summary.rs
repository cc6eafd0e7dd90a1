use std::collections::BTreeMap;
use std::io::Write;

use crate::error::Result;
use crate::estimator::Algorithm;
use crate::experiment::record::{format_sig6, RunRecord};

pub const SUMMARY_HEADER: [&str; 12] = [
    "graph",
    "algo",
    "r",
    "bucket",
    "seed_vertex",
    "runs",
    "failures",
    "median_rel_err_pct",
    "max_rel_err_pct",
    "mean_rel_err_pct",
    "stddev_rel_err_pct",
    "mean_query_frac_pct",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub graph: String,
    pub algo: Algorithm,
    pub r: usize,
    pub bucket: Option<u32>,
    /// Set when grouped per seed vertex.
    pub seed_vertex: Option<u64>,
    pub runs: usize,
    pub failures: usize,
    pub median: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub stddev: f64,
    pub mean_query_frac_pct: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Summary {
    pub rows: Vec<SummaryRow>,
    /// Groups omitted for lack of a successful run with known error.
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grouping {
    /// One row per `(graph, algo, r, bucket)`.
    Config,
    /// One row per `(graph, algo, r, bucket, seed vertex)`.
    SeedVertex,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

type GroupKey = (String, &'static str, usize, Option<u32>, Option<u64>);

pub fn summarize(records: &[RunRecord]) -> Summary {
    summarize_by(records, Grouping::Config)
}

pub fn summarize_by(records: &[RunRecord], grouping: Grouping) -> Summary {
    let mut groups: BTreeMap<GroupKey, Vec<&RunRecord>> = BTreeMap::new();
    for rec in records {
        let seed = match grouping {
            Grouping::Config => None,
            Grouping::SeedVertex => Some(rec.seed_vertex),
        };
        groups
            .entry((rec.graph.clone(), rec.algo.name(), rec.r, rec.bucket, seed))
            .or_default()
            .push(rec);
    }

    let mut summary = Summary::default();
    for ((graph, _, r, bucket, seed_vertex), group) in groups {
        let algo = group[0].algo;
        let mut errors: Vec<f64> = group.iter().filter_map(|rec| rec.rel_err_pct).collect();
        if errors.is_empty() {
            summary.warnings.push(format!(
                "{graph}/{algo}/r={r}: no successful run with known error, omitted"
            ));
            continue;
        }
        let n = errors.len() as f64;
        let mean = errors.iter().sum::<f64>() / n;
        let stddev = if errors.len() > 1 {
            (errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let max = errors.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean_query_frac_pct =
            group.iter().map(|rec| rec.query_frac_pct).sum::<f64>() / group.len() as f64;
        summary.rows.push(SummaryRow {
            graph,
            algo,
            r,
            bucket,
            seed_vertex,
            runs: group.len(),
            failures: group.iter().filter(|rec| !rec.is_success()).count(),
            median: median(&mut errors),
            max,
            mean,
            stddev,
            mean_query_frac_pct,
        });
    }
    summary
}

pub fn emit_summary_csv<W: Write>(summary: &Summary, sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(sink);
    w.write_record(SUMMARY_HEADER)?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in &summary.rows {
        w.write_record([
            row.graph.clone(),
            row.algo.name().to_string(),
            row.r.to_string(),
            opt(row.bucket.map(u64::from)),
            opt(row.seed_vertex),
            row.runs.to_string(),
            row.failures.to_string(),
            format_sig6(row.median),
            format_sig6(row.max),
            format_sig6(row.mean),
            format_sig6(row.stddev),
            format_sig6(row.mean_query_frac_pct),
        ])?;
    }
    w.flush()?;
    Ok(())
}
