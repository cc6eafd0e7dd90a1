use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::estimator::Algorithm;

/// Column order of the per-run CSV.
pub const RECORD_HEADER: [&str; 18] = [
    "graph",
    "algo",
    "r",
    "ell",
    "t_hat_mix",
    "seed_vertex",
    "rng_seed",
    "run_id",
    "estimate",
    "true_T",
    "rel_err_pct",
    "rn_queries",
    "deg_queries",
    "edge_queries",
    "idx_queries",
    "query_frac_pct",
    "bucket",
    "error",
];

/// One trial of one estimator.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub graph: String,
    pub algo: Algorithm,
    pub r: usize,
    pub ell: usize,
    pub t_hat_mix: usize,
    /// Raw input label of the seed vertex.
    pub seed_vertex: u64,
    pub rng_seed: u64,
    pub run_id: u64,
    /// `None` when the estimator failed; see `error`.
    pub estimate: Option<f64>,
    pub true_t: Option<u64>,
    pub rel_err_pct: Option<f64>,
    pub rn_queries: u64,
    pub deg_queries: u64,
    pub edge_queries: u64,
    pub idx_queries: u64,
    pub query_frac_pct: f64,
    /// Degree bucket of the seed vertex, in bucket experiments.
    pub bucket: Option<u32>,
    pub error: Option<String>,
}

impl RunRecord {
    pub fn countable_queries(&self) -> u64 {
        self.rn_queries + self.edge_queries + self.idx_queries
    }

    pub fn is_success(&self) -> bool {
        self.error.is_none()
    }

    fn sort_key(&self) -> (&'static str, usize, u64) {
        (self.algo.name(), self.r, self.run_id)
    }
}

/// `|T − estimate| · 100 / T`.
pub fn relative_error_pct(truth: u64, estimate: f64) -> f64 {
    (truth as f64 - estimate).abs() * 100.0 / truth as f64
}

/// `countable · 100 / 2m`.
pub fn query_fraction_pct(countable: u64, m: usize) -> f64 {
    countable as f64 * 100.0 / (2 * m) as f64
}

/// Formats a float with 6 significant digits, like C's `%g`.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-4..6).contains(&exponent) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (5 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Writes a header and one row per record, sorted by `(algo, r, run_id)`.
pub fn emit_csv<W: Write>(records: &[RunRecord], sink: W) -> Result<()> {
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(sink);
    w.write_record(RECORD_HEADER)?;
    for rec in sorted {
        w.write_record([
            rec.graph.clone(),
            rec.algo.name().to_string(),
            rec.r.to_string(),
            rec.ell.to_string(),
            rec.t_hat_mix.to_string(),
            rec.seed_vertex.to_string(),
            rec.rng_seed.to_string(),
            rec.run_id.to_string(),
            rec.estimate.map(format_sig6).unwrap_or_default(),
            opt(&rec.true_t),
            rec.rel_err_pct.map(format_sig6).unwrap_or_default(),
            rec.rn_queries.to_string(),
            rec.deg_queries.to_string(),
            rec.edge_queries.to_string(),
            rec.idx_queries.to_string(),
            format_sig6(rec.query_frac_pct),
            opt(&rec.bucket),
            opt(&rec.error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    row.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("bad value in column {}", RECORD_HEADER[i]),
        })
}

fn optional<T: std::str::FromStr>(
    row: &csv::StringRecord,
    i: usize,
    line: usize,
) -> Result<Option<T>> {
    match row.get(i) {
        Some("") | None => Ok(None),
        Some(_) => field(row, i, line).map(Some),
    }
}

/// Parses a CSV written by [`emit_csv`].
pub fn parse_csv<R: Read>(source: R) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(RECORD_HEADER.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            message: "unexpected header".into(),
        });
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let algo: String = field(&row, 1, line)?;
        out.push(RunRecord {
            graph: field(&row, 0, line)?,
            algo: algo.parse()?,
            r: field(&row, 2, line)?,
            ell: field(&row, 3, line)?,
            t_hat_mix: field(&row, 4, line)?,
            seed_vertex: field(&row, 5, line)?,
            rng_seed: field(&row, 6, line)?,
            run_id: field(&row, 7, line)?,
            estimate: optional(&row, 8, line)?,
            true_t: optional(&row, 9, line)?,
            rel_err_pct: optional(&row, 10, line)?,
            rn_queries: field(&row, 11, line)?,
            deg_queries: field(&row, 12, line)?,
            edge_queries: field(&row, 13, line)?,
            idx_queries: field(&row, 14, line)?,
            query_frac_pct: field(&row, 15, line)?,
            bucket: optional(&row, 16, line)?,
            error: optional(&row, 17, line)?,
        });
    }
    Ok(out)
}
