use std::io::BufRead;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// What the loader threw away while simplifying the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub lines: usize,
    pub edge_lines: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` are comments, blank lines are skipped, and
/// tokens after the first two on a line (weights, timestamps) are ignored.
/// Raw labels are remapped to dense ids in increasing label order.
pub fn load_edge_list<R: BufRead>(source: R) -> Result<(Graph, LoadReport)> {
    let mut report = LoadReport::default();
    let mut raw: Vec<(u64, u64)> = Vec::new();

    for (index, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        report.lines = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex labels".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex label {tok:?}"),
            })
        };
        let u = endpoint()?;
        let v = endpoint()?;
        report.edge_lines += 1;
        if u == v {
            report.self_loops += 1;
            continue;
        }
        raw.push((u.min(v), u.max(v)));
    }

    let before = raw.len();
    raw.sort_unstable();
    raw.dedup();
    report.duplicates = before - raw.len();

    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if raw.len() > u32::MAX as usize {
        return Err(Error::Format("edge count exceeds 32-bit addressing".into()));
    }

    let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > VertexId::MAX as usize {
        return Err(Error::Format("vertex count exceeds 32-bit ids".into()));
    }

    let dense = |label: u64| labels.binary_search(&label).expect("label collected") as VertexId;
    // Label order is monotone in dense id, so the pair list stays sorted.
    let pairs: Vec<(VertexId, VertexId)> = raw.iter().map(|&(u, v)| (dense(u), dense(v))).collect();

    Ok((Graph::from_sorted_pairs(labels, &pairs), report))
}
