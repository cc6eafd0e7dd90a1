//! Graph loading and the exact-statistics sidecar cache.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tetris_core::graph::{load_edge_list, read_binary, LoadReport};
use tetris_core::{exact_triangle_count, Error, Graph, GraphStats, Result};

pub struct LoadedGraph {
    pub graph: Graph,
    pub name: String,
    pub path: PathBuf,
    /// Hex SHA-256 of the file bytes.
    pub digest: String,
    /// Absent for binary CSR input, which is already simple.
    pub report: Option<LoadReport>,
}

fn is_binary(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "rwtg")
}

pub fn load(path: &Path) -> Result<LoadedGraph> {
    let bytes = fs::read(path)?;
    let digest = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    let (graph, report) = if is_binary(path) {
        (read_binary(bytes.as_slice())?, None)
    } else {
        let (g, report) = load_edge_list(bytes.as_slice())?;
        (g, Some(report))
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into());
    Ok(LoadedGraph {
        graph,
        name,
        path: path.to_path_buf(),
        digest,
        report,
    })
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    sha256: String,
    stats: GraphStats,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".stats.json");
    PathBuf::from(name)
}

/// Exact statistics, reused from `<graph>.stats.json` when its hash matches
/// the graph file. A stale or unreadable sidecar is recomputed and replaced;
/// failure to write it is only a warning.
pub fn exact_stats(loaded: &LoadedGraph) -> Result<(GraphStats, bool)> {
    let side = sidecar_path(&loaded.path);
    if let Ok(text) = fs::read_to_string(&side) {
        if let Ok(cached) = serde_json::from_str::<Sidecar>(&text) {
            if cached.sha256 == loaded.digest {
                return Ok((cached.stats, true));
            }
        }
    }
    let stats = exact_triangle_count(&loaded.graph);
    let record = Sidecar {
        sha256: loaded.digest.clone(),
        stats: stats.clone(),
    };
    let written = fs::File::create(&side).map_err(Error::from).and_then(|f| {
        let mut w = BufWriter::new(f);
        serde_json::to_writer_pretty(&mut w, &record).map_err(|e| Error::Format(e.to_string()))?;
        w.flush()?;
        Ok(())
    });
    if let Err(e) = written {
        eprintln!("warning: could not write {}: {e}", side.display());
    }
    Ok((stats, false))
}
