//! Binary CSR cache.
//!
//! Layout, all integers little-endian:
//!
//! | field     | type        | count   |
//! |-----------|-------------|---------|
//! | magic     | `b"RWTG"`   | 4 bytes |
//! | version   | `u32`       | 1       |
//! | n         | `u64`       | 1       |
//! | m         | `u64`       | 1       |
//! | offsets   | `u64`       | n + 1   |
//! | neighbors | `u32`       | 2m      |
//! | labels    | `u64`       | n       |

use std::io::{Read, Write};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: [u8; 4] = *b"RWTG";
pub const BINARY_VERSION: u32 = 1;

pub fn write_binary<W: Write>(g: &Graph, mut sink: W) -> Result<()> {
    sink.write_all(&BINARY_MAGIC)?;
    sink.write_all(&BINARY_VERSION.to_le_bytes())?;
    sink.write_all(&(g.vertex_count() as u64).to_le_bytes())?;
    sink.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        sink.write_all(&(o as u64).to_le_bytes())?;
    }
    for &v in g.neighbor_array() {
        sink.write_all(&v.to_le_bytes())?;
    }
    for &l in g.labels() {
        sink.write_all(&l.to_le_bytes())?;
    }
    sink.flush()?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

/// Reads a cache written by [`write_binary`] and re-checks the graph
/// invariants, so a corrupted file cannot produce an asymmetric graph.
pub fn read_binary<R: Read>(mut source: R) -> Result<Graph> {
    let mut magic = [0u8; 4];
    source.read_exact(&mut magic)?;
    if magic != BINARY_MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = read_u32(&mut source)?;
    if version != BINARY_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let n = read_u64(&mut source)? as usize;
    let m = read_u64(&mut source)? as usize;

    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        offsets.push(read_u64(&mut source)? as usize);
    }
    if offsets[0] != 0 || offsets[n] != 2 * m || offsets.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Format("inconsistent offsets".into()));
    }
    let mut neighbors = Vec::with_capacity(2 * m);
    for _ in 0..2 * m {
        let v = read_u32(&mut source)?;
        if v as usize >= n {
            return Err(Error::Format(format!("neighbor {v} out of range")));
        }
        neighbors.push(v as VertexId);
    }
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        labels.push(read_u64(&mut source)?);
    }

    let g = Graph::from_raw_parts(offsets, neighbors, labels);
    for u in g.vertices() {
        let adj = g.neighbors(u);
        if adj.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format(format!(
                "neighbors of {u} not strictly increasing"
            )));
        }
        if adj
            .iter()
            .any(|&v| v == u || g.neighbors(v).binary_search(&u).is_err())
        {
            return Err(Error::Format(format!("adjacency of {u} not symmetric")));
        }
    }
    Ok(g)
}
