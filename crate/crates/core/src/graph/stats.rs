use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Default vertex cap for [`brute_force_triangles`].
pub const BRUTE_FORCE_CAP: usize = 2000;

/// Exact structural statistics of a graph.
///
/// Per-edge assigned triangle counts are kept aligned with the graph's CSR
/// arrays and are not serialized; use [`GraphStats::assigned_count`] with the
/// graph they were computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub triangles: u64,
    /// Sum over edges of `min(d(u), d(v))`.
    pub edge_degree_sum: u64,
    pub degeneracy: usize,
    pub wedges: u64,
    /// Largest number of triangles assigned to a single edge.
    pub max_assigned: u64,
    pub components: usize,
    #[serde(skip)]
    assigned: Vec<u64>,
}

impl GraphStats {
    /// Triangles assigned to `{u, v}`: those whose two degree-order-smallest
    /// vertices are `u` and `v`.
    pub fn assigned_count(&self, g: &Graph, u: VertexId, v: VertexId) -> Result<u64> {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if self.assigned.is_empty() {
            return Err(Error::InvalidConfig(
                "per-edge counts unavailable for deserialized stats".into(),
            ));
        }
        g.edge_slot(u, v)
            .map(|slot| self.assigned[slot])
            .ok_or(Error::NotAnEdge(u, v))
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }
}

/// Edges oriented from degree-order-smaller to larger, as a CSR of
/// out-neighbors (each list sorted by id).
fn orient(g: &Graph) -> (Vec<usize>, Vec<VertexId>) {
    let n = g.vertex_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::with_capacity(g.edge_count());
    offsets.push(0);
    for u in g.vertices() {
        targets.extend(
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| g.precedes_unchecked(u, v)),
        );
        offsets.push(targets.len());
    }
    (offsets, targets)
}

/// Calls `f(a, b, c)` once per triangle with `a ≺ b ≺ c` in the degree order.
pub fn for_each_triangle<F: FnMut(VertexId, VertexId, VertexId)>(g: &Graph, mut f: F) {
    let (offsets, targets) = orient(g);
    let out = |u: VertexId| &targets[offsets[u as usize]..offsets[u as usize + 1]];
    for u in g.vertices() {
        let out_u = out(u);
        for &v in out_u {
            let out_v = out(v);
            let (mut i, mut j) = (0, 0);
            while i < out_u.len() && j < out_v.len() {
                match out_u[i].cmp(&out_v[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        f(u, v, out_u[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
}

/// Degree-ordered forward counting: every triangle is found exactly once,
/// from the edge joining its two smallest vertices, which is also the edge it
/// is assigned to.
pub fn exact_triangle_count(g: &Graph) -> GraphStats {
    let mut assigned = vec![0u64; g.neighbor_array().len()];
    let mut triangles = 0u64;
    for_each_triangle(g, |a, b, _| {
        triangles += 1;
        if let Some(slot) = g.edge_slot(a, b) {
            assigned[slot] += 1;
        }
    });
    // mirror onto the reverse slot
    for (u, v) in g.edges() {
        let (su, sv) = (g.edge_slot(u, v).unwrap(), g.edge_slot(v, u).unwrap());
        let count = assigned[su] + assigned[sv];
        assigned[su] = count;
        assigned[sv] = count;
    }

    let edge_degree_sum = g.edges().map(|(u, v)| g.deg(u).min(g.deg(v)) as u64).sum();
    let max_assigned = assigned.iter().copied().max().unwrap_or(0);

    GraphStats {
        n: g.vertex_count(),
        m: g.edge_count(),
        triangles,
        edge_degree_sum,
        degeneracy: degeneracy(g),
        wedges: g.wedge_count(),
        max_assigned,
        components: g.component_count(),
        assigned,
    }
}

/// Maximum core number, by bucketed min-degree peeling in `O(n + m)`.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut degree: Vec<usize> = g.vertices().map(|v| g.deg(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // Vertices sorted by degree, with bin starts and positions (Batagelj-Zaversnik).
    let mut bin = vec![0usize; max_degree + 2];
    for &d in &degree {
        bin[d + 1] += 1;
    }
    for d in 0..=max_degree {
        bin[d + 1] += bin[d];
    }
    let mut order = vec![0 as VertexId; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            let d = degree[v];
            pos[v] = next[d];
            order[next[d]] = v as VertexId;
            next[d] += 1;
        }
    }

    let mut core = 0;
    for i in 0..n {
        let v = order[i];
        core = core.max(degree[v as usize]);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if degree[w] > degree[v as usize] {
                // swap w with the first vertex of its bin, then shrink the bin
                let dw = degree[w];
                let first = bin[dw];
                let u = order[first] as usize;
                if u != w {
                    order.swap(pos[w], first);
                    pos[u] = pos[w];
                    pos[w] = first;
                }
                bin[dw] += 1;
                degree[w] -= 1;
            }
        }
    }
    core
}

/// Counts vertex triples with all three edges present, in `O(n³)`.
pub fn brute_force_triangles(g: &Graph) -> Result<u64> {
    brute_force_triangles_with_cap(g, BRUTE_FORCE_CAP)
}

pub fn brute_force_triangles_with_cap(g: &Graph, cap: usize) -> Result<u64> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let mut adj = vec![false; n * n];
    for (u, v) in g.edges() {
        adj[u as usize * n + v as usize] = true;
        adj[v as usize * n + u as usize] = true;
    }
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i * n + j] {
                continue;
            }
            for k in j + 1..n {
                if adj[i * n + k] && adj[j * n + k] {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
