//! Immutable simple undirected graphs in CSR form.
//!
//! Every vertex has a dense id in `0..n`; the raw label it carried in the
//! input is kept in a remapping table. Neighbor lists are strictly
//! increasing, symmetric, and free of self-loops.

mod binary;
mod load;
mod stats;

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub use binary::{read_binary, write_binary, BINARY_MAGIC, BINARY_VERSION};
pub use load::{load_edge_list, LoadReport};
pub use stats::{
    brute_force_triangles, brute_force_triangles_with_cap, degeneracy, exact_triangle_count,
    for_each_triangle, GraphStats, BRUTE_FORCE_CAP,
};

/// Dense vertex index.
pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `0..n`. Self-loops and
    /// duplicate pairs are dropped.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let labels = (0..n as u64).collect();
        Self::from_dense_edges(labels, edges.iter().copied())
    }

    pub(crate) fn from_dense_edges(
        labels: Vec<u64>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x as u64,
                        n,
                    });
                }
            }
            match u.cmp(&v) {
                Ordering::Less => pairs.push((u, v)),
                Ordering::Greater => pairs.push((v, u)),
                Ordering::Equal => {}
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(labels, &pairs))
    }

    /// `pairs` must be sorted, deduplicated, with `u < v` in each pair.
    fn from_sorted_pairs(labels: Vec<u64>, pairs: &[(VertexId, VertexId)]) -> Self {
        let n = labels.len();
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; offsets[n]];
        // Sorted (u, v) order fills every list in increasing order.
        for &(u, v) in pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Graph {
            offsets,
            neighbors,
            labels,
        }
    }

    pub(crate) fn from_raw_parts(
        offsets: Vec<usize>,
        neighbors: Vec<VertexId>,
        labels: Vec<u64>,
    ) -> Self {
        Graph {
            offsets,
            neighbors,
            labels,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub(crate) fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Raw input label of `v`.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    /// Dense id of a raw label, if present.
    pub fn vertex_of_label(&self, label: u64) -> Option<VertexId> {
        // Labels are sorted for loaded graphs and the identity for generated ones.
        match self.labels.binary_search(&label) {
            Ok(i) => Some(i as VertexId),
            Err(_) => self
                .labels
                .iter()
                .position(|&l| l == label)
                .map(|i| i as VertexId),
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: self.vertex_count(),
            })
        }
    }

    /// Sorted neighbor list. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub(crate) fn deg(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.vertex_count() as VertexId
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Binary search on the shorter of the two lists.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u == v || u as usize >= self.vertex_count() || v as usize >= self.vertex_count() {
            return false;
        }
        let (a, b) = if self.deg(u) <= self.deg(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Position of `v` in the CSR neighbor array of `u`.
    pub(crate) fn edge_slot(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.offsets[u as usize] + i)
    }

    /// `u ≺ v` in the degree order: lower degree first, ties by dense id.
    #[inline]
    pub(crate) fn precedes_unchecked(&self, u: VertexId, v: VertexId) -> bool {
        (self.deg(u), u) < (self.deg(v), v)
    }

    pub fn vertex_precedes(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.precedes_unchecked(u, v))
    }

    fn check_edge(&self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(u, v))
        }
    }

    /// `min(d(u), d(v))`.
    pub fn edge_degree(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.check_edge(u, v)?;
        Ok(self.deg(u).min(self.deg(v)))
    }

    /// The endpoint whose neighborhood defines `N(e)`: the lower-degree one,
    /// ties broken by the degree order.
    pub fn edge_base(&self, u: VertexId, v: VertexId) -> Result<VertexId> {
        self.check_edge(u, v)?;
        Ok(if self.precedes_unchecked(u, v) { u } else { v })
    }

    /// Number of triangles containing `{u, v}`, i.e. `|N(u) ∩ N(v)|`.
    pub fn triangles_on_edge(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.check_edge(u, v)?;
        Ok(sorted_intersection_count(
            self.neighbors(u),
            self.neighbors(v),
        ))
    }

    /// Sum of `C(d(v), 2)` over all vertices.
    pub fn wedge_count(&self) -> u64 {
        self.vertices()
            .map(|v| {
                let d = self.deg(v) as u64;
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Number of connected components among non-isolated vertices, plus
    /// isolated vertices counted individually.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut components = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s as VertexId);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}

pub(crate) fn sorted_intersection_count(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn degree_fixtures() {
        let k3 = generate::complete(3);
        assert!(k3.vertices().all(|v| k3.degree(v).unwrap() == 2));
        let star = generate::star(3);
        assert_eq!(star.degree(0).unwrap(), 3);
        assert_eq!(star.degree(1).unwrap(), 1);
        assert!(matches!(
            star.degree(4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn precedes_tie_break_and_degree() {
        let k3 = generate::complete(3);
        assert!(k3.vertex_precedes(0, 1).unwrap());
        assert!(!k3.vertex_precedes(1, 0).unwrap());
        assert!(matches!(
            k3.vertex_precedes(1, 1),
            Err(Error::SameVertex(1))
        ));

        let bowtie = generate::bowtie();
        assert!(bowtie.vertex_precedes(3, 2).unwrap());
        assert!(!bowtie.vertex_precedes(2, 3).unwrap());
    }

    #[test]
    fn edge_degree_and_base() {
        let star = generate::star(3);
        assert_eq!(star.edge_degree(0, 2).unwrap(), 1);
        assert_eq!(star.edge_base(0, 2).unwrap(), 2);

        let bowtie = generate::bowtie();
        assert_eq!(bowtie.edge_degree(2, 3).unwrap(), 2);
        assert_eq!(bowtie.edge_base(2, 3).unwrap(), 3);
        // equal degrees: the lower id is the base
        assert_eq!(bowtie.edge_base(4, 3).unwrap(), 3);
        assert!(matches!(
            bowtie.edge_degree(0, 3),
            Err(Error::NotAnEdge(0, 3))
        ));

        let k4 = generate::complete(4);
        assert!(k4.edges().all(|(u, v)| k4.edge_degree(u, v).unwrap() == 3));
    }

    #[test]
    fn triangles_on_edge_fixtures() {
        let k3 = generate::complete(3);
        assert_eq!(k3.triangles_on_edge(0, 1).unwrap(), 1);
        let bowtie = generate::bowtie();
        assert_eq!(bowtie.triangles_on_edge(2, 3).unwrap(), 1);
        assert!(bowtie.triangles_on_edge(0, 4).is_err());
    }

    #[test]
    fn has_edge_handles_degenerate_pairs() {
        let k3 = generate::complete(3);
        assert!(k3.has_edge(0, 2));
        assert!(!k3.has_edge(1, 1));
        assert!(!k3.has_edge(0, 9));
        let p3 = generate::path(3);
        assert!(!p3.has_edge(0, 2));
    }

    #[test]
    fn from_edges_drops_loops_and_duplicates() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (2, 2), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(Graph::from_edges(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn wedges_and_components() {
        assert_eq!(generate::bowtie().wedge_count(), 10);
        assert_eq!(generate::star(3).wedge_count(), 3);
        assert!(generate::bowtie().is_connected());
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 2);
    }
}
