//! Small fixtures and synthetic random graph models.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::graph::{Graph, VertexId};

fn build(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
    Graph::from_edges(n, edges).expect("generated ids are in range")
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as VertexId;
    let edges: Vec<_> = (0..n32)
        .flat_map(|u| (u + 1..n32).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let n32 = n as VertexId;
    let edges: Vec<_> = (0..n32).map(|v| (v, (v + 1) % n32)).collect();
    build(n, &edges)
}

/// Center 0 with leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves as VertexId).map(|v| (0, v)).collect();
    build(leaves + 1, &edges)
}

/// Triangles {0,1,2} and {2,3,4} sharing vertex 2.
pub fn bowtie() -> Graph {
    build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
}

/// G(n, p).
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// G(n, m): `m` distinct edges chosen uniformly.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(m <= n * (n - 1) / 2, "too many edges for {n} vertices");
    let mut chosen = HashSet::with_capacity(m);
    while chosen.len() < m {
        let u = rng.random_range(0..n as VertexId);
        let v = rng.random_range(0..n as VertexId);
        if u != v {
            chosen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = chosen.into_iter().collect();
    edges.sort_unstable();
    build(n, &edges)
}

/// Preferential attachment with triad formation (Holme-Kim).
///
/// Each new vertex attaches `links` edges. The first goes to a
/// degree-proportional target; each subsequent one closes a triangle through a
/// neighbor of the previous target with probability `triad_p`, else attaches
/// preferentially again. Seeded with a clique on `links + 1` vertices.
pub fn holme_kim<R: Rng + ?Sized>(n: usize, links: usize, triad_p: f64, rng: &mut R) -> Graph {
    assert!(links >= 1 && n > links);
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    // every edge endpoint, so a uniform pick is degree-proportional
    let mut endpoints: Vec<VertexId> = Vec::new();
    let mut edges = Vec::new();
    let mut link = |adj: &mut Vec<Vec<VertexId>>, endpoints: &mut Vec<VertexId>, u, v| {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        endpoints.push(u);
        endpoints.push(v);
        edges.push((u, v));
    };
    for u in 0..=links as VertexId {
        for v in 0..u {
            link(&mut adj, &mut endpoints, u, v);
        }
    }
    for u in (links + 1) as VertexId..n as VertexId {
        let mut targets: Vec<VertexId> = Vec::with_capacity(links);
        let mut last: Option<VertexId> = None;
        while targets.len() < links {
            let mut pick = None;
            if let Some(prev) = last {
                if rng.random_bool(triad_p) {
                    let open: Vec<VertexId> = adj[prev as usize]
                        .iter()
                        .copied()
                        .filter(|w| !targets.contains(w))
                        .collect();
                    pick = open.choose(rng).copied();
                }
            }
            let v = match pick {
                Some(v) => v,
                None => loop {
                    let v = *endpoints.choose(rng).expect("seed clique present");
                    if !targets.contains(&v) {
                        break v;
                    }
                },
            };
            targets.push(v);
            last = Some(v);
        }
        for v in targets {
            link(&mut adj, &mut endpoints, u, v);
        }
    }
    build(n, &edges)
}

/// Random geometric graph on the unit torus: vertices within `radius` are
/// joined.
pub fn random_geometric<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> Graph {
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let cells = ((1.0 / radius).floor() as usize).max(1);
    let cell_of = |x: f64| ((x * cells as f64) as usize).min(cells - 1);
    let mut grid: Vec<Vec<VertexId>> = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in points.iter().enumerate() {
        grid[cell_of(x) * cells + cell_of(y)].push(i as VertexId);
    }
    let torus = |a: f64, b: f64| {
        let d = (a - b).abs();
        d.min(1.0 - d)
    };
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        let span: Vec<usize> = if cells < 3 {
            (0..cells).collect()
        } else {
            vec![cells - 1, 0, 1]
        };
        let mut seen = HashSet::new();
        for &dx in &span {
            for &dy in &span {
                let cell = ((cx + dx) % cells) * cells + (cy + dy) % cells;
                if !seen.insert(cell) {
                    continue;
                }
                for &j in &grid[cell] {
                    if (j as usize) <= i {
                        continue;
                    }
                    let (px, py) = points[j as usize];
                    let (ddx, ddy) = (torus(x, px), torus(y, py));
                    if ddx * ddx + ddy * ddy <= r2 {
                        edges.push((i as VertexId, j));
                    }
                }
            }
        }
    }
    build(n, &edges)
}

/// Planted partition: `communities` blocks of `size` vertices, intra-block
/// edges with probability `p_in`, plus `inter` uniformly random cross edges.
pub fn planted_partition<R: Rng + ?Sized>(
    communities: usize,
    size: usize,
    p_in: f64,
    inter: usize,
    rng: &mut R,
) -> Graph {
    let n = communities * size;
    let mut edges = Vec::new();
    for c in 0..communities {
        let base = (c * size) as VertexId;
        for i in 0..size as VertexId {
            for j in i + 1..size as VertexId {
                if rng.random_bool(p_in) {
                    edges.push((base + i, base + j));
                }
            }
        }
    }
    let mut added = 0;
    while added < inter && communities > 1 {
        let u = rng.random_range(0..n as VertexId);
        let v = rng.random_range(0..n as VertexId);
        if u as usize / size != v as usize / size {
            edges.push((u, v));
            added += 1;
        }
    }
    build(n, &edges)
}

/// Largest connected component, relabelled densely with labels kept.
pub fn largest_component(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![s as VertexId];
        comp[s] = id;
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.neighbors(u) {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let best = (0..sizes.len())
        .max_by_key(|&i| (sizes[i], usize::MAX - i))
        .unwrap_or(0);
    let mut remap = vec![VertexId::MAX; n];
    let mut labels = Vec::new();
    for v in 0..n {
        if comp[v] == best {
            remap[v] = labels.len() as VertexId;
            labels.push(g.label(v as VertexId));
        }
    }
    let edges: Vec<_> = g
        .edges()
        .filter(|&(u, _)| comp[u as usize] == best)
        .map(|(u, v)| (remap[u as usize], remap[v as usize]))
        .collect();
    Graph::from_dense_edges(labels, edges).expect("remapped ids are in range")
}
