//! Random walks under the oracle, degree-weighted position sampling, and
//! stride partitions of a walk.

use std::io::Write;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::oracle::OracleSession;

/// Canonical key of an undirected edge.
#[inline]
pub fn edge_key(u: VertexId, v: VertexId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a as u64) << 32 | b as u64
}

/// The edges of a walk in order, as a multiset: repeated edges occupy
/// distinct positions.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkTrace {
    vertices: Vec<VertexId>,
    vertex_degrees: Vec<u64>,
    edges: Vec<(VertexId, VertexId)>,
    edge_degrees: Vec<u64>,
    degree_sum: u64,
}

impl WalkTrace {
    /// Builds a trace from a given edge sequence with exact degrees; used to
    /// study estimators on hand-picked multisets.
    pub fn from_edge_sequence(g: &Graph, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyTrace);
        }
        let mut edge_degrees = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            edge_degrees.push(g.edge_degree(u, v)? as u64);
        }
        let mut vertices = vec![edges[0].0];
        vertices.extend(edges.iter().map(|&(_, v)| v));
        let vertex_degrees = vertices
            .iter()
            .map(|&v| g.neighbors(v).len() as u64)
            .collect();
        Ok(WalkTrace {
            vertices,
            vertex_degrees,
            degree_sum: edge_degrees.iter().sum(),
            edges: edges.to_vec(),
            edge_degrees,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The `r + 1` visited vertices.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Degrees of [`WalkTrace::vertices`], position by position.
    pub fn vertex_degrees(&self) -> &[u64] {
        &self.vertex_degrees
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_degrees(&self) -> &[u64] {
        &self.edge_degrees
    }

    /// `d_R`, the sum of edge degrees over positions.
    pub fn degree_sum(&self) -> u64 {
        self.degree_sum
    }

    pub fn edge_keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.iter().map(|&(u, v)| edge_key(u, v))
    }

    /// Splits positions into `t_hat` strata; stratum `i` (0-based) holds
    /// positions `i, i + t_hat, i + 2 t_hat, …`.
    pub fn stride_partition(&self, t_hat: usize) -> Result<Vec<Vec<usize>>> {
        if t_hat == 0 {
            return Err(Error::InvalidConfig("stride must be positive".into()));
        }
        if self.len() < t_hat {
            return Err(Error::WalkTooShort {
                r: self.len(),
                t_hat,
            });
        }
        Ok((0..t_hat)
            .map(|i| (i..self.len()).step_by(t_hat).collect())
            .collect())
    }

    /// One edge per line, `u v`, using raw labels.
    pub fn dump<W: Write>(&self, g: &Graph, mut sink: W) -> Result<()> {
        for &(u, v) in &self.edges {
            writeln!(sink, "{} {}", g.label(u), g.label(v))?;
        }
        Ok(())
    }
}

/// Runs an `r`-step walk from the session's seed vertex.
///
/// Spends one random-neighbor query per step and one degree query per newly
/// seen vertex. With `lazy`, each step still draws a uniform neighbor `u` of
/// the current vertex `v` and records the edge, stored as `(u, v)`, but moves
/// to `u` only with probability 1/2. The recorded edge stays uniform at
/// stationarity and the step still costs exactly one query.
pub fn random_walk(session: &mut OracleSession<'_>, r: usize, lazy: bool) -> Result<WalkTrace> {
    if r == 0 {
        return Err(Error::InvalidConfig("walk length must be positive".into()));
    }
    let mut current = session.seed_vertex();
    let mut current_degree = session.known_degree(current)?;
    let mut trace = WalkTrace {
        vertices: Vec::with_capacity(r + 1),
        vertex_degrees: Vec::with_capacity(r + 1),
        edges: Vec::with_capacity(r),
        edge_degrees: Vec::with_capacity(r),
        degree_sum: 0,
    };
    trace.vertices.push(current);
    trace.vertex_degrees.push(current_degree as u64);

    for _ in 0..r {
        if current_degree == 0 {
            return Err(Error::DeadEnd(current));
        }
        let next = session.random_neighbor(current)?;
        let next_degree = session.known_degree(next)?;
        let d = current_degree.min(next_degree) as u64;
        trace.edge_degrees.push(d);
        trace.degree_sum += d;
        if lazy && session.rng().random_bool(0.5) {
            trace.edges.push((next, current));
            trace.vertices.push(current);
            trace.vertex_degrees.push(current_degree as u64);
            continue;
        }
        trace.edges.push((current, next));
        trace.vertices.push(next);
        trace.vertex_degrees.push(next_degree as u64);
        current = next;
        current_degree = next_degree;
    }
    Ok(trace)
}

/// Draws walk positions with probability proportional to their edge degree,
/// by binary search over prefix sums.
#[derive(Clone, Debug)]
pub struct WeightedIndexSampler {
    prefix: Vec<u64>,
}

impl WeightedIndexSampler {
    pub fn from_weights(weights: &[u64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyTrace);
        }
        let mut total = 0u64;
        let prefix: Vec<u64> = weights
            .iter()
            .map(|&w| {
                total += w;
                total
            })
            .collect();
        if total == 0 {
            return Err(Error::InvalidConfig("all sampling weights are zero".into()));
        }
        Ok(WeightedIndexSampler { prefix })
    }

    pub fn for_trace(trace: &WalkTrace) -> Result<Self> {
        Self::from_weights(trace.edge_degrees())
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        *self.prefix.last().expect("non-empty")
    }

    /// Exact draw probability of `position`, from the prefix sums.
    pub fn probability(&self, position: usize) -> f64 {
        let lo = if position == 0 {
            0
        } else {
            self.prefix[position - 1]
        };
        (self.prefix[position] - lo) as f64 / self.total_weight() as f64
    }

    /// Number of integers `x` in `0..total` that map to `position`; the
    /// exact numerator of its probability.
    pub fn preimage_size(&self, position: usize) -> u64 {
        let mut count = 0;
        let lo = if position == 0 {
            0
        } else {
            self.prefix[position - 1]
        };
        // boundaries of the preimage are exactly where search lands on `position`
        if lo < self.total_weight() && self.locate(lo) == position {
            count = self.prefix[position] - lo;
        }
        count
    }

    #[inline]
    fn locate(&self, x: u64) -> usize {
        self.prefix.partition_point(|&c| c <= x)
    }

    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let x = rng.random_range(0..self.total_weight());
        self.locate(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k3_walk_has_uniform_edge_degrees() {
        let k3 = generate::complete(3);
        let mut s = OracleSession::open(&k3, 0, 1, true).unwrap();
        let t = random_walk(&mut s, 4, false).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.edge_degrees(), &[2, 2, 2, 2]);
        assert_eq!(t.degree_sum(), 8);
        assert_eq!(t.vertices().len(), 5);
        assert_eq!(s.ledger().rn_queries, 4);
        // three vertices, each degree queried at most once
        assert!(s.ledger().deg_queries <= 3);
    }

    #[test]
    fn walks_are_valid_and_cost_r_queries() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = generate::holme_kim(200, 3, 0.4, &mut rng);
        for seed in 0..20 {
            let mut s = OracleSession::open(&g, seed as VertexId, seed, true).unwrap();
            let t = random_walk(&mut s, 500, false).unwrap();
            assert_eq!(s.ledger().rn_queries, 500);
            for w in t.edges().windows(2) {
                assert_eq!(w[0].1, w[1].0);
            }
            for (i, &(u, v)) in t.edges().iter().enumerate() {
                assert_eq!(t.vertices()[i], u);
                assert_eq!(t.vertices()[i + 1], v);
                assert_eq!(t.edge_degrees()[i], g.edge_degree(u, v).unwrap() as u64);
            }
            assert!(t.degree_sum() >= t.len() as u64);
            let distinct: std::collections::HashSet<_> = t.vertices().iter().collect();
            assert_eq!(s.ledger().deg_queries, distinct.len() as u64);
        }
    }

    #[test]
    fn lazy_walk_stays_half_the_time_at_full_cost() {
        let g = generate::bowtie();
        let mut s = OracleSession::open(&g, 0, 4, true).unwrap();
        let t = random_walk(&mut s, 20_000, true).unwrap();
        assert_eq!(t.len(), 20_000);
        assert_eq!(s.ledger().rn_queries, 20_000);
        let v = t.vertices();
        let moves = v.windows(2).filter(|w| w[0] != w[1]).count();
        assert!((9_500..10_500).contains(&moves), "moves {moves}");
        for (i, &(a, b)) in t.edges().iter().enumerate() {
            assert!(g.has_edge(a, b));
            assert!(a == v[i] || b == v[i]);
            assert_eq!(b, v[i + 1]);
        }
        let mut freq = std::collections::HashMap::new();
        for k in t.edge_keys() {
            *freq.entry(k).or_insert(0usize) += 1;
        }
        assert_eq!(freq.len(), 6);
        assert!(
            freq.values().all(|&c| (2_900..3_800).contains(&c)),
            "{freq:?}"
        );
    }

    #[test]
    fn zero_length_walk_is_rejected() {
        let g = generate::complete(3);
        let mut s = OracleSession::open(&g, 0, 0, false).unwrap();
        assert!(random_walk(&mut s, 0, false).is_err());
    }

    #[test]
    fn sampler_probabilities_are_exact() {
        let s = WeightedIndexSampler::from_weights(&[2, 4, 6]).unwrap();
        assert_eq!(s.probability(0), 1.0 / 6.0);
        assert_eq!(s.probability(1), 1.0 / 3.0);
        assert_eq!(s.probability(2), 0.5);
        let single = WeightedIndexSampler::from_weights(&[3]).unwrap();
        assert_eq!(single.probability(0), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!((0..50).all(|_| single.draw(&mut rng) == 0));
        assert!(WeightedIndexSampler::from_weights(&[]).is_err());
        assert!(WeightedIndexSampler::from_weights(&[0, 0]).is_err());
    }

    #[test]
    fn sampler_preimages_partition_the_range() {
        // every x in 0..total maps to exactly one position, and position p
        // receives exactly w_p of them
        let weights = [3u64, 1, 0, 7, 2, 5];
        let s = WeightedIndexSampler::from_weights(&weights).unwrap();
        let mut hits = vec![0u64; weights.len()];
        for x in 0..s.total_weight() {
            hits[s.locate(x)] += 1;
        }
        assert_eq!(hits, weights);
        for (p, &w) in weights.iter().enumerate() {
            assert_eq!(s.preimage_size(p), w);
        }
    }

    #[test]
    fn sampler_monte_carlo_on_k3_walk() {
        let s = WeightedIndexSampler::from_weights(&[2, 2, 2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let draws = 100_000u64;
        let mut counts = [0u64; 4];
        for _ in 0..draws {
            counts[s.draw(&mut rng)] += 1;
        }
        let p = 0.25;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - draws as f64 * p).abs() <= 3.0 * sigma);
        }
    }

    #[test]
    fn consecutive_draws_are_independent() {
        // Pearson chi-square on the 3x3 table of (draw_k, draw_{k+1}).
        let s = WeightedIndexSampler::from_weights(&[1, 2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pairs = 60_000;
        let mut table = [[0f64; 3]; 3];
        for _ in 0..pairs {
            let a = s.draw(&mut rng);
            let b = s.draw(&mut rng);
            table[a][b] += 1.0;
        }
        let mut chi2 = 0.0;
        for (a, row) in table.iter().enumerate() {
            for (b, &seen) in row.iter().enumerate() {
                let expected = pairs as f64 * s.probability(a) * s.probability(b);
                chi2 += (seen - expected).powi(2) / expected;
            }
        }
        // 8 degrees of freedom; 99.9th percentile is 26.1
        assert!(chi2 < 26.1, "chi2 = {chi2}");
    }

    #[test]
    fn sampler_is_deterministic_given_seed() {
        let s = WeightedIndexSampler::from_weights(&[5, 1, 9, 2]).unwrap();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            (0..100).map(|_| s.draw(&mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            (0..100).map(|_| s.draw(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn stride_partition_layout() {
        let g = generate::complete(3);
        let edges = [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)];
        let t = WalkTrace::from_edge_sequence(&g, &edges).unwrap();
        assert_eq!(
            t.stride_partition(2).unwrap(),
            vec![vec![0, 2, 4], vec![1, 3, 5]]
        );
        assert_eq!(
            t.stride_partition(1).unwrap(),
            vec![(0..6).collect::<Vec<_>>()]
        );
        assert!(matches!(
            t.stride_partition(7),
            Err(Error::WalkTooShort { r: 6, t_hat: 7 })
        ));
    }

    proptest::proptest! {
        #[test]
        fn stride_partition_covers_every_position_once(r in 1usize..200, t in 1usize..40) {
            proptest::prop_assume!(t <= r);
            let g = generate::complete(3);
            let edges: Vec<_> = (0..r).map(|i| [(0, 1), (1, 2), (2, 0)][i % 3]).collect();
            let trace = WalkTrace::from_edge_sequence(&g, &edges).unwrap();
            let parts = trace.stride_partition(t).unwrap();
            proptest::prop_assert_eq!(parts.len(), t);
            let sizes: Vec<_> = parts.iter().map(Vec::len).collect();
            proptest::prop_assert_eq!(sizes.iter().sum::<usize>(), r);
            proptest::prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            let mut all: Vec<_> = parts.concat();
            all.sort_unstable();
            proptest::prop_assert_eq!(all, (0..r).collect::<Vec<_>>());
        }

        #[test]
        fn sampler_probabilities_match_normalized_weights(
            weights in proptest::collection::vec(1u64..1000, 1..50)
        ) {
            let s = WeightedIndexSampler::from_weights(&weights).unwrap();
            let total: u64 = weights.iter().sum();
            for (p, &w) in weights.iter().enumerate() {
                proptest::prop_assert_eq!(s.preimage_size(p), w);
                proptest::prop_assert!((s.probability(p) - w as f64 / total as f64).abs() < 1e-15);
            }
        }
    }
}
