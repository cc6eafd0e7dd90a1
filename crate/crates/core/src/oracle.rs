//! Query-counted access to a graph in the random-walk model.
//!
//! Estimators never touch a [`Graph`] directly: they open an
//! [`OracleSession`] at a seed vertex and ask for random neighbors, degrees,
//! pair existence, and (for SERWC only) indexed neighbors. Every answer is
//! tallied in the session's [`QueryLedger`].
//!
//! In strict mode the session also tracks which vertices have been revealed
//! (the seed and anything a query returned) and refuses to answer about any
//! other vertex.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Name of the generator behind every session, reported in run metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8";

pub type SessionRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub rn_queries: u64,
    pub deg_queries: u64,
    pub edge_queries: u64,
    pub idx_queries: u64,
}

impl QueryLedger {
    /// Budgeted queries. Degree queries are excluded: every algorithm learns
    /// the degree of each vertex it sees.
    pub fn countable_queries(&self) -> u64 {
        self.rn_queries + self.edge_queries + self.idx_queries
    }
}

pub struct OracleSession<'g> {
    graph: &'g Graph,
    seed_vertex: VertexId,
    ledger: QueryLedger,
    rng: SessionRng,
    revealed: Option<HashSet<VertexId>>,
    degrees: HashMap<VertexId, usize>,
}

impl<'g> OracleSession<'g> {
    pub fn open(
        graph: &'g Graph,
        seed_vertex: VertexId,
        rng_seed: u64,
        strict: bool,
    ) -> Result<Self> {
        graph.check_vertex(seed_vertex)?;
        if graph.deg(seed_vertex) == 0 {
            return Err(Error::IsolatedSeed(seed_vertex));
        }
        let revealed = strict.then(|| HashSet::from([seed_vertex]));
        Ok(OracleSession {
            graph,
            seed_vertex,
            ledger: QueryLedger::default(),
            rng: SessionRng::seed_from_u64(rng_seed),
            revealed,
            degrees: HashMap::new(),
        })
    }

    pub fn seed_vertex(&self) -> VertexId {
        self.seed_vertex
    }

    pub fn ledger(&self) -> QueryLedger {
        self.ledger
    }

    pub fn is_strict(&self) -> bool {
        self.revealed.is_some()
    }

    pub fn rng(&mut self) -> &mut SessionRng {
        &mut self.rng
    }

    fn check_revealed(&self, v: VertexId) -> Result<()> {
        self.graph.check_vertex(v)?;
        match &self.revealed {
            Some(set) if !set.contains(&v) => Err(Error::AccessViolation(v)),
            _ => Ok(()),
        }
    }

    fn reveal(&mut self, v: VertexId) {
        if let Some(set) = &mut self.revealed {
            set.insert(v);
        }
    }

    /// Marks vertices as observed without spending queries; for estimators
    /// handed a walk trace built outside the session.
    pub fn reveal_all(&mut self, vertices: impl IntoIterator<Item = VertexId>) {
        if let Some(set) = &mut self.revealed {
            set.extend(vertices);
        }
    }

    /// Uniform random neighbor of `v`.
    pub fn random_neighbor(&mut self, v: VertexId) -> Result<VertexId> {
        self.check_revealed(v)?;
        let adj = self.graph.neighbors(v);
        if adj.is_empty() {
            return Err(Error::DeadEnd(v));
        }
        self.ledger.rn_queries += 1;
        let w = adj[self.rng.random_range(0..adj.len())];
        self.reveal(w);
        Ok(w)
    }

    /// Always issues (and counts) a degree query.
    pub fn degree_query(&mut self, v: VertexId) -> Result<usize> {
        self.check_revealed(v)?;
        self.ledger.deg_queries += 1;
        let d = self.graph.deg(v);
        self.degrees.insert(v, d);
        Ok(d)
    }

    /// Degree of `v`, querying only the first time it is needed.
    pub fn known_degree(&mut self, v: VertexId) -> Result<usize> {
        match self.degrees.get(&v) {
            Some(&d) => Ok(d),
            None => self.degree_query(v),
        }
    }

    /// Whether `{u, v}` is an edge. `(v, v)` is answered `false` and still
    /// counted.
    pub fn edge_query(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_revealed(u)?;
        self.check_revealed(v)?;
        self.ledger.edge_queries += 1;
        Ok(self.graph.has_edge(u, v))
    }

    /// The `i`-th (1-based) neighbor of `v` in sorted order, or `None` past
    /// the end.
    pub fn indexed_neighbor(&mut self, v: VertexId, i: usize) -> Result<Option<VertexId>> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        self.check_revealed(v)?;
        self.ledger.idx_queries += 1;
        let w = self.graph.neighbors(v).get(i - 1).copied();
        if let Some(w) = w {
            self.reveal(w);
        }
        Ok(w)
    }
}
