//! Weighted plumbing graphs of spheres.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SymIntMatrix;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate vertex id {0}")]
    DuplicateId(i64),
    #[error("edge ({0}, {1}) references an undeclared vertex")]
    UnknownVertex(i64, i64),
    #[error("loop at vertex {0}")]
    Loop(i64),
    #[error("repeated edge between {0} and {1}")]
    RepeatedEdge(i64, i64),
    #[error("edge ({0}, {1}) closes a cycle; only forests are supported")]
    Cycle(i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: i64,
    /// Euler number of the disk bundle.
    pub weight: i64,
}

/// A forest of genus-0 vertices with Euler weights.
///
/// Vertex order is the declaration order and fixes the basis of the
/// intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(i64, i64)>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(i64, i64)>,
}

impl<'de> Deserialize<'de> for PlumbingGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        PlumbingGraph::new(raw.vertices, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(i64, i64)>) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateId(v.id));
            }
        }
        let mut forest = DisjointSets::new(vertices.len());
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
                return Err(GraphError::UnknownVertex(a, b));
            };
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::RepeatedEdge(a, b));
            }
            if !forest.union(ia, ib) {
                return Err(GraphError::Cycle(a, b));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: RawGraph = serde_json::from_str(text)?;
        Self::new(raw.vertices, raw.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    /// A path with ids `0..n` in order.
    pub fn linear_chain(weights: &[i64]) -> Self {
        let vertices = weights
            .iter()
            .enumerate()
            .map(|(i, &weight)| Vertex { id: i as i64, weight })
            .collect();
        let edges = (1..weights.len() as i64).map(|i| (i - 1, i)).collect();
        Self { vertices, edges }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    fn position(&self, id: i64) -> usize {
        self.vertices.iter().position(|v| v.id == id).expect("validated edge endpoint")
    }

    pub fn intersection_matrix(&self) -> SymIntMatrix {
        let mut q = SymIntMatrix::diagonal(&self.weights());
        for &(a, b) in &self.edges {
            q.set(self.position(a), self.position(b), 1);
        }
        q
    }

    /// Weights read along the graph when it is a single path (or empty).
    ///
    /// The walk starts at the endpoint declared first. Returns `None` for
    /// branched or disconnected graphs.
    pub fn chain_weights(&self) -> Option<Vec<i64>> {
        let n = self.vertices.len();
        if n == 0 {
            return Some(Vec::new());
        }
        if self.edges.len() != n - 1 {
            return None;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            let (ia, ib) = (self.position(a), self.position(b));
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        if adj.iter().any(|nbrs| nbrs.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&i| adj[i].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
            prev = cur;
            cur = next;
            order.push(cur);
        }
        Some(order.into_iter().map(|i| self.vertices[i].weight).collect())
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
