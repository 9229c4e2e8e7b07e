use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A simple undirected graph on `0..n`. Edges are stored as `(u, v)` with
/// `u < v`, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::MalformedGraph(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::MalformedGraph(format!("edge {{{u}, {v}}} outside 0..{n}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::MalformedGraph(format!("repeated edge {{{}, {}}}", e.0, e.1)));
            }
            list.push(e);
        }
        Ok(Graph { n, edges: list })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The graph viewed as a hypergraph whose hyperedges all have size two.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, self.edges.iter().map(|&(u, v)| vec![u, v]).collect())
            .expect("graph edges are valid hyperedges")
    }
}
