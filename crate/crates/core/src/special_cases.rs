//! Polymatroids whose skeleton distances are easy: matroid base polytopes
//! and graphical zonotopes.

use crate::error::{Error, Result};
use crate::flip::{approx_flip_sequence, FlipSequence};
use crate::graph::Graph;
use crate::hypergraph::{is_acyclic_orientation, Orientation};
use crate::polymatroid::{elements_of, full_mask, mask_of, Mask, SubmodularOracle};

/// Set-function oracle used as a matroid rank function.
pub type RankOracle = SubmodularOracle;

/// Rank function `U ↦ min(|U|, k)` of the uniform matroid `U(k, n)`.
pub fn uniform_matroid(k: usize, n: usize) -> Result<RankOracle> {
    Ok(SubmodularOracle::new(n, move |u: Mask| (u.count_ones() as usize).min(k) as i64)?
        .with_label(format!("uniform({k},{n})")))
}

/// Rank function of the graphic matroid: the ground set is the edge list
/// and `r(U) = n − (number of components of (V, U))`.
pub fn graphic_matroid(graph: &Graph) -> Result<RankOracle> {
    let n = graph.n();
    let edges = graph.edges().to_vec();
    Ok(SubmodularOracle::new(edges.len(), move |u: Mask| {
        let mut parent: Vec<usize> = (0..n).collect();
        let find = |parent: &mut Vec<usize>, mut x: usize| {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        };
        let mut rank = 0;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if u >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    rank += 1;
                }
            }
        }
        rank
    })?
    .with_label("graphic"))
}

fn base_mask(oracle: &RankOracle, set: &[usize], name: &str) -> Result<Mask> {
    if let Some(&e) = set.iter().find(|&&e| e >= oracle.n()) {
        return Err(Error::NotABase(format!("{name} contains element {e} outside the ground set")));
    }
    let mask = mask_of(set);
    if mask.count_ones() as usize != set.len() {
        return Err(Error::NotABase(format!("{name} repeats an element")));
    }
    let rank = oracle.ground_value();
    let value = oracle.eval(mask);
    if value != rank || set.len() as i64 != rank {
        return Err(Error::NotABase(format!(
            "{name} has size {} and rank {value}, the matroid has rank {rank}",
            set.len()
        )));
    }
    Ok(mask)
}

/// Greedy base-exchange path from `a` to `b`. Each step scans pairs
/// `(i, j) ∈ (B ∖ B_k) × (B_k ∖ B)` lexicographically and swaps in `i` for
/// `j` at the first pair that keeps full rank. Bases are returned sorted.
pub fn matroid_exchange_path(oracle: &RankOracle, a: &[usize], b: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut current = base_mask(oracle, a, "A")?;
    let target = base_mask(oracle, b, "B")?;
    let rank = oracle.ground_value();
    let mut path = vec![elements_of(current)];
    while current != target {
        let step = path.len();
        let swap = elements_of(target & !current).into_iter().find_map(|i| {
            elements_of(current & !target)
                .into_iter()
                .find(|&j| oracle.eval((current | 1 << i) & !(1 << j)) == rank)
                .map(|j| (i, j))
        });
        let (i, j) = swap.ok_or(Error::NotAMatroid(step))?;
        current = (current | 1 << i) & !(1 << j);
        path.push(elements_of(current));
    }
    Ok(path)
}

/// Every base, by brute force over `2^n` subsets.
pub fn enumerate_bases(oracle: &RankOracle) -> Result<Vec<Vec<usize>>> {
    const LIMIT: usize = 20;
    if oracle.n() > LIMIT {
        return Err(Error::capacity("base enumeration ground set", LIMIT));
    }
    let rank = oracle.ground_value();
    Ok((0..=full_mask(oracle.n()))
        .filter(|&m| m.count_ones() as i64 == rank && oracle.eval(m) == rank)
        .map(elements_of)
        .collect())
}

/// `U ↦ |edges meeting U|` for a graph.
pub fn incidence_oracle(graph: &Graph) -> Result<SubmodularOracle> {
    let edges: Vec<Mask> = graph.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    Ok(SubmodularOracle::new(graph.n(), move |u: Mask| {
        edges.iter().filter(|&&e| e & u != 0).count() as i64
    })?
    .with_label("graph incidence"))
}

/// Recovers a simple graph from its incidence oracle: `{u, v}` is an edge
/// iff `f({u}) + f({v}) − f({u, v}) = 1`.
pub fn reconstruct_graph(oracle: &SubmodularOracle) -> Result<Graph> {
    let n = oracle.n();
    if oracle.eval(0) != 0 {
        return Err(Error::NotAGraphOracle("f(∅) is not 0".into()));
    }
    let single: Vec<i64> = (0..n).map(|v| oracle.eval(1 << v)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match single[u] + single[v] - oracle.eval(1 << u | 1 << v) {
                0 => {}
                1 => edges.push((u, v)),
                other => {
                    return Err(Error::NotAGraphOracle(format!(
                        "pair {{{u}, {v}}} has multiplicity {other}"
                    )))
                }
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let degrees = graph.adjacency();
    if let Some(v) = (0..n).find(|&v| degrees[v].len() as i64 != single[v]) {
        return Err(Error::NotAGraphOracle(format!("f({{{v}}}) is not the degree of {v}")));
    }
    Ok(graph)
}

/// Direction of every edge of a graph, given by its head.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphOrientation {
    heads: Vec<usize>,
}

impl GraphOrientation {
    pub fn new(graph: &Graph, heads: Vec<usize>) -> Result<Self> {
        if heads.len() != graph.num_edges() {
            return Err(Error::MalformedOrientation(format!(
                "{} heads for {} edges",
                heads.len(),
                graph.num_edges()
            )));
        }
        for (i, (&h, &(u, v))) in heads.iter().zip(graph.edges()).enumerate() {
            if h != u && h != v {
                return Err(Error::MalformedOrientation(format!("edge {i} is not incident to {h}")));
            }
        }
        Ok(GraphOrientation { heads })
    }

    /// The orientation directing every edge from lower to higher index.
    pub fn increasing(graph: &Graph) -> Self {
        GraphOrientation {
            heads: graph.edges().iter().map(|&(_, v)| v).collect(),
        }
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    /// Arcs `(tail, head)` in edge order.
    pub fn arcs(&self, graph: &Graph) -> Vec<(usize, usize)> {
        graph
            .edges()
            .iter()
            .zip(&self.heads)
            .map(|(&(u, v), &h)| (u + v - h, h))
            .collect()
    }

    pub fn indegrees(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for &h in &self.heads {
            d[h] += 1;
        }
        d
    }

    pub fn to_orientation(&self) -> Orientation {
        Orientation::from_heads_unchecked(self.heads.clone())
    }

    pub fn is_acyclic(&self, graph: &Graph) -> bool {
        is_acyclic_orientation(&graph.to_hypergraph(), &self.to_orientation()).unwrap_or(false)
    }

    /// Number of edges directed differently, `|A Δ B|` counted per edge.
    pub fn disagreements(&self, other: &GraphOrientation) -> usize {
        self.heads.iter().zip(&other.heads).filter(|(a, b)| a != b).count()
    }
}

/// The acyclic orientation with in-degree vector `d`, found by repeatedly
/// removing the smallest vertex of residual in-degree zero and directing its
/// remaining edges outward.
pub fn orientation_from_indegrees(graph: &Graph, d: &[usize]) -> Result<GraphOrientation> {
    let n = graph.n();
    if d.len() != n {
        return Err(Error::Infeasible(format!("{} entries for {n} vertices", d.len())));
    }
    let adj = graph.adjacency();
    let edge_index = |u: usize, v: usize| {
        graph
            .edges()
            .iter()
            .position(|&e| e == (u.min(v), u.max(v)))
            .expect("adjacent vertices share an edge")
    };
    let mut residual: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let mut removed = vec![false; n];
    let mut heads = vec![usize::MAX; graph.num_edges()];
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| !removed[v] && residual[v] == 0)
            .ok_or_else(|| Error::Infeasible("no remaining vertex has residual in-degree 0".into()))?;
        removed[v] = true;
        for &w in &adj[v] {
            if !removed[w] {
                heads[edge_index(v, w)] = w;
                residual[w] -= 1;
                if residual[w] < 0 {
                    return Err(Error::Infeasible(format!("vertex {w} receives more than {} arcs", d[w])));
                }
            }
        }
    }
    Ok(GraphOrientation { heads })
}

/// `|A Δ B|` single-edge reversals from `a` to `b` with every intermediate
/// acyclic. Each step reverses the first disagreeing edge whose reversal
/// keeps the orientation acyclic.
pub fn zonotope_flip_sequence(graph: &Graph, a: &GraphOrientation, b: &GraphOrientation) -> Result<FlipSequence> {
    let hypergraph = graph.to_hypergraph();
    let seq = approx_flip_sequence(&hypergraph, &a.to_orientation(), &b.to_orientation())?;
    debug_assert_eq!(seq.len(), a.disagreements(b));
    Ok(seq)
}
