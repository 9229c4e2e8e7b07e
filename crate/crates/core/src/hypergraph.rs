//! Hypergraphs, orientations, their induced digraphs, and flips.
//!
//! Vertices are dense indices `0..n`. An orientation picks a head inside
//! every hyperedge; the induced digraph `D_h` is the union of inward stars
//! pointing at those heads. A flip at `(from, to)` moves the head of every
//! hyperedge that contains both vertices and is headed at `from` over to
//! `to`. Two acyclic orientations are adjacent on the skeleton of the
//! hypergraphic polytope exactly when a non-vacuous flip connects them.

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n` with an ordered list of hyperedges.
///
/// Each hyperedge is stored sorted and without repeated vertices. Duplicate
/// hyperedges are allowed and keep separate indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::MalformedHypergraph(format!("hyperedge {i} is empty")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedHypergraph(format!(
                    "hyperedge {i} repeats a vertex"
                )));
            }
            if let Some(&v) = e.last().filter(|&&v| v >= n) {
                return Err(Error::MalformedHypergraph(format!(
                    "hyperedge {i} contains vertex {v} outside 0..{n}"
                )));
            }
            normalized.push(e);
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in normalized.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Ok(Hypergraph {
            n,
            edges: normalized,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Indices of the hyperedges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn edge_contains(&self, i: usize, v: usize) -> bool {
        self.edges[i].binary_search(&v).is_ok()
    }

    /// True when any two distinct hyperedges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        max_codegree(self) <= 1
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::InvalidFlip(format!("vertex {v} outside 0..{}", self.n)))
        } else {
            Ok(())
        }
    }

    /// Kahn elimination directly on head assignments, counting arcs with
    /// multiplicity. Skips building a deduplicated [`Digraph`].
    pub(crate) fn heads_acyclic(&self, heads: &[usize], scratch: &mut AcyclicScratch) -> bool {
        let indeg = &mut scratch.indeg;
        indeg.clear();
        indeg.resize(self.n, 0);
        for (e, &h) in self.edges.iter().zip(heads) {
            indeg[h] += e.len() - 1;
        }
        let stack = &mut scratch.stack;
        stack.clear();
        stack.extend((0..self.n).filter(|&v| indeg[v] == 0));
        let mut removed = 0;
        while let Some(w) = stack.pop() {
            removed += 1;
            for &e in &self.incidence[w] {
                let h = heads[e];
                if h != w {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        stack.push(h);
                    }
                }
            }
        }
        removed == self.n
    }

    /// Applies the flip `(from, to)` in place and reports how many heads moved.
    pub(crate) fn flip_heads_in_place(&self, heads: &mut [usize], from: usize, to: usize) -> usize {
        let mut moved = 0;
        for &e in &self.incidence[from] {
            if heads[e] == from && self.edge_contains(e, to) {
                heads[e] = to;
                moved += 1;
            }
        }
        moved
    }
}

#[derive(Debug, Default)]
pub(crate) struct AcyclicScratch {
    indeg: Vec<usize>,
    stack: Vec<usize>,
}

/// An assignment of one head per hyperedge, indexed like the hyperedge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    heads: Vec<usize>,
}

impl Orientation {
    /// Validates `heads[i] ∈ edges[i]` for every hyperedge.
    pub fn new(hypergraph: &Hypergraph, heads: Vec<usize>) -> Result<Self> {
        let o = Orientation { heads };
        o.validate(hypergraph)?;
        Ok(o)
    }

    pub(crate) fn from_heads_unchecked(heads: Vec<usize>) -> Self {
        Orientation { heads }
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn head(&self, edge: usize) -> usize {
        self.heads[edge]
    }

    pub fn into_heads(self) -> Vec<usize> {
        self.heads
    }

    pub fn validate(&self, hypergraph: &Hypergraph) -> Result<()> {
        if self.heads.len() != hypergraph.num_edges() {
            return Err(Error::MalformedOrientation(format!(
                "{} heads given for {} hyperedges",
                self.heads.len(),
                hypergraph.num_edges()
            )));
        }
        for (i, &h) in self.heads.iter().enumerate() {
            if !hypergraph.edge_contains(i, h) {
                return Err(Error::MalformedOrientation(format!(
                    "head {h} of hyperedge {i} is not a member of it"
                )));
            }
        }
        Ok(())
    }

    /// Number of hyperedges headed at each vertex.
    pub fn head_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for &h in &self.heads {
            counts[h] += 1;
        }
        counts
    }
}

/// A simple digraph with a deduplicated, ordered arc set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::MalformedGraph(format!("arc ({u}, {v}) outside 0..{n}")));
            }
            set.insert((u, v));
        }
        Ok(Digraph { n, arcs: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Kahn elimination, always removing the smallest available vertex.
    /// Returns `None` when a directed cycle remains.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            indeg[v] += 1;
            out[u].push(v);
        }
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..self.n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// A directed cycle `v_0 → v_1 → … → v_0` (first vertex not repeated),
    /// or `None` when the digraph is acyclic.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        let mut inn = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            indeg[v] += 1;
            out[u].push(v);
            inn[v].push(u);
        }
        let mut removed = vec![false; self.n];
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        while let Some(u) = stack.pop() {
            removed[u] = true;
            for &v in &out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        // every surviving vertex has a surviving predecessor; walk back until a repeat
        let mut v = (0..self.n).find(|&v| !removed[v])?;
        let mut position = vec![usize::MAX; self.n];
        let mut walk = Vec::new();
        while position[v] == usize::MAX {
            position[v] = walk.len();
            walk.push(v);
            v = *inn[v].iter().find(|&&u| !removed[u]).expect("surviving vertex has a surviving predecessor");
        }
        let mut cycle = walk.split_off(position[v]);
        cycle.reverse();
        Some(cycle)
    }
}

pub fn is_acyclic(digraph: &Digraph) -> bool {
    digraph.topological_order().is_some()
}

/// The digraph `D_h`: an arc `(u, v)` whenever some hyperedge is headed at
/// `v` and also contains `u`.
pub fn induced_digraph(hypergraph: &Hypergraph, orientation: &Orientation) -> Result<Digraph> {
    orientation.validate(hypergraph)?;
    let arcs = hypergraph
        .edges()
        .iter()
        .zip(orientation.heads())
        .flat_map(|(e, &h)| e.iter().filter(move |&&u| u != h).map(move |&u| (u, h)));
    Digraph::new(hypergraph.n(), arcs)
}

pub fn is_acyclic_orientation(hypergraph: &Hypergraph, orientation: &Orientation) -> Result<bool> {
    orientation.validate(hypergraph)?;
    Ok(hypergraph.heads_acyclic(orientation.heads(), &mut AcyclicScratch::default()))
}

/// A flip at the ordered pair `(from, to)`: `from` loses head status to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flip {
    pub from: usize,
    pub to: usize,
}

impl Flip {
    pub fn new(from: usize, to: usize) -> Result<Self> {
        if from == to {
            return Err(Error::InvalidFlip(format!("from = to = {from}")));
        }
        Ok(Flip { from, to })
    }

    /// The unordered pair, smaller vertex first.
    pub fn pair(&self) -> (usize, usize) {
        (self.from.min(self.to), self.from.max(self.to))
    }

    pub fn reversed(&self) -> Flip {
        Flip {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

pub fn apply_flip(
    hypergraph: &Hypergraph,
    orientation: &Orientation,
    from: usize,
    to: usize,
) -> Result<Orientation> {
    Flip::new(from, to)?;
    hypergraph.check_vertex(from)?;
    hypergraph.check_vertex(to)?;
    orientation.validate(hypergraph)?;
    let mut heads = orientation.heads().to_vec();
    hypergraph.flip_heads_in_place(&mut heads, from, to);
    Ok(Orientation { heads })
}

/// Outcome of testing a flip against an acyclic orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipStatus {
    /// The flipped orientation differs and is acyclic.
    Flippable,
    /// The flipped orientation differs but contains a directed cycle.
    NotFlippable,
    /// No hyperedge containing both vertices is headed at `from`.
    Vacuous,
}

pub fn flip_status(
    hypergraph: &Hypergraph,
    orientation: &Orientation,
    from: usize,
    to: usize,
) -> Result<FlipStatus> {
    Flip::new(from, to)?;
    hypergraph.check_vertex(from)?;
    hypergraph.check_vertex(to)?;
    orientation.validate(hypergraph)?;
    let mut heads = orientation.heads().to_vec();
    if hypergraph.flip_heads_in_place(&mut heads, from, to) == 0 {
        return Ok(FlipStatus::Vacuous);
    }
    if hypergraph.heads_acyclic(&heads, &mut AcyclicScratch::default()) {
        Ok(FlipStatus::Flippable)
    } else {
        Ok(FlipStatus::NotFlippable)
    }
}

/// Collapses [`flip_status`] to a boolean; vacuous flips count as not flippable.
pub fn is_flippable(
    hypergraph: &Hypergraph,
    orientation: &Orientation,
    from: usize,
    to: usize,
) -> Result<bool> {
    Ok(flip_status(hypergraph, orientation, from, to)? == FlipStatus::Flippable)
}

/// Number of hyperedges containing both `u` and `v`.
pub fn codegree(hypergraph: &Hypergraph, u: usize, v: usize) -> Result<usize> {
    if u == v {
        return Err(Error::InvalidPair(u, v));
    }
    hypergraph.check_vertex(u)?;
    hypergraph.check_vertex(v)?;
    Ok(hypergraph
        .incident_edges(u)
        .iter()
        .filter(|&&e| hypergraph.edge_contains(e, v))
        .count())
}

/// Maximum codegree over all vertex pairs; 0 when no pair is covered.
pub fn max_codegree(hypergraph: &Hypergraph) -> usize {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for e in hypergraph.edges() {
        for (k, &u) in e.iter().enumerate() {
            for &v in &e[k + 1..] {
                *counts.entry((u, v)).or_default() += 1;
            }
        }
    }
    counts.into_values().max().unwrap_or(0)
}

/// Every acyclic orientation, by brute force over the product of hyperedges.
/// Fails once the product exceeds `limit`.
pub fn enumerate_acyclic_orientations(
    hypergraph: &Hypergraph,
    limit: usize,
) -> Result<Vec<Orientation>> {
    let total = hypergraph
        .edges()
        .iter()
        .try_fold(1usize, |acc, e| acc.checked_mul(e.len()).filter(|&p| p <= limit));
    if total.is_none() {
        return Err(Error::capacity("orientation enumeration", limit));
    }
    let m = hypergraph.num_edges();
    let mut digits = vec![0usize; m];
    let mut heads: Vec<usize> = hypergraph.edges().iter().map(|e| e[0]).collect();
    let mut scratch = AcyclicScratch::default();
    let mut out = Vec::new();
    loop {
        if hypergraph.heads_acyclic(&heads, &mut scratch) {
            out.push(Orientation::from_heads_unchecked(heads.clone()));
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] < hypergraph.edge(i).len() {
                heads[i] = hypergraph.edge(i)[digits[i]];
                break;
            }
            digits[i] = 0;
            heads[i] = hypergraph.edge(i)[0];
            i += 1;
        }
    }
}

/// Every hypergraph on `0..n` with at most `max_edges` hyperedges of size
/// `1..=max_size`, duplicates allowed. Hyperedge lists are nondecreasing in
/// a fixed order of the candidate subsets, so each multiset appears once.
pub fn enumerate_hypergraphs(n: usize, max_edges: usize, max_size: usize) -> Vec<Hypergraph> {
    let mut candidates: Vec<Vec<usize>> = (1u64..1 << n)
        .filter(|m| (m.count_ones() as usize) <= max_size)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn extend(
        n: usize,
        candidates: &[Vec<usize>],
        max_edges: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Hypergraph>,
    ) {
        let edges = chosen.iter().map(|&c| candidates[c].clone()).collect();
        out.push(Hypergraph::new(n, edges).expect("candidate subsets are valid hyperedges"));
        if chosen.len() == max_edges {
            return;
        }
        let first = chosen.last().copied().unwrap_or(0);
        for c in first..candidates.len() {
            chosen.push(c);
            extend(n, candidates, max_edges, chosen, out);
            chosen.pop();
        }
    }
    extend(n, &candidates, max_edges, &mut chosen, &mut out);
    out
}
