//! Hard instances for the flip distance problem.
//!
//! The star gadget is a 7-vertex hypergraph (a star plus every triple made
//! of the center and two leaves) with two orientations at flip distance 12,
//! or 15 when flips through the center are forbidden. Gluing one gadget per
//! edge of a graph `G` gives a hypergraph whose flip distance is
//! `2x + 12m`, where `x` is the minimum vertex cover size of `G` and `m` is
//! its number of edges.

use std::fmt;

use crate::error::{Error, Result};
use crate::flip::FlipSequence;
use crate::graph::Graph;
use crate::hypergraph::{AcyclicScratch, Flip, Hypergraph, Orientation};

pub const GADGET_LEAVES: usize = 6;
pub const GADGET_VERTICES: usize = GADGET_LEAVES + 1;
/// 6 two-edges plus C(6, 2) triples.
pub const GADGET_EDGES: usize = GADGET_LEAVES + GADGET_LEAVES * (GADGET_LEAVES - 1) / 2;
pub const MAX_COVER_N: usize = 20;

#[derive(Debug, Clone)]
pub struct StarGadget {
    pub hypergraph: Hypergraph,
    pub h1: Orientation,
    pub h2: Orientation,
}

/// Gadget hyperedges on `center` and `leaves[0..6]`: the two-edges
/// `{center, leaf_i}` first, then the triples `{center, leaf_i, leaf_j}`
/// for `i < j` in lexicographic order.
fn gadget_edges(center: usize, leaves: &[usize; GADGET_LEAVES]) -> Vec<Vec<usize>> {
    let mut edges: Vec<Vec<usize>> = leaves.iter().map(|&l| vec![center, l]).collect();
    for i in 0..GADGET_LEAVES {
        for j in i + 1..GADGET_LEAVES {
            edges.push(vec![center, leaves[i], leaves[j]]);
        }
    }
    edges
}

/// Heads for the gadget edges: leaves on two-edges; the smaller leaf on
/// triples for `h1`, the larger for `h2`.
fn gadget_heads(leaves: &[usize; GADGET_LEAVES], smaller: bool) -> Vec<usize> {
    let mut heads: Vec<usize> = leaves.to_vec();
    for i in 0..GADGET_LEAVES {
        for j in i + 1..GADGET_LEAVES {
            heads.push(if smaller { leaves[i] } else { leaves[j] });
        }
    }
    heads
}

pub fn build_star_gadget() -> StarGadget {
    let leaves = [1, 2, 3, 4, 5, 6];
    let hypergraph = Hypergraph::new(GADGET_VERTICES, gadget_edges(0, &leaves)).expect("gadget is valid");
    let h1 = Orientation::new(&hypergraph, gadget_heads(&leaves, true)).expect("heads inside edges");
    let h2 = Orientation::new(&hypergraph, gadget_heads(&leaves, false)).expect("heads inside edges");
    assert!(broom_of(&h1).is_some() && broom_of(&h2).is_some());
    StarGadget { hypergraph, h1, h2 }
}

/// Shape of an acyclic star-gadget orientation: the `handle` leaves sit
/// above the center in a chain (listed from the center outwards); `loose`
/// leaves point at the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broom {
    pub handle: Vec<usize>,
    pub loose: Vec<usize>,
}

/// Reads the broom of a star-gadget orientation, or `None` if the
/// orientation is not a broom (equivalently, not acyclic).
pub fn broom_of(orientation: &Orientation) -> Option<Broom> {
    let heads = orientation.heads();
    if heads.len() != GADGET_EDGES {
        return None;
    }
    let in_handle: Vec<bool> = (0..=GADGET_LEAVES)
        .map(|l| l > 0 && heads[l - 1] == l)
        .collect();
    // wins[i]: number of handle leaves that leaf i beats (is the head of a shared triple)
    let mut wins = [0usize; GADGET_VERTICES];
    let mut t = GADGET_LEAVES;
    for i in 1..=GADGET_LEAVES {
        for j in i + 1..=GADGET_LEAVES {
            let h = heads[t];
            t += 1;
            match (in_handle[i], in_handle[j]) {
                (true, true) if h == i || h == j => wins[h] += 1,
                (true, false) if h == i => {}
                (false, true) if h == j => {}
                (false, false) if h == 0 => {}
                _ => return None,
            }
        }
    }
    let mut handle: Vec<usize> = (1..=GADGET_LEAVES).filter(|&l| in_handle[l]).collect();
    handle.sort_by_key(|&l| wins[l]);
    // a transitive tournament has distinct win counts 0..k
    if handle.iter().enumerate().any(|(rank, &l)| wins[l] != rank) {
        return None;
    }
    let loose = (1..=GADGET_LEAVES).filter(|&l| !in_handle[l]).collect();
    Some(Broom { handle, loose })
}

/// The twelve-flip schedule between the gadget orientations: the pairs
/// `{0,6}, {0,5}, .., {0,1}`, twice.
pub fn gadget_schedule() -> Vec<(usize, usize)> {
    let pass = (1..=GADGET_LEAVES).rev().map(|l| (0, l));
    pass.clone().chain(pass).collect()
}

/// What a vertex of the reduction hypergraph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    Minus(usize),
    Plus(usize),
    Center { edge: usize },
    Leaf { edge: usize, leaf: usize },
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Minus(v) => write!(f, "v{v}-"),
            VertexRole::Plus(v) => write!(f, "v{v}+"),
            VertexRole::Center { edge } => write!(f, "e{edge}.c"),
            VertexRole::Leaf { edge, leaf } => write!(f, "e{edge}.l{leaf}"),
        }
    }
}

/// Flip-distance instance built from a vertex cover instance.
///
/// Layout: `v⁻ = 2v`, `v⁺ = 2v + 1`; gadget `k` occupies
/// `2n + 7k .. 2n + 7k + 7` with its center first. Hyperedges: the `n`
/// edges `{v⁻, v⁺}`, then per graph edge `{u, v}` (`u < v`) the 21 gadget
/// edges, `{center, u⁻}`, `{u⁺, v⁻}` and the six `{leaf, v⁺}`.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub hypergraph: Hypergraph,
    pub h1: Orientation,
    pub h2: Orientation,
    pub roles: Vec<VertexRole>,
}

pub const EDGES_PER_GRAPH_EDGE: usize = GADGET_EDGES + 2 + GADGET_LEAVES;

impl ReductionInstance {
    pub fn minus(&self, v: usize) -> usize {
        2 * v
    }

    pub fn plus(&self, v: usize) -> usize {
        2 * v + 1
    }

    pub fn center(&self, edge: usize) -> usize {
        2 * self.graph.n() + GADGET_VERTICES * edge
    }

    pub fn leaf(&self, edge: usize, leaf: usize) -> usize {
        self.center(edge) + leaf
    }

    pub fn role(&self, vertex: usize) -> Option<VertexRole> {
        self.roles.get(vertex).copied()
    }

    pub fn vertex_of(&self, role: VertexRole) -> Option<usize> {
        let v = match role {
            VertexRole::Minus(v) if v < self.graph.n() => self.minus(v),
            VertexRole::Plus(v) if v < self.graph.n() => self.plus(v),
            VertexRole::Center { edge } if edge < self.graph.num_edges() => self.center(edge),
            VertexRole::Leaf { edge, leaf }
                if edge < self.graph.num_edges() && (1..=GADGET_LEAVES).contains(&leaf) =>
            {
                self.leaf(edge, leaf)
            }
            _ => return None,
        };
        Some(v)
    }

    pub fn vertex_names(&self) -> Vec<String> {
        self.roles.iter().map(ToString::to_string).collect()
    }

    /// Index of the first hyperedge of gadget `edge`.
    pub fn gadget_edge_offset(&self, edge: usize) -> usize {
        self.graph.n() + EDGES_PER_GRAPH_EDGE * edge
    }
}

pub fn build_reduction(graph: &Graph) -> ReductionInstance {
    let n = graph.n();
    let m = graph.num_edges();
    let mut roles = Vec::with_capacity(2 * n + GADGET_VERTICES * m);
    for v in 0..n {
        roles.push(VertexRole::Minus(v));
        roles.push(VertexRole::Plus(v));
    }
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(n + EDGES_PER_GRAPH_EDGE * m);
    let mut heads1 = Vec::with_capacity(edges.capacity());
    let mut heads2 = Vec::with_capacity(edges.capacity());
    for v in 0..n {
        edges.push(vec![2 * v, 2 * v + 1]);
        heads1.push(2 * v + 1);
        heads2.push(2 * v + 1);
    }
    for (k, &(u, v)) in graph.edges().iter().enumerate() {
        let center = 2 * n + GADGET_VERTICES * k;
        roles.push(VertexRole::Center { edge: k });
        let leaves: [usize; GADGET_LEAVES] = std::array::from_fn(|i| center + 1 + i);
        for leaf in 1..=GADGET_LEAVES {
            roles.push(VertexRole::Leaf { edge: k, leaf });
        }
        edges.extend(gadget_edges(center, &leaves));
        heads1.extend(gadget_heads(&leaves, true));
        heads2.extend(gadget_heads(&leaves, false));
        let (u_minus, u_plus, v_minus, v_plus) = (2 * u, 2 * u + 1, 2 * v, 2 * v + 1);
        edges.push(vec![center, u_minus]);
        edges.push(vec![u_plus, v_minus]);
        heads1.extend([u_minus, v_minus]);
        heads2.extend([u_minus, v_minus]);
        for &l in &leaves {
            edges.push(vec![l, v_plus]);
            heads1.push(l);
            heads2.push(l);
        }
    }
    let hypergraph = Hypergraph::new(roles.len(), edges).expect("reduction hyperedges are valid");
    let h1 = Orientation::new(&hypergraph, heads1).expect("heads inside edges");
    let h2 = Orientation::new(&hypergraph, heads2).expect("heads inside edges");
    ReductionInstance {
        graph: graph.clone(),
        hypergraph,
        h1,
        h2,
        roles,
    }
}

/// Minimum vertex cover by branch and bound, taking the neighbour of any
/// degree-one vertex without branching. Returns the cover sorted.
pub fn min_vertex_cover(graph: &Graph) -> Result<Vec<usize>> {
    let n = graph.n();
    if n > MAX_COVER_N {
        return Err(Error::capacity("vertex cover brute force size", MAX_COVER_N));
    }
    let adj: Vec<u32> = graph
        .adjacency()
        .iter()
        .map(|nbrs| nbrs.iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    let mut best = full;
    cover_search(&adj, full, 0, &mut best);
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

/// `alive`: vertices not yet decided; `taken`: vertices in the cover so far.
fn cover_search(adj: &[u32], alive: u32, taken: u32, best: &mut u32) {
    let mut alive = alive;
    let mut taken = taken;
    loop {
        let deg = |v: usize| (adj[v] & alive).count_ones();
        if taken.count_ones() >= best.count_ones() {
            return;
        }
        let live: Vec<usize> = (0..adj.len()).filter(|&v| alive >> v & 1 == 1 && deg(v) > 0).collect();
        if live.is_empty() {
            *best = taken;
            return;
        }
        let edges: u32 = live.iter().map(|&v| deg(v)).sum::<u32>() / 2;
        let max_deg = live.iter().map(|&v| deg(v)).max().unwrap();
        if taken.count_ones() + edges.div_ceil(max_deg) >= best.count_ones() {
            return;
        }
        match live.iter().find(|&&v| deg(v) == 1) {
            Some(&v) => {
                let w = (adj[v] & alive).trailing_zeros();
                taken |= 1 << w;
                alive &= !(1 << w) & !(1 << v);
            }
            None => {
                let v = *live.iter().max_by_key(|&&v| (deg(v), std::cmp::Reverse(v))).unwrap();
                cover_search(adj, alive & !(1 << v), taken | 1 << v, best);
                let nbrs = adj[v] & alive;
                cover_search(adj, alive & !nbrs & !(1 << v), taken | nbrs, best);
                return;
            }
        }
    }
}

pub fn is_vertex_cover(graph: &Graph, cover: &[usize]) -> bool {
    graph.edges().iter().all(|(u, v)| cover.contains(u) || cover.contains(v))
}

/// Predicted flip distance `2x + 12m` of the reduction instance.
pub fn distance_formula(cover_size: usize, num_edges: usize) -> usize {
    2 * cover_size + 12 * num_edges
}

/// `2x + 12m` with `x` computed exactly by [`min_vertex_cover`].
pub fn reduction_distance_formula(graph: &Graph) -> Result<usize> {
    let x = min_vertex_cover(graph)?.len();
    Ok(distance_formula(x, graph.num_edges()))
}

/// The orientation of `{a, b}` as a flip, if any hyperedge containing both
/// is headed at one of them.
fn directed_flip(h: &Hypergraph, heads: &[usize], a: usize, b: usize) -> Option<Flip> {
    h.incident_edges(a)
        .iter()
        .filter(|&&e| h.edge_contains(e, b))
        .find_map(|&e| match heads[e] {
            x if x == a => Some(Flip { from: a, to: b }),
            x if x == b => Some(Flip { from: b, to: a }),
            _ => None,
        })
}

/// Flip sequence of length `2|cover| + 12m`: reverse `{v⁻, v⁺}` for every
/// cover vertex, run the twelve-flip schedule in every gadget, then restore
/// the `{v⁻, v⁺}` edges. The sequence is replayed before it is returned.
pub fn witness_sequence(inst: &ReductionInstance, cover: &[usize]) -> Result<FlipSequence> {
    let g = &inst.graph;
    for &v in cover {
        if v >= g.n() {
            return Err(Error::MalformedGraph(format!("cover vertex {v} outside 0..{}", g.n())));
        }
    }
    if let Some(&(u, v)) = g.edges().iter().find(|(u, v)| !cover.contains(u) && !cover.contains(v)) {
        return Err(Error::NotACover(u, v));
    }
    let mut cover: Vec<usize> = cover.to_vec();
    cover.sort_unstable();
    cover.dedup();

    let h = &inst.hypergraph;
    let mut heads = inst.h1.heads().to_vec();
    let mut flips = Vec::new();
    let mut push = |a: usize, b: usize, heads: &mut Vec<usize>| -> Result<()> {
        let flip = directed_flip(h, heads, a, b)
            .ok_or_else(|| Error::InvalidFlip(format!("no hyperedge orients {{{a}, {b}}}")))?;
        h.flip_heads_in_place(heads, flip.from, flip.to);
        flips.push(flip);
        Ok(())
    };
    for &v in &cover {
        push(inst.minus(v), inst.plus(v), &mut heads)?;
    }
    for k in 0..g.num_edges() {
        for (a, b) in gadget_schedule() {
            push(inst.center(k) + a, inst.center(k) + b, &mut heads)?;
        }
    }
    for &v in &cover {
        push(inst.minus(v), inst.plus(v), &mut heads)?;
    }
    let seq = FlipSequence {
        start: inst.h1.clone(),
        end: inst.h2.clone(),
        flips,
    };
    seq.replay(h)?;
    Ok(seq)
}

/// Checks both reduction orientations for acyclicity.
pub fn reduction_is_acyclic(inst: &ReductionInstance) -> bool {
    let mut scratch = AcyclicScratch::default();
    inst.hypergraph.heads_acyclic(inst.h1.heads(), &mut scratch)
        && inst.hypergraph.heads_acyclic(inst.h2.heads(), &mut scratch)
}
