//! Flip distances between acyclic orientations.
//!
//! Two routes are provided. [`approx_flip_sequence`] repeatedly flips the
//! first hyperedge whose head differs from the target and whose flip keeps
//! the orientation acyclic; such a hyperedge always exists, and the result
//! is within a factor of the maximum codegree of optimal. [`exact_distance`]
//! is a breadth-first search over the flip graph and serves as the oracle.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::hypergraph::{max_codegree, AcyclicScratch, Flip, Hypergraph, Orientation};

/// Default ceiling on the number of orientations a search may visit.
pub const DEFAULT_MAX_STATES: usize = 50_000_000;

/// An ordered list of flips leading from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSequence {
    pub start: Orientation,
    pub end: Orientation,
    pub flips: Vec<Flip>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    /// Unordered vertex pairs of the flips, in order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.flips.iter().map(Flip::pair).collect()
    }

    /// Replays the sequence and returns every visited orientation, `start`
    /// included. Fails if a flip is vacuous, an intermediate orientation has
    /// a cycle, or the replay does not end at `end`.
    pub fn replay(&self, hypergraph: &Hypergraph) -> Result<Vec<Orientation>> {
        self.start.validate(hypergraph)?;
        self.end.validate(hypergraph)?;
        let mut scratch = AcyclicScratch::default();
        if !hypergraph.heads_acyclic(self.start.heads(), &mut scratch) {
            return Err(Error::NotAcyclic);
        }
        let mut heads = self.start.heads().to_vec();
        let mut visited = vec![self.start.clone()];
        for (step, flip) in self.flips.iter().enumerate() {
            hypergraph.check_vertex(flip.from)?;
            hypergraph.check_vertex(flip.to)?;
            if flip.from == flip.to {
                return Err(Error::InvalidFlip(format!("step {step}: from = to")));
            }
            if hypergraph.flip_heads_in_place(&mut heads, flip.from, flip.to) == 0 {
                return Err(Error::InvalidFlip(format!("step {step}: flip {flip} is vacuous")));
            }
            if !hypergraph.heads_acyclic(&heads, &mut scratch) {
                return Err(Error::InvalidFlip(format!("step {step}: flip {flip} creates a cycle")));
            }
            visited.push(Orientation::from_heads_unchecked(heads.clone()));
        }
        if heads != self.end.heads() {
            return Err(Error::InvalidFlip("replay does not reach the end orientation".into()));
        }
        Ok(visited)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactBfs,
    CodegreeApprox,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactBfs => "exact-bfs",
            Method::CodegreeApprox => "codegree-approx",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub length: usize,
    pub sequence: FlipSequence,
    pub lower_bound: usize,
    pub method: Method,
}

/// Options for the breadth-first searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Flips touching any of these vertices are not allowed.
    pub forbidden: Vec<usize>,
    pub max_states: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            forbidden: Vec::new(),
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl SearchOptions {
    pub fn forbid(mut self, v: usize) -> Self {
        self.forbidden.push(v);
        self
    }

    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }
}

fn check_acyclic_pair(h: &Hypergraph, a: &Orientation, b: &Orientation) -> Result<()> {
    a.validate(h)?;
    b.validate(h)?;
    let mut scratch = AcyclicScratch::default();
    if !h.heads_acyclic(a.heads(), &mut scratch) || !h.heads_acyclic(b.heads(), &mut scratch) {
        return Err(Error::NotAcyclic);
    }
    Ok(())
}

/// Number of hyperedges whose heads differ.
pub fn diff_count(hypergraph: &Hypergraph, h1: &Orientation, h2: &Orientation) -> Result<usize> {
    h1.validate(hypergraph)?;
    h2.validate(hypergraph)?;
    Ok(h1.heads().iter().zip(h2.heads()).filter(|(a, b)| a != b).count())
}

/// `(ceil(diff / Δ₂), diff)`. A single flip moves at most Δ₂ heads, and the
/// approximation never needs more than `diff` flips.
pub fn distance_bounds(
    hypergraph: &Hypergraph,
    h1: &Orientation,
    h2: &Orientation,
) -> Result<(usize, usize)> {
    let diff = diff_count(hypergraph, h1, h2)?;
    if diff == 0 {
        return Ok((0, 0));
    }
    // diff > 0 means some hyperedge has two candidate heads, so Δ₂ ≥ 1.
    let d2 = max_codegree(hypergraph).max(1);
    Ok((diff.div_ceil(d2), diff))
}

fn first_flippable_difference(
    h: &Hypergraph,
    current: &mut [usize],
    target: &[usize],
    scratch: &mut AcyclicScratch,
    changed: &mut Vec<usize>,
) -> Option<(usize, Flip)> {
    for e in 0..h.num_edges() {
        let (from, to) = (current[e], target[e]);
        if from == to {
            continue;
        }
        flip_recording(h, current, from, to, changed);
        let ok = h.heads_acyclic(current, scratch);
        for &c in changed.iter() {
            current[c] = from;
        }
        if ok {
            return Some((e, Flip { from, to }));
        }
    }
    None
}

/// The first hyperedge (by index) whose heads differ and whose flip from
/// the `h1` head to the `h2` head keeps `h1` acyclic; `None` when `h1 = h2`.
pub fn find_flippable_difference(
    hypergraph: &Hypergraph,
    h1: &Orientation,
    h2: &Orientation,
) -> Result<Option<(usize, Flip)>> {
    check_acyclic_pair(hypergraph, h1, h2)?;
    let mut current = h1.heads().to_vec();
    Ok(first_flippable_difference(
        hypergraph,
        &mut current,
        h2.heads(),
        &mut AcyclicScratch::default(),
        &mut Vec::new(),
    ))
}

/// Flip sequence from `h1` to `h2` of length at most `diff_count` and at
/// most `Δ₂(H) · dist(h1, h2)`.
pub fn approx_flip_sequence(
    hypergraph: &Hypergraph,
    h1: &Orientation,
    h2: &Orientation,
) -> Result<FlipSequence> {
    check_acyclic_pair(hypergraph, h1, h2)?;
    let mut current = h1.heads().to_vec();
    let target = h2.heads();
    let mut scratch = AcyclicScratch::default();
    let mut changed = Vec::new();
    let mut flips = Vec::new();
    while current != target {
        let (_, flip) =
            first_flippable_difference(hypergraph, &mut current, target, &mut scratch, &mut changed)
                .expect("distinct acyclic orientations always admit a flippable difference");
        hypergraph.flip_heads_in_place(&mut current, flip.from, flip.to);
        flips.push(flip);
    }
    Ok(FlipSequence {
        start: h1.clone(),
        end: h2.clone(),
        flips,
    })
}

pub fn approx_distance(
    hypergraph: &Hypergraph,
    h1: &Orientation,
    h2: &Orientation,
) -> Result<DistanceReport> {
    let sequence = approx_flip_sequence(hypergraph, h1, h2)?;
    let (lower_bound, _) = distance_bounds(hypergraph, h1, h2)?;
    Ok(DistanceReport {
        length: sequence.len(),
        sequence,
        lower_bound,
        method: Method::CodegreeApprox,
    })
}

fn flip_recording(h: &Hypergraph, heads: &mut [usize], from: usize, to: usize, changed: &mut Vec<usize>) {
    changed.clear();
    for &e in h.incident_edges(from) {
        if heads[e] == from && h.edge_contains(e, to) {
            heads[e] = to;
            changed.push(e);
        }
    }
}

type Key = SmallVec<[u64; 2]>;

/// Packs a head vector as per-hyperedge positions, `ceil(log2 |e|)` bits each.
struct Codec {
    // (word, shift, bits) per hyperedge
    slots: Vec<(usize, u32, u32)>,
    words: usize,
}

impl Codec {
    fn new(h: &Hypergraph) -> Self {
        let mut slots = Vec::with_capacity(h.num_edges());
        let (mut word, mut shift) = (0usize, 0u32);
        for e in h.edges() {
            let bits = usize::BITS - (e.len() - 1).leading_zeros();
            if shift + bits > 64 {
                word += 1;
                shift = 0;
            }
            slots.push((word, shift, bits));
            shift += bits;
        }
        Codec {
            slots,
            words: word + 1,
        }
    }

    fn encode(&self, h: &Hypergraph, heads: &[usize]) -> Key {
        let mut key: Key = SmallVec::from_elem(0, self.words);
        for (e, &(word, shift, bits)) in self.slots.iter().enumerate() {
            if bits > 0 {
                let pos = h.edge(e).binary_search(&heads[e]).expect("head inside edge");
                key[word] |= (pos as u64) << shift;
            }
        }
        key
    }

    fn decode(&self, h: &Hypergraph, key: &Key, heads: &mut Vec<usize>) {
        heads.clear();
        for (e, &(word, shift, bits)) in self.slots.iter().enumerate() {
            let pos = if bits == 0 {
                0
            } else {
                ((key[word] >> shift) & ((1u64 << bits) - 1)) as usize
            };
            heads.push(h.edge(e)[pos]);
        }
    }
}

/// Enumerates flip-graph neighbours of an acyclic orientation.
struct Expander<'a> {
    h: &'a Hypergraph,
    codec: Codec,
    forbidden: Vec<bool>,
    scratch: AcyclicScratch,
    heads: Vec<usize>,
    changed: Vec<usize>,
    candidates: Vec<(usize, usize, usize)>,
}

impl<'a> Expander<'a> {
    fn new(h: &'a Hypergraph, opts: &SearchOptions) -> Result<Self> {
        let mut forbidden = vec![false; h.n()];
        for &v in &opts.forbidden {
            h.check_vertex(v)?;
            forbidden[v] = true;
        }
        Ok(Expander {
            h,
            codec: Codec::new(h),
            forbidden,
            scratch: AcyclicScratch::default(),
            heads: Vec::new(),
            changed: Vec::new(),
            candidates: Vec::new(),
        })
    }

    fn key(&self, o: &Orientation) -> Key {
        self.codec.encode(self.h, o.heads())
    }

    fn orientation(&mut self, key: &Key) -> Orientation {
        self.codec.decode(self.h, key, &mut self.heads);
        Orientation::from_heads_unchecked(self.heads.clone())
    }

    /// Neighbours in lexicographic order of (unordered pair, from).
    fn neighbors(&mut self, key: &Key, out: &mut Vec<(Flip, Key)>) {
        out.clear();
        let h = self.h;
        self.codec.decode(h, key, &mut self.heads);
        self.candidates.clear();
        for (e, edge) in h.edges().iter().enumerate() {
            let u = self.heads[e];
            if self.forbidden[u] {
                continue;
            }
            for &w in edge {
                if w != u && !self.forbidden[w] {
                    self.candidates.push((u.min(w), u.max(w), u));
                }
            }
        }
        self.candidates.sort_unstable();
        self.candidates.dedup();
        for i in 0..self.candidates.len() {
            let (a, b, from) = self.candidates[i];
            let to = if from == a { b } else { a };
            flip_recording(h, &mut self.heads, from, to, &mut self.changed);
            if h.heads_acyclic(&self.heads, &mut self.scratch) {
                out.push((Flip { from, to }, self.codec.encode(h, &self.heads)));
            }
            for &c in &self.changed {
                self.heads[c] = from;
            }
        }
    }
}

type Parents = HashMap<Key, Option<(Key, Flip)>>;

/// Shortest flip sequence by bidirectional breadth-first search.
///
/// Neighbours are generated in lexicographic (pair, direction) order and
/// the smaller frontier is expanded one full level at a time, so both the
/// length and the witness are deterministic.
pub fn exact_distance(
    hypergraph: &Hypergraph,
    h1: &Orientation,
    h2: &Orientation,
    opts: &SearchOptions,
) -> Result<DistanceReport> {
    check_acyclic_pair(hypergraph, h1, h2)?;
    let (lower_bound, _) = distance_bounds(hypergraph, h1, h2)?;
    let mut ex = Expander::new(hypergraph, opts)?;
    let start = ex.key(h1);
    let goal = ex.key(h2);
    let report = |flips: Vec<Flip>| DistanceReport {
        length: flips.len(),
        sequence: FlipSequence {
            start: h1.clone(),
            end: h2.clone(),
            flips,
        },
        lower_bound,
        method: Method::ExactBfs,
    };
    if start == goal {
        return Ok(report(Vec::new()));
    }

    let mut fwd: Parents = HashMap::from([(start.clone(), None)]);
    let mut bwd: Parents = HashMap::from([(goal.clone(), None)]);
    let mut fwd_frontier = vec![start];
    let mut bwd_frontier = vec![goal];
    let mut buf = Vec::new();
    let meet = 'search: loop {
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            return Err(Error::Unreachable);
        }
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let (this, other, frontier) = if forward {
            (&mut fwd, &bwd, &mut fwd_frontier)
        } else {
            (&mut bwd, &fwd, &mut bwd_frontier)
        };
        let mut next = Vec::new();
        for key in frontier.iter() {
            ex.neighbors(key, &mut buf);
            for (flip, nk) in buf.drain(..) {
                if this.contains_key(&nk) {
                    continue;
                }
                this.insert(nk.clone(), Some((key.clone(), flip)));
                if this.len() + other.len() > opts.max_states {
                    return Err(Error::capacity("flip-graph search states", opts.max_states));
                }
                if other.contains_key(&nk) {
                    break 'search nk;
                }
                next.push(nk);
            }
        }
        *frontier = next;
    };

    let mut flips = Vec::new();
    let mut cur = meet.clone();
    while let Some((parent, flip)) = fwd[&cur].clone() {
        flips.push(flip);
        cur = parent;
    }
    flips.reverse();
    let mut cur = meet;
    while let Some((parent, flip)) = bwd[&cur].clone() {
        flips.push(flip.reversed());
        cur = parent;
    }
    Ok(report(flips))
}

/// Breadth-first distances from `source` to every reachable acyclic
/// orientation, in discovery order.
pub fn exact_distances_from(
    hypergraph: &Hypergraph,
    source: &Orientation,
    opts: &SearchOptions,
) -> Result<Vec<(Orientation, usize)>> {
    check_acyclic_pair(hypergraph, source, source)?;
    let mut ex = Expander::new(hypergraph, opts)?;
    let start = ex.key(source);
    let mut seen: HashMap<Key, usize> = HashMap::from([(start.clone(), 0)]);
    let mut order = vec![start];
    let mut buf = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let key = order[i].clone();
        let d = seen[&key];
        ex.neighbors(&key, &mut buf);
        for (_, nk) in buf.drain(..) {
            if !seen.contains_key(&nk) {
                if seen.len() >= opts.max_states {
                    return Err(Error::capacity("flip-graph search states", opts.max_states));
                }
                seen.insert(nk.clone(), d + 1);
                order.push(nk);
            }
        }
        i += 1;
    }
    Ok(order
        .iter()
        .map(|k| {
            let d = seen[k];
            (ex.orientation(k), d)
        })
        .collect())
}
