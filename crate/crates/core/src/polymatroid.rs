//! Submodular set functions and the base polytopes they define.
//!
//! Subsets of the ground set `0..n` are `u64` bitmasks, so oracles support
//! `n ≤ 64`; exhaustive checks are restricted much further.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{is_acyclic_orientation, Hypergraph, Orientation};

pub type Mask = u64;

pub const MAX_EXHAUSTIVE_N: usize = 12;
pub const MAX_BUILDING_SET_N: usize = 16;
pub const MAX_PERMUTATION_N: usize = 10;

pub fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn elements_of(mask: Mask) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

type Evaluator = dyn Fn(Mask) -> i64 + Send + Sync;

/// An integer-valued set function on `0..n`.
#[derive(Clone)]
pub struct SubmodularOracle {
    n: usize,
    label: Option<String>,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for SubmodularOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubmodularOracle")
            .field("n", &self.n)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl SubmodularOracle {
    pub fn new(n: usize, eval: impl Fn(Mask) -> i64 + Send + Sync + 'static) -> Result<Self> {
        if n > 64 {
            return Err(Error::capacity("oracle ground set size", 64));
        }
        Ok(SubmodularOracle {
            n,
            label: None,
            eval: Arc::new(eval),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Tabulated oracle; `values[mask]` is the value on `mask`.
    pub fn from_table(n: usize, values: Vec<i64>) -> Result<Self> {
        if n > MAX_EXHAUSTIVE_N + 8 {
            return Err(Error::capacity("tabulated oracle ground set size", MAX_EXHAUSTIVE_N + 8));
        }
        if values.len() != 1 << n {
            return Err(Error::Infeasible(format!(
                "table has {} values, expected {}",
                values.len(),
                1usize << n
            )));
        }
        SubmodularOracle::new(n, move |m| values[m as usize])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn eval(&self, mask: Mask) -> i64 {
        (self.eval)(mask)
    }

    pub fn eval_set(&self, elements: &[usize]) -> i64 {
        self.eval(mask_of(elements))
    }

    pub fn ground_value(&self) -> i64 {
        self.eval(full_mask(self.n))
    }
}

/// `f_H(U)` = number of hyperedges meeting `U`.
pub fn f_hypergraphic(hypergraph: &Hypergraph) -> Result<SubmodularOracle> {
    if hypergraph.n() > 64 {
        return Err(Error::capacity("oracle ground set size", 64));
    }
    let masks: Vec<Mask> = hypergraph.edges().iter().map(|e| mask_of(e)).collect();
    Ok(SubmodularOracle::new(hypergraph.n(), move |u| {
        masks.iter().filter(|&&e| e & u != 0).count() as i64
    })?
    .with_label("hypergraphic"))
}

/// All intervals `{i, .., j}` with `i < j`, shortest first.
pub fn interval_hypergraph(n: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for len in 2..=n {
        for i in 0..=n - len {
            edges.push((i..i + len).collect());
        }
    }
    Hypergraph::new(n, edges).expect("intervals are valid hyperedges")
}

/// Loday's associahedron: number of pairs `i < j` with `U ∩ [i, j] ≠ ∅`,
/// counted directly.
pub fn associahedron_oracle(n: usize) -> Result<SubmodularOracle> {
    Ok(SubmodularOracle::new(n, move |u| {
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                let interval = full_mask(j + 1) & !full_mask(i);
                if u & interval != 0 {
                    count += 1;
                }
            }
        }
        count
    })?
    .with_label("associahedron"))
}

/// The graphical building set: every nonempty vertex subset inducing a
/// connected subgraph, singletons included. Ordered by size, then by the
/// sorted vertex list.
pub fn building_set_hypergraph(graph: &Graph) -> Result<Hypergraph> {
    let n = graph.n();
    if n > MAX_BUILDING_SET_N {
        return Err(Error::capacity("building-set vertex count", MAX_BUILDING_SET_N));
    }
    let adj: Vec<Mask> = graph
        .adjacency()
        .iter()
        .map(|nbrs| mask_of(nbrs))
        .collect();
    let connected = |set: Mask| {
        let mut reached = set & set.wrapping_neg();
        loop {
            let grow = elements_of(reached).iter().fold(reached, |r, &v| r | (adj[v] & set));
            if grow == reached {
                return reached == set;
            }
            reached = grow;
        }
    };
    let mut sets: Vec<Vec<usize>> = (1..=full_mask(n))
        .filter(|&s| connected(s))
        .map(elements_of)
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Hypergraph::new(n, sets)
}

/// Graph associahedron oracle: building-set members meeting `U`.
pub fn graph_associahedron_oracle(graph: &Graph) -> Result<SubmodularOracle> {
    Ok(f_hypergraphic(&building_set_hypergraph(graph)?)?.with_label("graph-associahedron"))
}

/// A pair `(T, U)` with `f(T) + f(U) < f(T ∩ U) + f(T ∪ U)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub t: Mask,
    pub u: Mask,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// All ordered pairs; requires `n ≤ 12`.
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularityReport {
    pub violation: Option<Violation>,
    pub pairs_checked: u64,
    pub exhaustive: bool,
    /// Fraction of all ordered pairs that were examined.
    pub coverage: f64,
}

impl SubmodularityReport {
    pub fn is_submodular(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive for `n ≤ 12`, otherwise 200 000 sampled pairs with seed 0.
pub fn check_submodular(oracle: &SubmodularOracle) -> Result<SubmodularityReport> {
    let mode = if oracle.n() <= MAX_EXHAUSTIVE_N {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled {
            samples: 200_000,
            seed: 0,
        }
    };
    check_submodular_with(oracle, mode)
}

pub fn check_submodular_with(oracle: &SubmodularOracle, mode: CheckMode) -> Result<SubmodularityReport> {
    let n = oracle.n();
    let total_pairs = 4f64.powi(n as i32);
    let test = |t: Mask, u: Mask, f: &dyn Fn(Mask) -> i64| {
        let lhs = f(t) + f(u);
        let rhs = f(t & u) + f(t | u);
        (lhs < rhs).then_some(Violation { t, u, lhs, rhs })
    };
    match mode {
        CheckMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_N {
                return Err(Error::capacity("exhaustive submodularity check size", MAX_EXHAUSTIVE_N));
            }
            let table: Vec<i64> = (0..1u64 << n).map(|m| oracle.eval(m)).collect();
            let f = |m: Mask| table[m as usize];
            let mut checked = 0;
            for t in 0..1u64 << n {
                for u in 0..1u64 << n {
                    checked += 1;
                    if let Some(v) = test(t, u, &f) {
                        return Ok(SubmodularityReport {
                            violation: Some(v),
                            pairs_checked: checked,
                            exhaustive: true,
                            coverage: checked as f64 / total_pairs,
                        });
                    }
                }
            }
            Ok(SubmodularityReport {
                violation: None,
                pairs_checked: checked,
                exhaustive: true,
                coverage: 1.0,
            })
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let full = full_mask(n);
            let f = |m: Mask| oracle.eval(m);
            for k in 0..samples {
                let t = rng.gen::<u64>() & full;
                let u = rng.gen::<u64>() & full;
                if let Some(v) = test(t, u, &f) {
                    return Ok(SubmodularityReport {
                        violation: Some(v),
                        pairs_checked: k + 1,
                        exhaustive: false,
                        coverage: ((k + 1) as f64 / total_pairs).min(1.0),
                    });
                }
            }
            Ok(SubmodularityReport {
                violation: None,
                pairs_checked: samples,
                exhaustive: false,
                coverage: (samples as f64 / total_pairs).min(1.0),
            })
        }
    }
}

/// An integer point of a base polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolytopeVertex(pub Vec<i64>);

impl PolytopeVertex {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Checks `Σ_U x ≤ f(U)` for every `U` and equality on the ground set.
    pub fn lies_in_base_polytope(&self, oracle: &SubmodularOracle) -> Result<bool> {
        let n = oracle.n();
        if self.0.len() != n {
            return Ok(false);
        }
        if n > MAX_EXHAUSTIVE_N + 8 {
            return Err(Error::capacity("base polytope membership size", MAX_EXHAUSTIVE_N + 8));
        }
        let mut sums = vec![0i64; 1 << n];
        for m in 1..1usize << n {
            let low = m.trailing_zeros() as usize;
            sums[m] = sums[m & (m - 1)] + self.0[low];
            if sums[m] > oracle.eval(m as Mask) {
                return Ok(false);
            }
        }
        Ok(sums[(1 << n) - 1] == oracle.ground_value())
    }
}

/// Greedy vertex for the ordering `order`: each element receives the
/// marginal value of adding it to the prefix before it.
pub fn greedy_vertex(oracle: &SubmodularOracle, order: &[usize]) -> Result<PolytopeVertex> {
    let n = oracle.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::Infeasible(format!("{order:?} is not a permutation of 0..{n}")));
    }
    let mut x = vec![0; n];
    let mut prefix: Mask = 0;
    let mut prev = oracle.eval(0);
    for &i in order {
        prefix |= 1 << i;
        let cur = oracle.eval(prefix);
        x[i] = cur - prev;
        prev = cur;
    }
    Ok(PolytopeVertex(x))
}

/// Advances `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Greedy vertices over all `n!` orderings.
pub fn greedy_vertex_set(oracle: &SubmodularOracle) -> Result<BTreeSet<PolytopeVertex>> {
    let n = oracle.n();
    if n > MAX_PERMUTATION_N {
        return Err(Error::capacity("permutation enumeration size", MAX_PERMUTATION_N));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut set = BTreeSet::new();
    loop {
        set.insert(greedy_vertex(oracle, &perm)?);
        if !next_permutation(&mut perm) {
            return Ok(set);
        }
    }
}

/// Head-count vector of an acyclic orientation.
pub fn vertex_of_orientation(hypergraph: &Hypergraph, orientation: &Orientation) -> Result<PolytopeVertex> {
    if !is_acyclic_orientation(hypergraph, orientation)? {
        return Err(Error::NotAcyclic);
    }
    Ok(PolytopeVertex(
        orientation
            .head_counts(hypergraph.n())
            .into_iter()
            .map(|c| c as i64)
            .collect(),
    ))
}

/// Inverts [`vertex_of_orientation`] by peeling sinks: a vertex whose
/// residual count equals the number of unassigned hyperedges containing it
/// must head all of them.
pub fn orientation_of_vertex(hypergraph: &Hypergraph, x: &PolytopeVertex) -> Result<Orientation> {
    let n = hypergraph.n();
    if x.0.len() != n {
        return Err(Error::Infeasible(format!("vector has length {}, expected {n}", x.0.len())));
    }
    if x.0.iter().any(|&c| c < 0) {
        return Err(Error::Infeasible("negative coordinate".into()));
    }
    let mut residual = x.0.clone();
    let mut open_degree: Vec<i64> = (0..n).map(|v| hypergraph.incident_edges(v).len() as i64).collect();
    let mut heads: Vec<Option<usize>> = vec![None; hypergraph.num_edges()];
    let mut removed = vec![false; n];
    for _ in 0..n {
        let Some(v) = (0..n).find(|&v| !removed[v] && residual[v] == open_degree[v]) else {
            return Err(Error::Infeasible("no vertex can be peeled".into()));
        };
        removed[v] = true;
        for &e in hypergraph.incident_edges(v) {
            if heads[e].is_none() {
                heads[e] = Some(v);
                for &w in hypergraph.edge(e) {
                    open_degree[w] -= 1;
                }
                residual[v] -= 1;
            }
        }
    }
    let heads: Vec<usize> = heads.into_iter().map(|h| h.expect("every edge peeled")).collect();
    Orientation::new(hypergraph, heads)
}

/// Comparison of greedy vertices against head-count vectors of acyclic
/// orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub acyclic_orientations: usize,
    pub greedy_vertices: usize,
    pub distinct_head_counts: usize,
    pub only_greedy: Vec<PolytopeVertex>,
    pub only_orientations: Vec<PolytopeVertex>,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.only_greedy.is_empty()
            && self.only_orientations.is_empty()
            && self.distinct_head_counts == self.acyclic_orientations
    }
}

pub fn check_correspondence(hypergraph: &Hypergraph) -> Result<CorrespondenceReport> {
    let oracle = f_hypergraphic(hypergraph)?;
    let greedy = greedy_vertex_set(&oracle)?;
    let orientations = crate::hypergraph::enumerate_acyclic_orientations(hypergraph, 1 << 22)?;
    let mut by_vertex: BTreeMap<PolytopeVertex, usize> = BTreeMap::new();
    for o in &orientations {
        *by_vertex.entry(vertex_of_orientation(hypergraph, o)?).or_default() += 1;
    }
    let heads: BTreeSet<PolytopeVertex> = by_vertex.keys().cloned().collect();
    Ok(CorrespondenceReport {
        acyclic_orientations: orientations.len(),
        greedy_vertices: greedy.len(),
        distinct_head_counts: heads.len(),
        only_greedy: greedy.difference(&heads).cloned().collect(),
        only_orientations: heads.difference(&greedy).cloned().collect(),
    })
}
