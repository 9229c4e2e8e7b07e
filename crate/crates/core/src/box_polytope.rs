//! Shortest paths on the polytope `{x : l ≤ x ≤ u, Σx = N}` where
//! `l = min(a, b)` and `u = max(a, b)` componentwise.
//!
//! Coordinates with `a_i > b_i` (the set `S`) must drain and coordinates
//! with `a_i < b_i` must fill, which makes the problem a pure constant
//! fixed-charge transportation (PCFCT) instance. Its optimum, and the
//! skeleton distance from `a` to `b`, is `|S| + |T| − m` for the largest
//! same-sum partition of size `m`.
//!
//! Coordinates with `a_i = b_i` are frozen (`l_i = u_i`). They are listed
//! with `T` but take no part in flows, partitions or path counts.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::polymatroid::{Mask, SubmodularOracle};

/// Default limit on `|S| + |T|` for exact partitioning.
pub const DEFAULT_PARTITION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxInstance {
    a: Vec<i64>,
    b: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    total: i64,
}

impl BoxInstance {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidBox(format!("lengths differ: {} vs {}", a.len(), b.len())));
        }
        if a.iter().chain(&b).any(|&v| v < 0) {
            return Err(Error::InvalidBox("entries must be nonnegative".into()));
        }
        let total: i64 = a.iter().sum();
        if total != b.iter().sum::<i64>() {
            return Err(Error::InvalidBox("a and b have different sums".into()));
        }
        let lower = a.iter().zip(&b).map(|(&x, &y)| x.min(y)).collect();
        let upper = a.iter().zip(&b).map(|(&x, &y)| x.max(y)).collect();
        Ok(BoxInstance {
            a,
            b,
            lower,
            upper,
            total,
        })
    }

    /// The box instance equivalent to a PCFCT instance: supplies first, then
    /// demands, with `a = (s, 0)` and `b = (0, t)`.
    pub fn from_pcfct(p: &PcfctInstance) -> Self {
        let (ns, nt) = (p.supplies.len(), p.demands.len());
        let mut a = p.supplies.clone();
        a.resize(ns + nt, 0);
        let mut b = vec![0; ns];
        b.extend(&p.demands);
        BoxInstance::new(a, b).expect("PCFCT totals agree")
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    /// `S = {i : a_i = u_i}` with frozen coordinates excluded.
    pub fn s_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i] > self.b[i]).collect()
    }

    /// `T = {i : a_i = l_i}`, frozen coordinates included.
    pub fn t_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i] <= self.b[i]).collect()
    }

    /// The coordinates of `T` that actually fill.
    pub fn active_t_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i] < self.b[i]).collect()
    }

    pub fn frozen_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i] == self.b[i]).collect()
    }

    /// Supplies `u_i − l_i` over `S` and demands over active `T`, in index order.
    pub fn pcfct(&self) -> PcfctInstance {
        let width = |i: usize| self.upper[i] - self.lower[i];
        PcfctInstance {
            supplies: self.s_indices().into_iter().map(width).collect(),
            demands: self.active_t_indices().into_iter().map(width).collect(),
        }
    }

    pub fn check_vertex(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::NotAVertex(format!("length {} instead of {}", x.len(), self.n())));
        }
        if x.iter().sum::<i64>() != self.total {
            return Err(Error::NotAVertex("coordinate sum differs from N".into()));
        }
        let mut interior = 0;
        for (i, &v) in x.iter().enumerate() {
            if v < self.lower[i] || v > self.upper[i] {
                return Err(Error::NotAVertex(format!("coordinate {i} outside its bounds")));
            }
            if v > self.lower[i] && v < self.upper[i] {
                interior += 1;
            }
        }
        if interior > 1 {
            return Err(Error::NotAVertex(format!("{interior} coordinates strictly inside bounds")));
        }
        Ok(())
    }

    pub fn is_vertex(&self, x: &[i64]) -> bool {
        self.check_vertex(x).is_ok()
    }
}

/// A move of `delta` units from coordinate `from` to coordinate `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxFlip {
    pub from: usize,
    pub to: usize,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPath {
    pub vertices: Vec<Vec<i64>>,
    pub flips: Vec<BoxFlip>,
}

impl BoxPath {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    /// Checks endpoints and that every step is a skeleton edge.
    pub fn validate(&self, inst: &BoxInstance) -> Result<()> {
        if self.vertices.len() != self.flips.len() + 1 {
            return Err(Error::InvalidPath("vertex and flip counts disagree".into()));
        }
        if self.vertices[0] != inst.a || *self.vertices.last().unwrap() != inst.b {
            return Err(Error::InvalidPath("path does not run from a to b".into()));
        }
        for (k, (w, flip)) in self.vertices.windows(2).zip(&self.flips).enumerate() {
            let expected = step(inst, &w[0], flip.from, flip.to)
                .map_err(|e| Error::InvalidPath(format!("step {k}: {e}")))?;
            match expected {
                Some((delta, y)) if delta == flip.delta && y == w[1] => {}
                _ => return Err(Error::InvalidPath(format!("step {k} is not an ({}, {})-flip", flip.from, flip.to))),
            }
        }
        Ok(())
    }
}

/// The `(i, j)`-flip at vertex `x`, if it moves a positive amount and all
/// other coordinates sit at a bound.
fn step(inst: &BoxInstance, x: &[i64], i: usize, j: usize) -> Result<Option<(i64, Vec<i64>)>> {
    inst.check_vertex(x)?;
    if i == j || i >= inst.n() || j >= inst.n() {
        return Ok(None);
    }
    let at_bound = |k: usize| x[k] == inst.lower[k] || x[k] == inst.upper[k];
    if (0..inst.n()).any(|k| k != i && k != j && !at_bound(k)) {
        return Ok(None);
    }
    let delta = (inst.upper[j] - x[j]).min(x[i] - inst.lower[i]);
    if delta <= 0 {
        return Ok(None);
    }
    let mut y = x.to_vec();
    y[i] -= delta;
    y[j] += delta;
    Ok(Some((delta, y)))
}

/// Skeleton neighbours of the vertex `x`, ordered by `(i, j)`.
pub fn box_flip_neighbors(inst: &BoxInstance, x: &[i64]) -> Result<Vec<(BoxFlip, Vec<i64>)>> {
    inst.check_vertex(x)?;
    let mut out = Vec::new();
    for i in 0..inst.n() {
        for j in 0..inst.n() {
            if let Some((delta, y)) = step(inst, x, i, j)? {
                out.push((BoxFlip { from: i, to: j, delta }, y));
            }
        }
    }
    Ok(out)
}

/// Shortest skeleton path from `a` to `b` by breadth-first search.
pub fn bfs_box_path(inst: &BoxInstance, max_states: usize) -> Result<BoxPath> {
    let start = inst.a.clone();
    let mut parent: HashMap<Vec<i64>, Option<(Vec<i64>, BoxFlip)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == inst.b {
            let mut vertices = vec![x.clone()];
            let mut flips = Vec::new();
            let mut cur = x;
            while let Some((p, f)) = parent[&cur].clone() {
                flips.push(f);
                vertices.push(p.clone());
                cur = p;
            }
            vertices.reverse();
            flips.reverse();
            return Ok(BoxPath { vertices, flips });
        }
        for (flip, y) in box_flip_neighbors(inst, &x)? {
            if !parent.contains_key(&y) {
                if parent.len() >= max_states {
                    return Err(Error::capacity("box skeleton search states", max_states));
                }
                parent.insert(y.clone(), Some((x.clone(), flip)));
                queue.push_back(y);
            }
        }
    }
    Err(Error::Unreachable)
}

pub fn bfs_box_distance(inst: &BoxInstance, max_states: usize) -> Result<usize> {
    bfs_box_path(inst, max_states).map(|p| p.len())
}

/// `f(U) = min{N − Σ_{i∉U} l_i, Σ_{i∈U} u_i}`, whose base polytope is the box
/// polytope.
pub fn box_submodular(inst: &BoxInstance) -> Result<SubmodularOracle> {
    let (lower, upper, total) = (inst.lower.clone(), inst.upper.clone(), inst.total);
    let n = inst.n();
    Ok(SubmodularOracle::new(n, move |u: Mask| {
        let mut outside_lower = 0;
        let mut inside_upper = 0;
        for i in 0..n {
            if u >> i & 1 == 1 {
                inside_upper += upper[i];
            } else {
                outside_lower += lower[i];
            }
        }
        (total - outside_lower).min(inside_upper)
    })?
    .with_label("box"))
}

/// Positive supplies and demands with equal totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcfctInstance {
    pub supplies: Vec<i64>,
    pub demands: Vec<i64>,
}

impl PcfctInstance {
    pub fn new(supplies: Vec<i64>, demands: Vec<i64>) -> Result<Self> {
        if supplies.iter().chain(&demands).any(|&v| v <= 0) {
            return Err(Error::InvalidPcfct("supplies and demands must be positive".into()));
        }
        if supplies.iter().sum::<i64>() != demands.iter().sum::<i64>() {
            return Err(Error::InvalidPcfct("supply and demand totals differ".into()));
        }
        Ok(PcfctInstance { supplies, demands })
    }

    pub fn size(&self) -> usize {
        self.supplies.len() + self.demands.len()
    }
}

/// Blocks `(supply indices, demand indices)` with equal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SameSumPartition {
    pub parts: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SameSumPartition {
    pub fn size(&self) -> usize {
        self.parts.len()
    }

    pub fn validate(&self, p: &PcfctInstance) -> Result<()> {
        let mut seen_s = vec![false; p.supplies.len()];
        let mut seen_t = vec![false; p.demands.len()];
        for (k, (ss, ts)) in self.parts.iter().enumerate() {
            if ss.is_empty() || ts.is_empty() {
                return Err(Error::InvalidPartition(format!("part {k} has an empty side")));
            }
            for (list, seen) in [(ss, &mut seen_s), (ts, &mut seen_t)] {
                for &idx in list {
                    if idx >= seen.len() || std::mem::replace(&mut seen[idx], true) {
                        return Err(Error::InvalidPartition(format!("part {k}: index {idx} invalid or repeated")));
                    }
                }
            }
            let s: i64 = ss.iter().map(|&i| p.supplies[i]).sum();
            let t: i64 = ts.iter().map(|&j| p.demands[j]).sum();
            if s != t {
                return Err(Error::InvalidPartition(format!("part {k} sums differ: {s} vs {t}")));
            }
        }
        if seen_s.iter().chain(&seen_t).any(|&b| !b) {
            return Err(Error::InvalidPartition("some index is not covered".into()));
        }
        Ok(())
    }
}

pub fn max_same_sum_partition(p: &PcfctInstance) -> Result<SameSumPartition> {
    max_same_sum_partition_with_limit(p, DEFAULT_PARTITION_LIMIT)
}

/// Maximum same-sum partition by dynamic programming over subsets of
/// `S ∪ T`.
///
/// Supplies count positive and demands negative. Ordering the elements and
/// cutting at every zero-sum prefix gives a same-sum partition, and every
/// partition arises this way, so the answer is the maximum number of
/// zero-sum nonempty prefixes: `best[M] = [Σ M = 0] + max_{i∈M} best[M∖i]`.
pub fn max_same_sum_partition_with_limit(p: &PcfctInstance, limit: usize) -> Result<SameSumPartition> {
    let (ns, k) = (p.supplies.len(), p.size());
    if k > limit {
        return Err(Error::capacity("exact same-sum partition size |S|+|T|", limit));
    }
    let weight: Vec<i64> = p.supplies.iter().copied().chain(p.demands.iter().map(|&t| -t)).collect();
    let sum_of = |mask: usize| -> i64 { (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| weight[i]).sum() };
    let mut best = vec![0u8; 1 << k];
    for mask in 1usize..1 << k {
        let mut sum = 0;
        let mut top = 0;
        for i in 0..k {
            if mask >> i & 1 == 1 {
                sum += weight[i];
                top = top.max(best[mask ^ 1 << i]);
            }
        }
        best[mask] = top + u8::from(sum == 0);
    }

    let mut parts = Vec::new();
    let mut block: Vec<usize> = Vec::new();
    let mut mask = (1usize << k) - 1;
    while mask != 0 {
        let zero = u8::from(sum_of(mask) == 0);
        let i = (0..k)
            .find(|&i| mask >> i & 1 == 1 && best[mask ^ 1 << i] + zero == best[mask])
            .expect("dp table is consistent");
        block.push(i);
        mask ^= 1 << i;
        if sum_of(mask) == 0 {
            let mut ss: Vec<usize> = block.iter().copied().filter(|&e| e < ns).collect();
            let mut ts: Vec<usize> = block.iter().filter(|&&e| e >= ns).map(|&e| e - ns).collect();
            ss.sort_unstable();
            ts.sort_unstable();
            parts.push((ss, ts));
            block.clear();
        }
    }
    parts.sort();
    let partition = SameSumPartition { parts };
    debug_assert!(partition.validate(p).is_ok());
    debug_assert_eq!(partition.size(), best[(1 << k) - 1] as usize);
    Ok(partition)
}

/// A feasible flow with its number of nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcfctSolution {
    /// `flows[i][j]`: flow from supply `i` to demand `j`.
    pub flows: Vec<Vec<i64>>,
    pub nonzeros: usize,
}

/// Northwest-corner filling inside each block of the partition.
pub fn pcfct_solution_from_partition(p: &PcfctInstance, partition: &SameSumPartition) -> Result<PcfctSolution> {
    partition.validate(p)?;
    let mut flows = vec![vec![0; p.demands.len()]; p.supplies.len()];
    for (ss, ts) in &partition.parts {
        let (mut a, mut b) = (0, 0);
        let mut left_s = p.supplies[ss[0]];
        let mut left_t = p.demands[ts[0]];
        while a < ss.len() && b < ts.len() {
            let f = left_s.min(left_t);
            flows[ss[a]][ts[b]] += f;
            left_s -= f;
            left_t -= f;
            if left_s == 0 {
                a += 1;
                if a < ss.len() {
                    left_s = p.supplies[ss[a]];
                }
            }
            if left_t == 0 {
                b += 1;
                if b < ts.len() {
                    left_t = p.demands[ts[b]];
                }
            }
        }
    }
    let nonzeros = flows.iter().flatten().filter(|&&f| f != 0).count();
    Ok(PcfctSolution { flows, nonzeros })
}

/// Minimum PCFCT value `|S| + |T| − m`.
pub fn pcfct_optimum(p: &PcfctInstance) -> Result<usize> {
    Ok(p.size() - max_same_sum_partition(p)?.size())
}

pub fn shortest_box_path(inst: &BoxInstance) -> Result<BoxPath> {
    shortest_box_path_with_limit(inst, DEFAULT_PARTITION_LIMIT)
}

pub fn shortest_box_path_with_limit(inst: &BoxInstance, limit: usize) -> Result<BoxPath> {
    let partition = max_same_sum_partition_with_limit(&inst.pcfct(), limit)?;
    path_from_partition(inst, &partition)
}

/// Tracking state of the path construction, in coordinates shifted by `l`.
struct Walk<'a> {
    inst: &'a BoxInstance,
    /// shifted point `x − l`
    z: Vec<i64>,
    /// `u − l`
    cap: Vec<i64>,
    is_s: Vec<bool>,
    in_x: Vec<bool>,
    in_y: Vec<bool>,
    block: Vec<Option<usize>>,
    blocks: usize,
}

impl Walk<'_> {
    fn fail(&self, index: usize, step: usize, detail: impl Into<String>) -> Error {
        Error::InvariantViolated {
            index,
            step,
            detail: detail.into(),
        }
    }

    /// Invariants (1)–(5) of the construction; `active` is `(v, ℓ)` while a
    /// block is being processed.
    fn check(&self, step: usize, active: Option<(usize, usize)>) -> Result<()> {
        let n = self.z.len();
        let x: Vec<i64> = (0..n).map(|k| self.z[k] + self.inst.lower[k]).collect();
        self.inst
            .check_vertex(&x)
            .map_err(|e| self.fail(1, step, e.to_string()))?;
        if let Some((v, ell)) = active {
            if self.block[v] != Some(ell) {
                return Err(self.fail(2, step, format!("active element {v} outside block {ell}")));
            }
            if (0..n).any(|k| (self.in_x[k] || self.in_y[k]) && self.block[k].is_some_and(|b| b < ell)) {
                return Err(self.fail(2, step, "an earlier block is still open"));
            }
            if !(self.in_x[v] || self.in_y[v]) {
                return Err(self.fail(2, step, format!("active element {v} already closed")));
            }
        }
        for k in 0..n {
            if self.block[k].is_none() {
                continue;
            }
            let expected = if self.is_s[k] { self.z[k] > 0 } else { self.z[k] < self.cap[k] };
            if (self.in_x[k] || self.in_y[k]) != expected {
                return Err(self.fail(3, step, format!("membership of {k} disagrees with x")));
            }
            let is_active = active.is_some_and(|(v, _)| v == k);
            if !is_active {
                if self.in_x[k] && self.z[k] != self.cap[k] {
                    return Err(self.fail(4, step, format!("open supply {k} is partially drained")));
                }
                if self.in_y[k] && self.z[k] != 0 {
                    return Err(self.fail(4, step, format!("open demand {k} is partially filled")));
                }
            }
        }
        let mut balance = vec![0i64; self.blocks];
        for k in 0..n {
            if let Some(b) = self.block[k] {
                if self.in_x[k] {
                    balance[b] += self.z[k];
                }
                if self.in_y[k] {
                    balance[b] -= self.cap[k] - self.z[k];
                }
            }
        }
        if let Some(b) = balance.iter().position(|&s| s != 0) {
            return Err(self.fail(5, step, format!("block {b} is unbalanced")));
        }
        Ok(())
    }
}

/// Builds a path of length `|S| + |T| − m` from a same-sum partition of
/// size `m`.
///
/// Works block by block with an active element `v`. Each step moves
/// `δ = min{x_i, t_j − x_j}` (shifted coordinates) between the open supply
/// `i` and open demand `j` of the current block, one of them being `v`,
/// then closes whichever side is exhausted. The five tracking invariants
/// are checked after every step; a violation is returned as an error.
pub fn path_from_partition(inst: &BoxInstance, partition: &SameSumPartition) -> Result<BoxPath> {
    let pcfct = inst.pcfct();
    partition.validate(&pcfct)?;
    let s_idx = inst.s_indices();
    let t_idx = inst.active_t_indices();
    let n = inst.n();

    let mut block = vec![None; n];
    let mut s_blocks = vec![Vec::new(); partition.size()];
    let mut t_blocks = vec![Vec::new(); partition.size()];
    for (b, (ss, ts)) in partition.parts.iter().enumerate() {
        for &i in ss {
            block[s_idx[i]] = Some(b);
            s_blocks[b].push(s_idx[i]);
        }
        for &j in ts {
            block[t_idx[j]] = Some(b);
            t_blocks[b].push(t_idx[j]);
        }
        s_blocks[b].sort_unstable();
        t_blocks[b].sort_unstable();
    }
    let mut is_s = vec![false; n];
    for &i in &s_idx {
        is_s[i] = true;
    }
    let mut walk = Walk {
        inst,
        z: (0..n).map(|k| inst.a[k] - inst.lower[k]).collect(),
        cap: (0..n).map(|k| inst.upper[k] - inst.lower[k]).collect(),
        in_x: is_s.clone(),
        in_y: (0..n).map(|k| inst.a[k] < inst.b[k]).collect(),
        is_s,
        block,
        blocks: partition.size(),
    };

    let mut vertices = vec![inst.a.clone()];
    let mut flips = Vec::new();
    if partition.size() == 0 {
        walk.check(0, None)?;
        return Ok(BoxPath { vertices, flips });
    }
    let mut v = s_blocks[0][0];
    walk.check(0, Some((v, 0)))?;
    for ell in 0..partition.size() {
        loop {
            let step_no = flips.len() + 1;
            let (i, j) = if walk.is_s[v] {
                let j = *t_blocks[ell]
                    .iter()
                    .find(|&&j| walk.in_y[j])
                    .ok_or_else(|| walk.fail(5, step_no, "no open demand in the block"))?;
                (v, j)
            } else {
                let i = *s_blocks[ell]
                    .iter()
                    .find(|&&i| walk.in_x[i])
                    .ok_or_else(|| walk.fail(5, step_no, "no open supply in the block"))?;
                (i, v)
            };
            let delta = walk.z[i].min(walk.cap[j] - walk.z[j]);
            walk.z[i] -= delta;
            walk.z[j] += delta;
            flips.push(BoxFlip { from: i, to: j, delta });
            vertices.push((0..n).map(|k| walk.z[k] + inst.lower[k]).collect());
            let drained = walk.z[i] == 0;
            let filled = walk.z[j] == walk.cap[j];
            match (drained, filled) {
                (true, false) => {
                    walk.in_x[i] = false;
                    v = j;
                    walk.check(step_no, Some((v, ell)))?;
                }
                (false, true) => {
                    walk.in_y[j] = false;
                    v = i;
                    walk.check(step_no, Some((v, ell)))?;
                }
                (true, true) => {
                    walk.in_x[i] = false;
                    walk.in_y[j] = false;
                    if ell + 1 < partition.size() {
                        v = s_blocks[ell + 1][0];
                        walk.check(step_no, Some((v, ell + 1)))?;
                    } else {
                        walk.check(step_no, None)?;
                    }
                    break;
                }
                (false, false) => return Err(walk.fail(1, step_no, "flip moved zero units")),
            }
        }
    }
    if *vertices.last().unwrap() != inst.b {
        return Err(Error::InvalidPath("construction did not reach b".into()));
    }
    Ok(BoxPath { vertices, flips })
}

/// Same-sum partition read off a path: connected components of the graph
/// on `S ∪ T` with an edge per flip. Checks that the path has at least
/// `|S| + |T| − (number of components)` steps.
pub fn partition_from_path(inst: &BoxInstance, path: &BoxPath) -> Result<SameSumPartition> {
    path.validate(inst)?;
    let n = inst.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for f in &path.flips {
        let (a, b) = (find(&mut parent, f.from), find(&mut parent, f.to));
        parent[a.max(b)] = a.min(b);
    }
    let s_idx = inst.s_indices();
    let t_idx = inst.active_t_indices();
    let mut groups: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut group_of: HashMap<usize, usize> = HashMap::new();
    for (side, list) in [(0, &s_idx), (1, &t_idx)] {
        for (pos, &coord) in list.iter().enumerate() {
            let root = find(&mut parent, coord);
            let g = *group_of.entry(root).or_insert_with(|| {
                groups.push((root, Vec::new(), Vec::new()));
                groups.len() - 1
            });
            if side == 0 {
                groups[g].1.push(pos);
            } else {
                groups[g].2.push(pos);
            }
        }
    }
    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = groups.into_iter().map(|(_, s, t)| (s, t)).collect();
    parts.sort();
    let partition = SameSumPartition { parts };
    partition.validate(&inst.pcfct())?;
    let bound = s_idx.len() + t_idx.len() - partition.size();
    if path.len() < bound {
        return Err(Error::InvalidPath(format!(
            "path of length {} is shorter than the component bound {bound}",
            path.len()
        )));
    }
    Ok(partition)
}
