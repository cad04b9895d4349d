//! Strong connectivity of oriented hypercubes.
//!
//! The primary decision procedure deletes every node set `Z` with
//! `|Z| <= k - 1` in lowest-index order and tests whether what remains is
//! strongly connected. A vertex-split max-flow (Menger) computation gives an
//! independent answer for cross-checking.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{Dim, NodeSet, Orientation};
use crate::error::{CubeError, Result};

/// Largest dimension accepted by [`undirected_node_connectivity`].
pub const MAX_UNDIRECTED_DIM: u32 = 6;

/// Outcome of a strong k-node-connectivity check.
///
/// On a negative verdict `witness_deleted` is a set `Z` with `|Z| <= k - 1`
/// and `witness_side` is a nonempty `S` in `V - Z` whose cut to the rest of
/// `V - Z` is crossed in one direction only. Both lists are empty on a
/// positive verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub verdict: bool,
    pub k: u32,
    pub witness_deleted: Vec<u32>,
    pub witness_side: Vec<u32>,
}

impl ConnectivityReport {
    fn pass(k: u32) -> Self {
        ConnectivityReport {
            verdict: true,
            k,
            witness_deleted: Vec::new(),
            witness_side: Vec::new(),
        }
    }

    pub fn witness(&self, dim: Dim) -> Result<Option<(NodeSet, NodeSet)>> {
        if self.verdict {
            return Ok(None);
        }
        Ok(Some((
            NodeSet::from_nodes(dim, self.witness_deleted.iter().copied())?,
            NodeSet::from_nodes(dim, self.witness_side.iter().copied())?,
        )))
    }
}

/// Out-arc mask per node; in-arcs are the complement within `d` bits.
struct Digraph {
    dim: Dim,
    out: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Crossing {
    /// Every cut arc enters `S`.
    Entering,
    /// Every cut arc leaves `S`.
    Leaving,
}

struct Scratch {
    seen: Vec<u64>,
    stack: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            seen: vec![0; n.div_ceil(64)],
            stack: Vec::new(),
        }
    }
}

#[inline]
fn bit(words: &[u64], v: u32) -> bool {
    words[v as usize / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn set_bit(words: &mut [u64], v: u32) {
    words[v as usize / 64] |= 1 << (v % 64);
}

impl Digraph {
    fn new(o: &Orientation) -> Self {
        Digraph {
            dim: o.dim(),
            out: o.out_masks(),
        }
    }

    #[inline]
    fn step_mask(&self, v: u32, forward: bool) -> u32 {
        let m = self.out[v as usize];
        if forward {
            m
        } else {
            !m & self.dim.full_mask()
        }
    }

    /// Marks in `scratch.seen` everything reachable from `root` avoiding
    /// `deleted`; returns how many nodes were reached.
    fn reach(&self, root: u32, deleted: &[u64], forward: bool, scratch: &mut Scratch) -> usize {
        scratch.seen.iter_mut().for_each(|w| *w = 0);
        scratch.stack.clear();
        set_bit(&mut scratch.seen, root);
        scratch.stack.push(root);
        let mut count = 1;
        while let Some(v) = scratch.stack.pop() {
            let mut m = self.step_mask(v, forward);
            while m != 0 {
                let w = v ^ (1 << m.trailing_zeros());
                m &= m - 1;
                if !bit(deleted, w) && !bit(&scratch.seen, w) {
                    set_bit(&mut scratch.seen, w);
                    scratch.stack.push(w);
                    count += 1;
                }
            }
        }
        count
    }

    /// A side of a one-directional cut of the digraph minus `deleted`, or
    /// `None` if the remainder is strongly connected. `deleted` must leave at
    /// least one node.
    fn one_way_cut(
        &self,
        deleted: &[u64],
        deleted_count: usize,
        scratch: &mut Scratch,
    ) -> Option<(Vec<u64>, Crossing)> {
        let n = self.dim.node_count();
        let alive = n - deleted_count;
        let root = (0..n as u32).find(|&v| !bit(deleted, v))?;
        if self.reach(root, deleted, true, scratch) < alive {
            return Some((scratch.seen.clone(), Crossing::Entering));
        }
        if self.reach(root, deleted, false, scratch) < alive {
            return Some((scratch.seen.clone(), Crossing::Leaving));
        }
        None
    }
}

fn words_of(set: &NodeSet) -> Vec<u64> {
    let mut words = vec![0u64; set.dim().node_count().div_ceil(64)];
    for v in set.iter() {
        set_bit(&mut words, v);
    }
    words
}

fn set_from_words(dim: Dim, words: &[u64]) -> NodeSet {
    let mut s = NodeSet::empty(dim);
    for v in 0..dim.node_count() as u32 {
        if bit(words, v) {
            s.insert(v);
        }
    }
    s
}

/// Whether the digraph induced on `V - deleted` is strongly connected.
pub fn strongly_connected(o: &Orientation, deleted: &NodeSet) -> Result<bool> {
    if deleted.dim() != o.dim() {
        return Err(CubeError::invalid("deleted set and orientation dimensions differ"));
    }
    if deleted.is_full() {
        return Err(CubeError::invalid("cannot delete every node"));
    }
    let g = Digraph::new(o);
    let mut scratch = Scratch::new(o.dim().node_count());
    Ok(g
        .one_way_cut(&words_of(deleted), deleted.len(), &mut scratch)
        .is_none())
}

/// Lexicographic `r`-combinations of `0..n`.
struct Combinations {
    n: u32,
    idx: Vec<u32>,
    done: bool,
}

impl Combinations {
    fn new(n: u32, r: usize) -> Self {
        Combinations {
            n,
            idx: (0..r as u32).collect(),
            done: r as u64 > n as u64,
        }
    }

    fn starting_with(n: u32, r: usize, head: u32) -> Self {
        let idx: Vec<u32> = (0..r as u32).map(|i| head + i).collect();
        let done = r == 0 || idx.last().is_some_and(|&l| l >= n);
        Combinations { n, idx, done }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let item = self.idx.clone();
        let r = self.idx.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (r - i) as u32 {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

fn check_k(o: &Orientation, k: u32) -> Result<()> {
    if k == 0 {
        return Err(CubeError::invalid("k must be positive"));
    }
    if (o.dim().node_count() as u64) < k as u64 + 1 {
        return Err(CubeError::invalid(format!(
            "Q_{} has {} nodes, fewer than k + 1 = {}",
            o.dim(),
            o.dim().node_count(),
            k + 1
        )));
    }
    Ok(())
}

fn try_deletion(
    g: &Digraph,
    z: &[u32],
    k: u32,
    scratch: &mut Scratch,
) -> Option<ConnectivityReport> {
    let mut deleted = vec![0u64; g.dim.node_count().div_ceil(64)];
    for &v in z {
        set_bit(&mut deleted, v);
    }
    g.one_way_cut(&deleted, z.len(), scratch).map(|(side, _)| ConnectivityReport {
        verdict: false,
        k,
        witness_deleted: z.to_vec(),
        witness_side: set_from_words(g.dim, &side).to_vec(),
    })
}

/// Strong `k`-node connectivity by exhaustive deletion of every set of at
/// most `k - 1` nodes. Deletion sets are tried by size, then
/// lexicographically; the first failure is reported.
pub fn is_strongly_k_node_connected(o: &Orientation, k: u32) -> Result<ConnectivityReport> {
    check_k(o, k)?;
    let g = Digraph::new(o);
    let n = o.dim().node_count() as u32;
    let mut scratch = Scratch::new(n as usize);
    for size in 0..k as usize {
        for z in Combinations::new(n, size) {
            if let Some(report) = try_deletion(&g, &z, k, &mut scratch) {
                return Ok(report);
            }
        }
    }
    Ok(ConnectivityReport::pass(k))
}

/// Parallel variant of [`is_strongly_k_node_connected`]; the reported
/// witness is the same one the sequential sweep finds.
pub fn is_strongly_k_node_connected_par(o: &Orientation, k: u32) -> Result<ConnectivityReport> {
    check_k(o, k)?;
    let g = Digraph::new(o);
    let n = o.dim().node_count() as u32;
    if let Some(report) = try_deletion(&g, &[], k, &mut Scratch::new(n as usize)) {
        return Ok(report);
    }
    for size in 1..k as usize {
        let found = (0..n).into_par_iter().find_map_first(|head| {
            let mut scratch = Scratch::new(n as usize);
            Combinations::starting_with(n, size, head)
                .take_while(|z| z[0] == head)
                .find_map(|z| try_deletion(&g, &z, k, &mut scratch))
        });
        if let Some(report) = found {
            return Ok(report);
        }
    }
    Ok(ConnectivityReport::pass(k))
}

/// Re-checks a negative report against `o`: `|Z| <= k - 1`, `S` and
/// `V - Z - S` nonempty, and every arc between them crossing one way.
pub fn validate_witness(o: &Orientation, report: &ConnectivityReport) -> Result<bool> {
    let Some((z, s)) = report.witness(o.dim())? else {
        return Ok(false);
    };
    if z.len() as u64 > report.k as u64 - 1 || s.is_empty() || !s.intersection(&z).is_empty() {
        return Ok(false);
    }
    let rest = s.union(&z).complement();
    if rest.is_empty() {
        return Ok(false);
    }
    let (mut leaving, mut entering) = (0, 0);
    for v in s.iter() {
        for i in 0..o.dim().get() {
            let w = v ^ (1 << i);
            if rest.contains(w) {
                if o.has_arc(v, w) {
                    leaving += 1;
                } else {
                    entering += 1;
                }
            }
        }
    }
    Ok(leaving == 0 || entering == 0)
}

/// Arc counts around a witness `(Z, S)`, arranged so that `S` is the side
/// whose cut to `V - Z - S` is crossed outward (the entering case is
/// mirrored by swapping directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessAccounting {
    /// `|N(S)|` in the undirected cube.
    pub neighborhood: usize,
    pub deleted: usize,
    pub side: usize,
    /// Arcs from `S` into `V - Z - S`.
    pub out_to_rest: usize,
    /// Arcs from `S` into `Z`.
    pub out_to_deleted: usize,
    /// Arcs from `Z` into `S`.
    pub in_from_deleted: usize,
    /// Arcs from `V - Z - S` into `S` (zero for a valid witness).
    pub in_from_rest: usize,
}

impl WitnessAccounting {
    /// The bookkeeping a valid witness in an Eulerian orientation of a
    /// `2h`-regular cube must satisfy.
    pub fn consistent_with_eulerian(&self, half_degree: usize) -> bool {
        let cap = (half_degree * self.deleted).min(self.side * self.deleted);
        self.in_from_rest == 0
            && self.out_to_rest + self.out_to_deleted == self.in_from_deleted
            && self.in_from_deleted <= cap
            && self.out_to_rest >= self.neighborhood.saturating_sub(self.deleted)
            && self.neighborhood.saturating_sub(self.deleted) <= cap
    }
}

pub fn witness_accounting(o: &Orientation, report: &ConnectivityReport) -> Result<WitnessAccounting> {
    let (z, s) = report
        .witness(o.dim())?
        .ok_or_else(|| CubeError::invalid("report has no witness"))?;
    let rest = s.union(&z).complement();
    let mut acc = WitnessAccounting {
        neighborhood: s.neighborhood().len(),
        deleted: z.len(),
        side: s.len(),
        out_to_rest: 0,
        out_to_deleted: 0,
        in_from_deleted: 0,
        in_from_rest: 0,
    };
    let mut leaving_rest = 0;
    let mut entering_rest = 0;
    for v in s.iter() {
        for i in 0..o.dim().get() {
            let w = v ^ (1 << i);
            if rest.contains(w) {
                if o.has_arc(v, w) {
                    leaving_rest += 1;
                } else {
                    entering_rest += 1;
                }
            }
        }
    }
    // Mirror so that S is the "out" side.
    let flip = leaving_rest == 0 && entering_rest > 0;
    for v in s.iter() {
        for i in 0..o.dim().get() {
            let w = v ^ (1 << i);
            let outward = o.has_arc(v, w) != flip;
            if rest.contains(w) {
                if outward {
                    acc.out_to_rest += 1;
                } else {
                    acc.in_from_rest += 1;
                }
            } else if z.contains(w) {
                if outward {
                    acc.out_to_deleted += 1;
                } else {
                    acc.in_from_deleted += 1;
                }
            }
        }
    }
    Ok(acc)
}

/// Unit-capacity max-flow on a small directed graph.
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: u32) {
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(cap);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut prev = vec![usize::MAX; self.adj.len()];
        while flow < limit {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && w != s && prev[w] == usize::MAX {
                        prev[w] = e;
                        if w == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !found {
                break;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Node-split network: node `v` becomes `2v -> 2v+1` with capacity one
/// (unbounded for the terminals); each arc `u -> v` becomes `2u+1 -> 2v`.
fn split_network(
    n: usize,
    s: usize,
    t: usize,
    arcs: impl Iterator<Item = (usize, usize)>,
) -> FlowNetwork {
    let big = n as u32;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, if v == s || v == t { big } else { 1 });
    }
    for (u, v) in arcs {
        let cap = if u == s && v == t { 1 } else { big };
        net.add_arc(2 * u + 1, 2 * v, cap);
    }
    net
}

/// Result of [`min_vertex_cut`]. `cut` is absent when the arc `s -> t`
/// exists, since no node set separates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    pub size: usize,
    pub cut: Option<NodeSet>,
}

fn orientation_arcs(o: &Orientation) -> impl Iterator<Item = (usize, usize)> + '_ {
    let masks = o.out_masks();
    (0..o.dim().node_count()).flat_map(move |u| {
        let mut m = masks[u];
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros();
                m &= m - 1;
                (u, u ^ (1 << i))
            })
        })
    })
}

/// Maximum number of internally node-disjoint directed `s -> t` paths, with
/// a minimum separating node set when `s -> t` is not an arc.
pub fn min_vertex_cut(o: &Orientation, s: u32, t: u32) -> Result<VertexCut> {
    let dim = o.dim();
    dim.check_node(s)?;
    dim.check_node(t)?;
    if s == t {
        return Err(CubeError::invalid("source and sink coincide"));
    }
    let n = dim.node_count();
    let (s, t) = (s as usize, t as usize);
    let mut net = split_network(n, s, t, orientation_arcs(o));
    let size = net.max_flow(2 * s + 1, 2 * t, n);
    let cut = if o.has_arc(s as u32, t as u32) {
        None
    } else {
        let seen = net.residual_reachable(2 * s + 1);
        let mut cut = NodeSet::empty(dim);
        for v in 0..n {
            if seen[2 * v] && !seen[2 * v + 1] {
                cut.insert(v as u32);
            }
        }
        debug_assert_eq!(cut.len(), size);
        Some(cut)
    };
    Ok(VertexCut { size, cut })
}

/// Vertex connectivity of the oriented cube: the minimum over ordered pairs
/// `(s, t)` without an arc `s -> t` of the number of node-disjoint `s -> t`
/// paths, capped at `n - 1`.
pub fn menger_connectivity(o: &Orientation) -> usize {
    let n = o.dim().node_count();
    let mut best = n - 1;
    let arcs: Vec<(usize, usize)> = orientation_arcs(o).collect();
    for s in 0..n {
        for t in 0..n {
            if s == t || o.has_arc(s as u32, t as u32) {
                continue;
            }
            let mut net = split_network(n, s, t, arcs.iter().copied());
            best = best.min(net.max_flow(2 * s + 1, 2 * t, best));
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// Strong `k`-node connectivity decided through [`menger_connectivity`].
pub fn menger_verdict(o: &Orientation, k: u32) -> Result<bool> {
    check_k(o, k)?;
    Ok(menger_connectivity(o) >= k as usize)
}

/// Node connectivity of the undirected `Q_d`, by max-flow over every
/// non-adjacent pair.
pub fn undirected_node_connectivity(dim: Dim) -> Result<u32> {
    if dim.get() > MAX_UNDIRECTED_DIM {
        return Err(CubeError::infeasible(format!(
            "undirected connectivity limited to d <= {MAX_UNDIRECTED_DIM}, got d = {dim}"
        )));
    }
    let n = dim.node_count();
    let d = dim.get();
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..d).map(move |i| (u, u ^ (1 << i))))
        .collect();
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if (s ^ t).is_power_of_two() {
                continue;
            }
            let mut net = split_network(n, s, t, arcs.iter().copied());
            best = best.min(net.max_flow(2 * s + 1, 2 * t, best));
        }
    }
    Ok(best as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::{inductive_good_orientation, random_eulerian_orientation, SamplerConfig};

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    fn square() -> Orientation {
        inductive_good_orientation(1).unwrap()
    }

    #[test]
    fn strongly_connected_examples() {
        let sq = square();
        assert!(strongly_connected(&sq, &NodeSet::empty(dim(2))).unwrap());
        for v in 0..4 {
            let z = NodeSet::from_nodes(dim(2), [v]).unwrap();
            assert!(!strongly_connected(&sq, &z).unwrap());
        }
        assert!(strongly_connected(&sq, &NodeSet::full(dim(2))).is_err());
        let three = NodeSet::from_nodes(dim(2), [0, 1, 2]).unwrap();
        assert!(strongly_connected(&sq, &three).unwrap());
    }

    #[test]
    fn square_connectivity_levels() {
        let sq = square();
        let r1 = is_strongly_k_node_connected(&sq, 1).unwrap();
        assert!(r1.verdict);
        assert!(r1.witness_deleted.is_empty() && r1.witness_side.is_empty());

        let r2 = is_strongly_k_node_connected(&sq, 2).unwrap();
        assert!(!r2.verdict);
        assert_eq!(r2.witness_deleted, vec![0]);
        assert!(validate_witness(&sq, &r2).unwrap());

        assert!(is_strongly_k_node_connected(&sq, 4).is_err());
        assert!(is_strongly_k_node_connected(&sq, 0).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(5, 0).collect::<Vec<_>>(), vec![Vec::<u32>::new()]);
        assert_eq!(Combinations::new(64, 2).count(), 2016);
        let tail: Vec<_> = Combinations::starting_with(4, 2, 2)
            .take_while(|z| z[0] == 2)
            .collect();
        assert_eq!(tail, vec![vec![2, 3]]);
    }

    #[test]
    fn report_json_shape() {
        let r = is_strongly_k_node_connected(&square(), 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], false);
        assert_eq!(v["k"], 2);
        assert_eq!(v["witness_deleted"], serde_json::json!([0]));
        assert!(v["witness_side"].is_array());
    }

    #[test]
    fn vertex_cut_examples() {
        let sq = square();
        let c = min_vertex_cut(&sq, 0, 3).unwrap();
        assert_eq!(c.size, 1);
        assert_eq!(c.cut.unwrap().to_vec(), vec![1]);
        let adj = min_vertex_cut(&sq, 0, 1).unwrap();
        assert_eq!(adj.size, 1);
        assert!(adj.cut.is_none());
        assert!(min_vertex_cut(&sq, 2, 2).is_err());

        let q4 = random_eulerian_orientation(dim(4), &SamplerConfig::new(5, 320)).unwrap();
        for s in 0..16u32 {
            for t in 0..16u32 {
                if s != t && (s ^ t).count_ones() > 1 {
                    assert!(min_vertex_cut(&q4, s, t).unwrap().size >= 2);
                }
            }
        }
    }

    #[test]
    fn undirected_connectivity_small() {
        assert_eq!(undirected_node_connectivity(dim(1)).unwrap(), 1);
        assert_eq!(undirected_node_connectivity(dim(2)).unwrap(), 2);
        assert_eq!(undirected_node_connectivity(dim(4)).unwrap(), 4);
        assert!(matches!(
            undirected_node_connectivity(dim(7)),
            Err(CubeError::Infeasible(_))
        ));
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        for seed in 0..6 {
            let o = random_eulerian_orientation(dim(4), &SamplerConfig::new(seed, 100)).unwrap();
            for k in 1..=5 {
                assert_eq!(
                    is_strongly_k_node_connected(&o, k).unwrap(),
                    is_strongly_k_node_connected_par(&o, k).unwrap()
                );
            }
        }
    }
}
