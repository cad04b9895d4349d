//! The hypercube `Q_d`, its node and edge encodings, node sets and orientations.
//!
//! Nodes are the integers `0..2^d`; dimension `i` flips bit `i`. An undirected
//! edge `{v, v ^ 2^i}` is named by the endpoint whose bit `i` is clear, and
//! edges are ranked by (base ascending, dimension ascending). An
//! [`Orientation`] stores one bit per edge at that rank.

use std::fmt;

use crate::error::{CubeError, Result};

/// Largest supported dimension.
pub const MAX_DIM: u32 = 20;

/// Dimension `d` of a hypercube, `1 <= d <= MAX_DIM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u32);

impl Dim {
    pub fn new(d: u32) -> Result<Self> {
        if (1..=MAX_DIM).contains(&d) {
            Ok(Dim(d))
        } else {
            Err(CubeError::DimOutOfRange(d))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn node_count(self) -> usize {
        1usize << self.0
    }

    #[inline]
    pub fn edge_count(self) -> usize {
        (self.0 as usize) << (self.0 - 1)
    }

    /// Mask with the low `d` bits set.
    #[inline]
    pub fn full_mask(self) -> u32 {
        ((1u64 << self.0) - 1) as u32
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn check_node(self, v: u32) -> Result<NodeId> {
        if (v as usize) < self.node_count() {
            Ok(NodeId(v))
        } else {
            Err(CubeError::NodeOutOfRange {
                node: v,
                count: self.node_count(),
            })
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex label of `Q_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn flip(self, dim: u32) -> NodeId {
        NodeId(self.0 ^ (1 << dim))
    }

    /// The dimension along which `self` and `other` differ, if they are adjacent.
    pub fn adjacent_dim(self, other: NodeId) -> Option<u32> {
        let x = self.0 ^ other.0;
        x.is_power_of_two().then(|| x.trailing_zeros())
    }
}

/// Canonical undirected edge: `base` has bit `dim` clear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub base: u32,
    pub dim: u32,
}

impl EdgeId {
    /// Edge along `dim` incident to `v`.
    #[inline]
    pub fn at(v: u32, dim: u32) -> EdgeId {
        EdgeId {
            base: v & !(1 << dim),
            dim,
        }
    }

    pub fn between(u: NodeId, v: NodeId) -> Option<EdgeId> {
        u.adjacent_dim(v).map(|i| EdgeId::at(u.0, i))
    }

    #[inline]
    pub fn top(self) -> u32 {
        self.base | (1 << self.dim)
    }

    /// Position of this edge in the canonical enumeration of `Q_d`'s edges.
    #[inline]
    pub fn rank(self, d: Dim) -> usize {
        let base = self.base as u64;
        let below = !self.base & ((1u32 << self.dim) - 1);
        (d.get() as u64 * base - ones_before(base)) as usize + below.count_ones() as usize
    }
}

/// `sum_{x < n} popcount(x)`.
fn ones_before(n: u64) -> u64 {
    let mut total = 0;
    let mut i = 0;
    while (1u64 << i) < n {
        let block = 1u64 << (i + 1);
        let half = 1u64 << i;
        total += (n / block) * half + (n % block).saturating_sub(half);
        i += 1;
    }
    total
}

/// Every edge of `Q_d` in canonical order.
pub fn edges(d: Dim) -> impl Iterator<Item = EdgeId> {
    let dd = d.get();
    (0..d.node_count() as u32).flat_map(move |base| {
        (0..dd)
            .filter(move |&i| base & (1 << i) == 0)
            .map(move |dim| EdgeId { base, dim })
    })
}

/// Neighbours of `v` in `Q_d`.
pub fn neighbors(v: u32, d: Dim) -> Result<NodeSet> {
    let v = d.check_node(v)?;
    let mut set = NodeSet::empty(d);
    for i in 0..d.get() {
        set.insert(v.flip(i).0);
    }
    Ok(set)
}

/// Bitset over the nodes of `Q_d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    dim: Dim,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn empty(dim: Dim) -> Self {
        NodeSet {
            dim,
            words: vec![0; dim.node_count().div_ceil(64)],
        }
    }

    pub fn full(dim: Dim) -> Self {
        let mut s = Self::empty(dim);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_nodes<I: IntoIterator<Item = u32>>(dim: Dim, nodes: I) -> Result<Self> {
        let mut s = Self::empty(dim);
        for v in nodes {
            dim.check_node(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    fn trim(&mut self) {
        let n = self.dim.node_count();
        if n < 64 {
            self.words[0] &= (1u64 << n) - 1;
        }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Panics if `v` is outside `Q_d`.
    #[inline]
    pub fn insert(&mut self, v: u32) -> bool {
        assert!((v as usize) < self.dim.node_count(), "node {v} out of range");
        let (w, b) = (v as usize / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: u32) -> bool {
        if (v as usize) >= self.dim.node_count() {
            return false;
        }
        let (w, b) = (v as usize / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.dim.node_count() && self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.dim.node_count()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn complement(&self) -> NodeSet {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.trim();
        s
    }

    fn zip_with(&self, other: &NodeSet, f: impl Fn(u64, u64) -> u64) -> NodeSet {
        assert_eq!(self.dim, other.dim, "node sets of different cubes");
        NodeSet {
            dim: self.dim,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Exterior neighbourhood `N(S)`: nodes outside `S` adjacent to some member.
    pub fn neighborhood(&self) -> NodeSet {
        let mut out = NodeSet::empty(self.dim);
        for v in self.iter() {
            for i in 0..self.dim.get() {
                let w = v ^ (1 << i);
                if !self.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Direction assignment for every edge of `Q_d`.
///
/// Bit `rank(e)` set means the arc runs `e.base -> e.top()`; clear means
/// `e.top() -> e.base`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    dim: Dim,
    bits: Vec<u64>,
}

impl Orientation {
    /// Orientation with every edge pointing the same way relative to its base.
    pub fn uniform(dim: Dim, dir: bool) -> Self {
        let m = dim.edge_count();
        let mut bits = vec![if dir { u64::MAX } else { 0 }; m.div_ceil(64)];
        if dir && !m.is_multiple_of(64) {
            *bits.last_mut().unwrap() = (1u64 << (m % 64)) - 1;
        }
        Orientation { dim, bits }
    }

    pub fn from_fn(dim: Dim, mut f: impl FnMut(EdgeId) -> bool) -> Self {
        let mut o = Self::uniform(dim, false);
        for (rank, e) in edges(dim).enumerate() {
            if f(e) {
                o.bits[rank / 64] |= 1 << (rank % 64);
            }
        }
        o
    }

    /// Builds from a direction per canonical rank.
    pub fn from_rank_bits(dim: Dim, dirs: &[bool]) -> Result<Self> {
        if dirs.len() != dim.edge_count() {
            return Err(CubeError::invalid(format!(
                "expected {} edge directions, got {}",
                dim.edge_count(),
                dirs.len()
            )));
        }
        let mut o = Self::uniform(dim, false);
        for (rank, &b) in dirs.iter().enumerate() {
            if b {
                o.bits[rank / 64] |= 1 << (rank % 64);
            }
        }
        Ok(o)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn rank_bit(&self, rank: usize) -> bool {
        self.bits[rank / 64] >> (rank % 64) & 1 == 1
    }

    #[inline]
    pub fn set_rank_bit(&mut self, rank: usize, dir: bool) {
        if dir {
            self.bits[rank / 64] |= 1 << (rank % 64);
        } else {
            self.bits[rank / 64] &= !(1 << (rank % 64));
        }
    }

    #[inline]
    pub fn direction(&self, e: EdgeId) -> bool {
        self.rank_bit(e.rank(self.dim))
    }

    #[inline]
    pub fn set_direction(&mut self, e: EdgeId, dir: bool) {
        self.set_rank_bit(e.rank(self.dim), dir)
    }

    /// Orient the edge between adjacent nodes `u` and `v` as `u -> v`.
    pub fn set_arc(&mut self, u: u32, v: u32) {
        let e = EdgeId::between(NodeId(u), NodeId(v)).expect("set_arc on non-adjacent nodes");
        self.set_direction(e, e.base == u);
    }

    /// Whether the arc `u -> v` is present. Non-adjacent pairs have no arc.
    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        match EdgeId::between(NodeId(u), NodeId(v)) {
            Some(e) => self.direction(e) == (e.base == u),
            None => false,
        }
    }

    /// Bit `i` set iff the arc `v -> v ^ 2^i` is present.
    pub fn out_mask(&self, v: u32) -> u32 {
        let mut mask = 0;
        for i in 0..self.dim.get() {
            let e = EdgeId::at(v, i);
            if self.direction(e) == (e.base == v) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// `out_mask` for every node, computed in one pass over the edges.
    pub fn out_masks(&self) -> Vec<u32> {
        let mut masks = vec![0u32; self.dim.node_count()];
        for (rank, e) in edges(self.dim).enumerate() {
            if self.rank_bit(rank) {
                masks[e.base as usize] |= 1 << e.dim;
            } else {
                masks[e.top() as usize] |= 1 << e.dim;
            }
        }
        masks
    }

    pub fn out_degree(&self, v: u32) -> u32 {
        self.out_mask(v).count_ones()
    }

    pub fn in_degree(&self, v: u32) -> u32 {
        self.dim.get() - self.out_degree(v)
    }

    /// `|d_in(v) - d_out(v)| <= 1` everywhere.
    pub fn is_smooth(&self) -> bool {
        let d = self.dim.get() as i64;
        self.out_masks()
            .iter()
            .all(|m| (2 * m.count_ones() as i64 - d).abs() <= 1)
    }

    /// `d_in(v) = d_out(v)` everywhere. Always false for odd `d`.
    pub fn is_eulerian(&self) -> bool {
        let d = self.dim.get();
        d.is_multiple_of(2) && self.out_masks().iter().all(|m| m.count_ones() * 2 == d)
    }

    /// Arcs leaving and entering `s`, as `(out, in)`.
    pub fn cut_arcs(&self, s: &NodeSet) -> Result<(usize, usize)> {
        if s.dim() != self.dim {
            return Err(CubeError::invalid("node set and orientation dimensions differ"));
        }
        if s.is_empty() || s.is_full() {
            return Err(CubeError::invalid("cut side must be a nonempty proper subset"));
        }
        let (mut out, mut inn) = (0, 0);
        for v in s.iter() {
            let om = self.out_mask(v);
            for i in 0..self.dim.get() {
                if !s.contains(v ^ (1 << i)) {
                    if om >> i & 1 == 1 {
                        out += 1;
                    } else {
                        inn += 1;
                    }
                }
            }
        }
        Ok((out, inn))
    }

    /// Byte length of the serialized bit stream for dimension `d`.
    pub fn serialized_len(dim: Dim) -> usize {
        dim.edge_count().div_ceil(8)
    }

    /// Edge directions in canonical order, packed most-significant bit first.
    pub fn to_bytes(&self) -> Vec<u8> {
        let m = self.dim.edge_count();
        let mut out = vec![0u8; m.div_ceil(8)];
        for rank in 0..m {
            if self.rank_bit(rank) {
                out[rank / 8] |= 0x80 >> (rank % 8);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], dim: Dim) -> Result<Self> {
        let expected = Self::serialized_len(dim);
        if bytes.len() != expected {
            return Err(CubeError::LengthMismatch {
                expected,
                actual: bytes.len(),
            });
        }
        let m = dim.edge_count();
        let mut o = Self::uniform(dim, false);
        for rank in 0..m {
            if bytes[rank / 8] & (0x80 >> (rank % 8)) != 0 {
                o.set_rank_bit(rank, true);
            }
        }
        Ok(o)
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation(d={}, ", self.dim)?;
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    fn directed_square() -> Orientation {
        let mut o = Orientation::uniform(dim(2), false);
        for (u, v) in [(0, 1), (1, 3), (3, 2), (2, 0)] {
            o.set_arc(u, v);
        }
        o
    }

    #[test]
    fn dim_bounds() {
        assert!(Dim::new(0).is_err());
        assert!(Dim::new(21).is_err());
        assert_eq!(dim(4).node_count(), 16);
        assert_eq!(dim(4).edge_count(), 32);
        assert_eq!(dim(20).full_mask(), (1 << 20) - 1);
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(neighbors(0, dim(3)).unwrap().to_vec(), vec![1, 2, 4]);
        assert_eq!(neighbors(5, dim(3)).unwrap().to_vec(), vec![1, 4, 7]);
        assert_eq!(neighbors(0, dim(4)).unwrap().len(), 4);
        assert!(matches!(
            neighbors(8, dim(3)),
            Err(CubeError::NodeOutOfRange { node: 8, .. })
        ));
    }

    #[test]
    fn neighborhood_examples() {
        let d = dim(4);
        assert_eq!(NodeSet::from_nodes(d, [0]).unwrap().neighborhood().len(), 4);
        let pair = NodeSet::from_nodes(d, [0, 1]).unwrap().neighborhood();
        assert_eq!(pair.to_vec(), vec![2, 3, 4, 5, 8, 9]);
        assert!(NodeSet::full(dim(3)).neighborhood().is_empty());
    }

    #[test]
    fn ranks_enumerate_edges_in_order() {
        for d in 1..=7 {
            let d = dim(d);
            let all: Vec<_> = edges(d).collect();
            assert_eq!(all.len(), d.edge_count());
            for (i, e) in all.iter().enumerate() {
                assert_eq!(e.rank(d), i, "{e:?}");
            }
        }
    }

    #[test]
    fn ones_before_matches_direct_sum() {
        let mut acc = 0u64;
        for n in 0..2000u64 {
            assert_eq!(ones_before(n), acc);
            acc += n.count_ones() as u64;
        }
    }

    #[test]
    fn smoothness_examples() {
        assert!(directed_square().is_smooth());
        assert!(directed_square().is_eulerian());

        let mut o = Orientation::uniform(dim(2), false);
        for (u, v) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            o.set_arc(u, v);
        }
        assert!(!o.is_smooth());
        assert!(!o.is_eulerian());
    }

    #[test]
    fn odd_dimension_is_never_eulerian() {
        for bits in 0..(1u32 << 12) {
            let dirs: Vec<bool> = (0..12).map(|i| bits >> i & 1 == 1).collect();
            let o = Orientation::from_rank_bits(dim(3), &dirs).unwrap();
            assert!(!o.is_eulerian());
        }
    }

    #[test]
    fn cut_arcs_examples() {
        let sq = directed_square();
        let s = NodeSet::from_nodes(dim(2), [0]).unwrap();
        assert_eq!(sq.cut_arcs(&s).unwrap(), (1, 1));
        assert!(sq.cut_arcs(&NodeSet::empty(dim(2))).is_err());
        assert!(sq.cut_arcs(&NodeSet::full(dim(2))).is_err());

        // Q_3 with node 0 emitting along dims 0, 1 and receiving along dim 2.
        let mut o = Orientation::uniform(dim(3), true);
        o.set_arc(4, 0);
        assert!(o.has_arc(0, 1) && o.has_arc(0, 2) && o.has_arc(4, 0));
        let s = NodeSet::from_nodes(dim(3), [0]).unwrap();
        assert_eq!(o.cut_arcs(&s).unwrap(), (2, 1));
    }

    #[test]
    fn all_ones_q2_serializes_to_single_byte() {
        let o = Orientation::uniform(dim(2), true);
        assert_eq!(o.to_bytes(), vec![0xF0]);
        assert_eq!(Orientation::from_bytes(&[0xF0], dim(2)).unwrap(), o);
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert_eq!(
            Orientation::from_bytes(&[0, 0], dim(2)),
            Err(CubeError::LengthMismatch {
                expected: 1,
                actual: 2
            })
        );
        assert!(Orientation::from_bytes(&[0; 3], dim(4)).is_err());
    }

    #[test]
    fn out_mask_agrees_with_out_masks() {
        let o = Orientation::from_fn(dim(5), |e| (e.base * 7 + e.dim) % 3 == 0);
        let masks = o.out_masks();
        for v in 0..32 {
            assert_eq!(o.out_mask(v), masks[v as usize]);
            assert_eq!(o.out_degree(v) + o.in_degree(v), 5);
        }
    }
}
