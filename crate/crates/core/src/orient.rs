//! Orientation generators: Euler-tour orientations, a cycle-reversal sampler,
//! exhaustive enumeration of Eulerian orientations, the recursive
//! four-copy construction, and a search for smooth orientations that fail to
//! be strongly connected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::strongly_connected;
use crate::cube::{edges, Dim, EdgeId, NodeSet, Orientation};
use crate::error::{CubeError, Result};

/// Largest dimension accepted by [`enumerate_eulerian_orientations`].
pub const MAX_ENUMERATION_DIM: u32 = 4;

/// Largest `k` accepted by [`inductive_good_orientation`].
pub const MAX_INDUCTIVE_K: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Number of cycle-reversal moves.
    pub steps: u64,
}

impl SamplerConfig {
    pub fn new(seed: u64, steps: u64) -> Self {
        SamplerConfig { seed, steps }
    }

    /// `10 * |E(Q_d)|` moves.
    pub fn default_steps(dim: Dim) -> u64 {
        10 * dim.edge_count() as u64
    }

    pub fn with_default_steps(seed: u64, dim: Dim) -> Self {
        SamplerConfig::new(seed, Self::default_steps(dim))
    }
}

fn masks_to_orientation(dim: Dim, out: &[u32]) -> Orientation {
    Orientation::from_fn(dim, |e| out[e.base as usize] >> e.dim & 1 == 1)
}

/// Hierholzer traversal of the subgraph of `Q_d` using only the dimensions in
/// `allowed`. Every component is covered; each edge is oriented the way the
/// traversal crosses it. Returns out-masks.
fn euler_tour_masks(dim: Dim, allowed: u32) -> Vec<u32> {
    let n = dim.node_count();
    let mut unused = vec![allowed; n];
    let mut out = vec![0u32; n];
    let mut stack = Vec::new();
    for start in 0..n as u32 {
        if unused[start as usize] == 0 {
            continue;
        }
        stack.push(start);
        while let Some(&v) = stack.last() {
            let free = unused[v as usize];
            if free == 0 {
                stack.pop();
                continue;
            }
            let i = free.trailing_zeros();
            let w = v ^ (1 << i);
            unused[v as usize] &= !(1 << i);
            unused[w as usize] &= !(1 << i);
            out[v as usize] |= 1 << i;
            stack.push(w);
        }
    }
    out
}

/// Eulerian orientation of `Q_d` following one Euler circuit.
pub fn euler_tour_orientation(dim: Dim) -> Result<Orientation> {
    if !dim.is_even() {
        return Err(CubeError::NotEulerian(dim.get()));
    }
    Ok(masks_to_orientation(dim, &euler_tour_masks(dim, dim.full_mask())))
}

/// Reverses one directed cycle found by a random walk along out-arcs restricted
/// to the dimensions in `allowed`. `pos` is scratch space of length `2^d`
/// filled with `usize::MAX`; it is restored before returning.
fn reverse_random_cycle(
    out: &mut [u32],
    allowed: u32,
    rng: &mut ChaCha8Rng,
    path: &mut Vec<u32>,
    pos: &mut [usize],
) {
    let n = out.len();
    let mut v = rng.gen_range(0..n) as u32;
    path.clear();
    loop {
        if pos[v as usize] != usize::MAX {
            break;
        }
        pos[v as usize] = path.len();
        path.push(v);
        let choices = out[v as usize] & allowed;
        if choices == 0 {
            // Only reachable when the restricted subgraph is not balanced.
            for &u in path.iter() {
                pos[u as usize] = usize::MAX;
            }
            return;
        }
        let pick = rng.gen_range(0..choices.count_ones());
        let mut c = choices;
        for _ in 0..pick {
            c &= c - 1;
        }
        v ^= 1 << c.trailing_zeros();
    }
    let first = pos[v as usize];
    let cycle = &path[first..];

    #[cfg(debug_assertions)]
    let before: Vec<u32> = cycle.iter().map(|&u| out[u as usize].count_ones()).collect();

    for (idx, &a) in cycle.iter().enumerate() {
        let b = if idx + 1 < cycle.len() { cycle[idx + 1] } else { v };
        let bit = a ^ b;
        out[a as usize] &= !bit;
        out[b as usize] |= bit;
    }

    #[cfg(debug_assertions)]
    for (u, deg) in cycle.iter().zip(before) {
        debug_assert_eq!(out[*u as usize].count_ones(), deg, "reversal changed a degree");
    }

    for &u in path.iter() {
        pos[u as usize] = usize::MAX;
    }
}

/// Runs `steps` cycle reversals over `out`.
fn shuffle_masks(out: &mut [u32], allowed: u32, steps: u64, rng: &mut ChaCha8Rng) {
    let mut path = Vec::new();
    let mut pos = vec![usize::MAX; out.len()];
    for _ in 0..steps {
        reverse_random_cycle(out, allowed, rng, &mut path, &mut pos);
    }
}

/// An Eulerian orientation reached from [`euler_tour_orientation`] by
/// `cfg.steps` random cycle reversals. Deterministic in `(d, seed, steps)`.
pub fn random_eulerian_orientation(dim: Dim, cfg: &SamplerConfig) -> Result<Orientation> {
    if !dim.is_even() {
        return Err(CubeError::NotEulerian(dim.get()));
    }
    let mut out = euler_tour_masks(dim, dim.full_mask());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    shuffle_masks(&mut out, dim.full_mask(), cfg.steps, &mut rng);
    Ok(masks_to_orientation(dim, &out))
}

/// A seeded chain of Eulerian orientations, `steps_between` reversals apart.
pub struct EulerianChain {
    dim: Dim,
    out: Vec<u32>,
    rng: ChaCha8Rng,
    steps_between: u64,
    path: Vec<u32>,
    pos: Vec<usize>,
}

impl EulerianChain {
    pub fn new(dim: Dim, cfg: &SamplerConfig) -> Result<Self> {
        if !dim.is_even() {
            return Err(CubeError::NotEulerian(dim.get()));
        }
        let out = euler_tour_masks(dim, dim.full_mask());
        Ok(EulerianChain {
            dim,
            pos: vec![usize::MAX; out.len()],
            out,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            steps_between: cfg.steps,
            path: Vec::new(),
        })
    }
}

impl Iterator for EulerianChain {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        let all = self.dim.full_mask();
        for _ in 0..self.steps_between {
            reverse_random_cycle(&mut self.out, all, &mut self.rng, &mut self.path, &mut self.pos);
        }
        Some(masks_to_orientation(self.dim, &self.out))
    }
}

/// Order in which the enumerator assigns edge directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Base ascending, then dimension.
    Canonical,
    /// Dimension ascending, then base.
    DimensionMajor,
}

struct Enumerator<'a, F> {
    half: u32,
    edges: Vec<(EdgeId, usize)>,
    out: Vec<u32>,
    inn: Vec<u32>,
    current: Orientation,
    visit: &'a mut F,
    count: u64,
}

impl<F: FnMut(&Orientation)> Enumerator<'_, F> {
    fn run(&mut self, idx: usize) {
        let Some(&(e, rank)) = self.edges.get(idx) else {
            self.count += 1;
            (self.visit)(&self.current);
            return;
        };
        let (a, b) = (e.base as usize, e.top() as usize);
        for (dir, from, to) in [(true, a, b), (false, b, a)] {
            if self.out[from] < self.half && self.inn[to] < self.half {
                self.out[from] += 1;
                self.inn[to] += 1;
                self.current.set_rank_bit(rank, dir);
                self.run(idx + 1);
                self.out[from] -= 1;
                self.inn[to] -= 1;
            }
        }
    }
}

/// Calls `visit` once for every Eulerian orientation of `Q_d` and returns the
/// number visited.
pub fn enumerate_eulerian_orientations<F: FnMut(&Orientation)>(
    dim: Dim,
    visit: F,
) -> Result<u64> {
    enumerate_eulerian_orientations_with_order(dim, EdgeOrder::Canonical, visit)
}

pub fn enumerate_eulerian_orientations_with_order<F: FnMut(&Orientation)>(
    dim: Dim,
    order: EdgeOrder,
    mut visit: F,
) -> Result<u64> {
    if !dim.is_even() {
        return Err(CubeError::NotEulerian(dim.get()));
    }
    if dim.get() > MAX_ENUMERATION_DIM {
        return Err(CubeError::infeasible(format!(
            "exhaustive enumeration limited to d <= {MAX_ENUMERATION_DIM}, got d = {dim}"
        )));
    }
    let mut list: Vec<EdgeId> = edges(dim).collect();
    if order == EdgeOrder::DimensionMajor {
        list.sort_by_key(|e| (e.dim, e.base));
    }
    let n = dim.node_count();
    let mut en = Enumerator {
        half: dim.get() / 2,
        edges: list.into_iter().map(|e| (e, e.rank(dim))).collect(),
        out: vec![0; n],
        inn: vec![0; n],
        current: Orientation::uniform(dim, false),
        visit: &mut visit,
        count: 0,
    };
    en.run(0);
    Ok(en.count)
}

/// Successor of a copy index on the directed 4-cycle `00 -> 01 -> 11 -> 10 -> 00`.
fn gray_successor(c: u32) -> u32 {
    match c {
        0 => 1,
        1 => 3,
        3 => 2,
        _ => 0,
    }
}

/// Eulerian orientation of `Q_{2k}` that is strongly `k`-node connected.
///
/// `Q_2` is the directed cycle `0 -> 1 -> 3 -> 2 -> 0`. `Q_{2k+2}` is four
/// copies of the `Q_{2k}` orientation, selected by the top two label bits,
/// joined by the 4-cycles through each node position, each oriented along
/// the same Gray-code cycle of copy indices.
pub fn inductive_good_orientation(k: u32) -> Result<Orientation> {
    if !(1..=MAX_INDUCTIVE_K).contains(&k) {
        return Err(CubeError::invalid(format!(
            "k must be in 1..={MAX_INDUCTIVE_K}, got {k}"
        )));
    }
    let mut current = Orientation::from_fn(Dim::new(2)?, |e| {
        let from = e.base;
        gray_successor(from) == e.top()
    });
    for level in 1..k {
        let low_dims = 2 * level;
        let low_mask = (1u32 << low_dims) - 1;
        let inner = current;
        current = Orientation::from_fn(Dim::new(low_dims + 2)?, |e| {
            if e.dim < low_dims {
                inner.direction(EdgeId {
                    base: e.base & low_mask,
                    dim: e.dim,
                })
            } else {
                gray_successor(e.base >> low_dims) == e.top() >> low_dims
            }
        });
    }
    Ok(current)
}

fn is_counterexample(o: &Orientation) -> bool {
    o.is_smooth() && !strongly_connected(o, &NodeSet::empty(o.dim())).unwrap_or(true)
}

/// Searches for a smooth orientation of `Q_d` whose digraph is not strongly
/// connected.
///
/// For `d <= 3` all `2^|E|` orientations are scanned in increasing order of
/// their rank-bit value and the first hit is returned. Larger cubes draw
/// `cfg.steps` random smooth candidates: the edges outside one dimension's
/// matching (all edges when `d` is even) get a shuffled Euler-tour
/// orientation, and for odd `d` the matching edges are then oriented with a
/// per-candidate bias of 0, 1/2 or 1.
pub fn find_smooth_not_strongly_connected(dim: Dim, cfg: &SamplerConfig) -> Option<Orientation> {
    if dim.get() <= 3 {
        let m = dim.edge_count();
        let mut dirs = vec![false; m];
        for bits in 0u64..(1 << m) {
            for (i, d) in dirs.iter_mut().enumerate() {
                *d = bits >> i & 1 == 1;
            }
            let o = Orientation::from_rank_bits(dim, &dirs).ok()?;
            if is_counterexample(&o) {
                return Some(o);
            }
        }
        return None;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reversals = dim.get() as u64 * 4;
    for _ in 0..cfg.steps {
        let (allowed, matching_dim) = if dim.is_even() {
            (dim.full_mask(), None)
        } else {
            let j = rng.gen_range(0..dim.get());
            (dim.full_mask() & !(1 << j), Some(j))
        };
        let mut out = euler_tour_masks(dim, allowed);
        shuffle_masks(&mut out, allowed, reversals, &mut rng);
        if let Some(j) = matching_dim {
            let bias = [0.0, 0.5, 1.0][rng.gen_range(0..3)];
            for base in 0..dim.node_count() as u32 {
                if base >> j & 1 == 0 {
                    let top = base | 1 << j;
                    if rng.gen_bool(bias) {
                        out[base as usize] |= 1 << j;
                    } else {
                        out[top as usize] |= 1 << j;
                    }
                }
            }
        }
        let o = masks_to_orientation(dim, &out);
        if is_counterexample(&o) {
            return Some(o);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    fn is_directed_square(o: &Orientation) -> bool {
        let cw = [(0, 1), (1, 3), (3, 2), (2, 0)];
        cw.iter().all(|&(u, v)| o.has_arc(u, v)) || cw.iter().all(|&(u, v)| o.has_arc(v, u))
    }

    #[test]
    fn euler_tour_examples() {
        let o = euler_tour_orientation(dim(2)).unwrap();
        assert!(is_directed_square(&o));
        for d in [4, 6, 8, 10] {
            assert!(euler_tour_orientation(dim(d)).unwrap().is_eulerian());
        }
        assert_eq!(euler_tour_orientation(dim(3)), Err(CubeError::NotEulerian(3)));
    }

    #[test]
    fn sampler_examples() {
        let d4 = dim(4);
        assert_eq!(
            random_eulerian_orientation(d4, &SamplerConfig::new(1, 0)).unwrap(),
            euler_tour_orientation(d4).unwrap()
        );
        let o = random_eulerian_orientation(d4, &SamplerConfig::new(1, 320)).unwrap();
        assert!(o.is_eulerian());
        for seed in 0..8 {
            for steps in [0, 1, 2, 7] {
                let o = random_eulerian_orientation(dim(2), &SamplerConfig::new(seed, steps)).unwrap();
                assert!(is_directed_square(&o));
            }
        }
        assert!(random_eulerian_orientation(dim(5), &SamplerConfig::new(0, 1)).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_moves() {
        let d6 = dim(6);
        let cfg = SamplerConfig::with_default_steps(42, d6);
        let a = random_eulerian_orientation(d6, &cfg).unwrap();
        let b = random_eulerian_orientation(d6, &cfg).unwrap();
        assert_eq!(a.to_bytes(), b.to_bytes());
        assert_ne!(a, euler_tour_orientation(d6).unwrap());
        let c = random_eulerian_orientation(d6, &SamplerConfig::new(43, cfg.steps)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn chain_emits_eulerian_orientations() {
        let cfg = SamplerConfig::new(7, 50);
        let samples: Vec<_> = EulerianChain::new(dim(6), &cfg).unwrap().take(20).collect();
        assert!(samples.iter().all(Orientation::is_eulerian));
        let again: Vec<_> = EulerianChain::new(dim(6), &cfg).unwrap().take(20).collect();
        assert_eq!(samples, again);
    }

    #[test]
    fn enumeration_guards_and_small_count() {
        let mut seen = Vec::new();
        let n = enumerate_eulerian_orientations(dim(2), |o| seen.push(o.clone())).unwrap();
        assert_eq!(n, 2);
        assert!(seen.iter().all(is_directed_square));
        assert_ne!(seen[0], seen[1]);
        assert!(matches!(
            enumerate_eulerian_orientations(dim(6), |_| {}),
            Err(CubeError::Infeasible(_))
        ));
        assert_eq!(
            enumerate_eulerian_orientations(dim(3), |_| {}),
            Err(CubeError::NotEulerian(3))
        );
    }

    #[test]
    fn inductive_base_case_is_the_fixed_square() {
        let o = inductive_good_orientation(1).unwrap();
        for (u, v) in [(0, 1), (1, 3), (3, 2), (2, 0)] {
            assert!(o.has_arc(u, v));
        }
        assert!(inductive_good_orientation(0).is_err());
        assert!(inductive_good_orientation(6).is_err());
    }

    #[test]
    fn inductive_construction_recurses_on_subcubes() {
        for k in 2..=MAX_INDUCTIVE_K {
            let big = inductive_good_orientation(k).unwrap();
            let small = inductive_good_orientation(k - 1).unwrap();
            assert!(big.is_eulerian());
            let low = 2 * (k - 1);
            for copy in 0..4u32 {
                for e in edges(small.dim()) {
                    let lifted = EdgeId {
                        base: e.base | copy << low,
                        dim: e.dim,
                    };
                    assert_eq!(big.direction(lifted), small.direction(e));
                }
            }
        }
    }

    #[test]
    fn q2_eulerian_search_finds_nothing() {
        assert_eq!(find_smooth_not_strongly_connected(dim(2), &SamplerConfig::new(0, 10)), None);
        // Even d: every smooth orientation is Eulerian, hence strongly connected.
        assert_eq!(find_smooth_not_strongly_connected(dim(4), &SamplerConfig::new(0, 20)), None);
    }

    #[test]
    fn q3_and_q5_counterexamples() {
        let w3 = find_smooth_not_strongly_connected(dim(3), &SamplerConfig::new(0, 0)).unwrap();
        assert!(w3.is_smooth());
        assert!(!strongly_connected(&w3, &NodeSet::empty(dim(3))).unwrap());

        let w5 = find_smooth_not_strongly_connected(dim(5), &SamplerConfig::new(3, 200)).unwrap();
        assert!(w5.is_smooth());
        assert!(!strongly_connected(&w5, &NodeSet::empty(dim(5))).unwrap());
    }

    #[test]
    fn q1_single_edge_is_a_counterexample() {
        let w = find_smooth_not_strongly_connected(dim(1), &SamplerConfig::new(0, 0)).unwrap();
        assert!(w.is_smooth());
    }
}
