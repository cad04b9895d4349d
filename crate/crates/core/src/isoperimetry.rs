//! Vertex-isoperimetric tools for hypercubes.
//!
//! `b_v(m, Q_n)` is the least exterior-neighbourhood size of an `m`-node set
//! in `Q_n`. Harper's formula evaluates it from the cascade representation of
//! `m`; two independent oracles (subset brute force and direct measurement of
//! a simplicial segment) check it. Colex segments and lower shadows cover the
//! Kruskal–Katona side, and the remaining functions check the expansion
//! inequalities needed for strong connectivity of Eulerian orientations.
//!
//! Subsets of `{1, ..., n}` are bitmasks with element `e` at bit `e - 1`, so
//! colex order is numeric order of the masks.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cube::{Dim, NodeSet};
use crate::error::{CubeError, Result};

/// Binomials are tabulated for `n <= MAX_BINOMIAL_N`.
pub const MAX_BINOMIAL_N: u32 = 64;

/// Largest ambient dimension for cascade representations (`2^n - 1` must fit).
pub const MAX_CASCADE_N: u32 = 63;

pub const MAX_BRUTEFORCE_DIM: u32 = 4;
pub const MAX_THEOREM1_K: u32 = 8;
pub const MAX_FACTS_K: u32 = 6;

fn pascal() -> &'static [Vec<u64>] {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(MAX_BINOMIAL_N as usize + 1);
        for n in 0..=MAX_BINOMIAL_N as usize {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                // C(64, 32) < 2^61, so the table itself never overflows.
                row[k] = rows[n - 1][k - 1]
                    .checked_add(rows[n - 1][k])
                    .expect("binomial table overflow");
            }
            rows.push(row);
        }
        rows
    })
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Result<u64> {
    if n > MAX_BINOMIAL_N {
        return Err(CubeError::Overflow("binomial"));
    }
    Ok(if k > n { 0 } else { pascal()[n as usize][k as usize] })
}

fn c(n: u32, k: u32) -> u64 {
    binomial(n, k).expect("binomial argument within table")
}

/// Greedy decomposition `rem = sum_j C(m_j, j)` from `j = top` downward,
/// `m_j` maximal at each step. Returns `(m_j, j)` pairs, `j` descending.
fn greedy_cascade(mut rem: u64, top: u32) -> Vec<(u32, u32)> {
    let mut terms = Vec::new();
    let mut j = top;
    while rem > 0 && j >= 1 {
        let mut y = j;
        while y < MAX_BINOMIAL_N && c(y + 1, j) <= rem {
            y += 1;
        }
        terms.push((y, j));
        rem -= c(y, j);
        j -= 1;
    }
    debug_assert_eq!(rem, 0);
    terms
}

/// `m = sum_{i=r+1}^{n} C(n, i) + m'` with `0 < m' <= C(n, r)`, and
/// `m' = sum_{j=s}^{r} C(m_j, j)` with `1 <= s <= m_s < ... < m_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeRepresentation {
    pub m: u64,
    pub n: u32,
    pub r: u32,
    pub m_prime: u64,
    /// `(m_j, j)` for `j = r` down to `s`.
    pub terms: Vec<(u32, u32)>,
    pub s: u32,
}

impl CascadeRepresentation {
    /// Re-sums the representation; equals `m` for a valid one.
    pub fn reconstruct(&self) -> u64 {
        let full: u64 = (self.r + 1..=self.n).map(|i| c(self.n, i)).sum();
        let partial: u64 = self.terms.iter().map(|&(mj, j)| c(mj, j)).sum();
        full + partial
    }

    /// `sum_j C(m_j, j - 1)`.
    pub fn shadow(&self) -> u64 {
        self.terms.iter().map(|&(mj, j)| c(mj, j - 1)).sum()
    }

    fn is_well_formed(&self) -> bool {
        let strictly_increasing = self.terms.windows(2).all(|w| w[1].0 < w[0].0);
        let indices_ok = self
            .terms
            .iter()
            .enumerate()
            .all(|(i, &(mj, j))| j == self.r - i as u32 && mj >= j);
        strictly_increasing
            && indices_ok
            && self.s >= 1
            && self.m_prime >= 1
            && self.m_prime <= c(self.n, self.r)
    }
}

fn check_n(n: u32) -> Result<()> {
    if (1..=MAX_CASCADE_N).contains(&n) {
        Ok(())
    } else {
        Err(CubeError::invalid(format!(
            "ambient dimension must be in 1..={MAX_CASCADE_N}, got {n}"
        )))
    }
}

fn check_m(m: u64, n: u32) -> Result<()> {
    check_n(n)?;
    let top = (1u64 << n) - 1;
    if (1..=top).contains(&m) {
        Ok(())
    } else {
        Err(CubeError::invalid(format!("m must be in 1..={top}, got {m}")))
    }
}

/// The unique representation of `m` used by Harper's formula: `r` is the
/// largest index with `m <= sum_{i=r}^{n} C(n, i)`, then `m'` is decomposed
/// greedily starting at index `r`.
pub fn cascade_representation(m: u64, n: u32) -> Result<CascadeRepresentation> {
    check_m(m, n)?;
    let mut above = 0u64; // sum_{i=r+1}^{n} C(n, i)
    let mut r = n;
    while above + c(n, r) < m {
        above += c(n, r);
        r -= 1;
    }
    let m_prime = m - above;
    let terms = greedy_cascade(m_prime, r);
    let s = terms.last().map(|&(_, j)| j).unwrap_or(r);
    let rep = CascadeRepresentation {
        m,
        n,
        r,
        m_prime,
        terms,
        s,
    };
    debug_assert!(rep.is_well_formed());
    debug_assert_eq!(rep.reconstruct(), m);
    Ok(rep)
}

/// `b_v(m, Q_n) = C(n, r) - m' + sum_j C(m_j, j - 1)`.
pub fn harper_bv(m: u64, n: u32) -> Result<u64> {
    let rep = cascade_representation(m, n)?;
    Ok(c(n, rep.r) - rep.m_prime + rep.shadow())
}

/// `1 + m(4k - m - 1)/2`, the value of `b_v(m, Q_{2k})` for `m <= 2k + 1`.
pub fn phi_small_m(m: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(CubeError::invalid("k must be positive"));
    }
    let k = k as u64;
    if !(1..=2 * k + 1).contains(&m) {
        return Err(CubeError::invalid(format!("m must be in 1..={}, got {m}", 2 * k + 1)));
    }
    Ok(1 + m * (4 * k - m - 1) / 2)
}

/// `b_v(m, Q_d)` by scanning every `m`-subset. Limited to `d <= 4`.
pub fn bv_bruteforce(m: u64, dim: Dim) -> Result<u64> {
    if dim.get() > MAX_BRUTEFORCE_DIM {
        return Err(CubeError::infeasible(format!(
            "subset brute force limited to d <= {MAX_BRUTEFORCE_DIM}, got d = {dim}"
        )));
    }
    check_m(m, dim.get())?;
    let nodes = dim.node_count() as u32;
    let all = (1u64 << nodes) - 1;
    // low[i]: nodes with bit i clear, as a mask over node indices.
    let low: Vec<u64> = (0..dim.get())
        .map(|i| (0..nodes).filter(|v| v >> i & 1 == 0).fold(0, |acc, v| acc | 1 << v))
        .collect();
    let mut best = u64::MAX;
    let mut set = (1u64 << m) - 1;
    while set <= all {
        let mut reach = 0u64;
        for (i, &lo) in low.iter().enumerate() {
            let stride = 1u32 << i;
            reach |= (set & lo) << stride | (set & !lo) >> stride;
        }
        best = best.min((reach & !set).count_ones() as u64);
        // Gosper's hack: next mask with the same popcount.
        let lowest = set & set.wrapping_neg();
        let ripple = set + lowest;
        set = (((ripple ^ set) >> 2) / lowest) | ripple;
    }
    Ok(best)
}

/// First `m` nodes of `Q_d` in simplicial order: whole weight levels from
/// `d` downward, then the colex-first nodes of the partial level.
pub fn simplicial_segment(m: u64, dim: Dim) -> Result<NodeSet> {
    let rep = cascade_representation(m, dim.get())?;
    let mut set = NodeSet::empty(dim);
    let mut partial = rep.m_prime;
    for v in 0..dim.node_count() as u32 {
        let w = v.count_ones();
        if w > rep.r {
            set.insert(v);
        } else if w == rep.r && partial > 0 {
            // Nodes of one weight visited in increasing order are in colex order.
            set.insert(v);
            partial -= 1;
        }
    }
    Ok(set)
}

/// `|N(S)|` for the simplicial segment of size `m`; an upper bound on
/// `b_v(m, Q_d)` that Harper's theorem says is tight.
pub fn bv_hamming_ball(m: u64, dim: Dim) -> Result<u64> {
    Ok(simplicial_segment(m, dim)?.neighborhood().len() as u64)
}

/// A subset of `{1, ..., 64}`, ordered colexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankedSubset {
    bits: u64,
}

impl RankedSubset {
    pub fn from_bits(bits: u64) -> Self {
        RankedSubset { bits }
    }

    pub fn from_elements(elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if !(1..=64).contains(&e) {
                return Err(CubeError::invalid(format!("element {e} outside 1..=64")));
            }
            if bits >> (e - 1) & 1 == 1 {
                return Err(CubeError::invalid(format!("element {e} repeated")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(RankedSubset { bits })
    }

    /// Checks the declared level against the element count.
    pub fn with_level(elements: &[u32], level: u32) -> Result<Self> {
        let s = Self::from_elements(elements)?;
        if s.level() != level {
            return Err(CubeError::invalid(format!(
                "{s} has {} elements, declared level {level}",
                s.level()
            )));
        }
        Ok(s)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn level(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn elements(self) -> Vec<u32> {
        (0..64).filter(|i| self.bits >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=64).contains(&e) && self.bits >> (e - 1) & 1 == 1
    }
}

impl fmt::Display for RankedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RankedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_level_count(m_prime: u64, r: u32, n: u32) -> Result<()> {
    check_n(n)?;
    if r > n {
        return Err(CubeError::invalid(format!("level {r} exceeds n = {n}")));
    }
    let cap = c(n, r);
    if !(1..=cap).contains(&m_prime) {
        return Err(CubeError::invalid(format!(
            "m' must be in 1..={cap} for level {r} of {n}, got {m_prime}"
        )));
    }
    Ok(())
}

/// The first `m_prime` `r`-subsets of `{1, ..., n}` in colex order.
pub fn colex_initial_segment(m_prime: u64, r: u32, n: u32) -> Result<Vec<RankedSubset>> {
    check_level_count(m_prime, r, n)?;
    let mut out = Vec::with_capacity(m_prime as usize);
    let mut set = (1u64 << r) - 1;
    for _ in 0..m_prime {
        out.push(RankedSubset { bits: set });
        if set == 0 {
            break;
        }
        let lowest = set & set.wrapping_neg();
        let ripple = set.wrapping_add(lowest);
        set = (((ripple ^ set) >> 2) / lowest) | ripple;
    }
    Ok(out)
}

/// All `(i-1)`-subsets of members of `family`, in colex order. Every member
/// must have the same size `i >= 1`.
pub fn lower_shadow(family: &[RankedSubset]) -> Result<Vec<RankedSubset>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let level = first.level();
    if level == 0 {
        return Err(CubeError::invalid("the empty set has no lower shadow"));
    }
    if let Some(odd) = family.iter().find(|a| a.level() != level) {
        return Err(CubeError::invalid(format!(
            "mixed levels: {first} has {level} elements, {odd} has {}",
            odd.level()
        )));
    }
    let mut shadow: Vec<RankedSubset> = family
        .iter()
        .flat_map(|a| {
            let bits = a.bits;
            (0..64)
                .filter(move |i| bits >> i & 1 == 1)
                .map(move |i| RankedSubset {
                    bits: bits & !(1 << i),
                })
        })
        .collect();
    shadow.sort_unstable();
    shadow.dedup();
    Ok(shadow)
}

/// Size of the lower shadow of the first `m_prime` `r`-sets in colex order,
/// `sum_j C(m_j, j - 1)` over the `r`-cascade of `m_prime`.
pub fn shadow_size(m_prime: u64, r: u32, n: u32) -> Result<u64> {
    check_level_count(m_prime, r, n)?;
    if r == 0 {
        return Err(CubeError::invalid("level 0 has no lower shadow"));
    }
    Ok(greedy_cascade(m_prime, r)
        .into_iter()
        .map(|(mj, j)| c(mj, j - 1))
        .sum())
}

/// For `r >= k + 1` the colex shadow is strictly larger than the segment.
pub fn check_claim6(m_prime: u64, r: u32, k: u32) -> Result<bool> {
    if k == 0 || 2 * k > MAX_CASCADE_N {
        return Err(CubeError::invalid(format!("k out of range: {k}")));
    }
    if r < k + 1 || r > 2 * k {
        return Err(CubeError::invalid(format!(
            "level r must satisfy k + 1 <= r <= 2k, got r = {r}, k = {k}"
        )));
    }
    Ok(shadow_size(m_prime, r, 2 * k)? > m_prime)
}

/// Degrees in the bipartite subgraph of `Q_n` between a colex segment
/// `M'` of level `r` and its lower shadow `S'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowDegrees {
    pub segment_len: usize,
    pub shadow_len: usize,
    /// Least and greatest number of `S'` neighbours of an `M'` node.
    pub segment_min: u32,
    pub segment_max: u32,
    /// Greatest number of `M'` neighbours of an `S'` node.
    pub shadow_max: u32,
}

pub fn shadow_degrees(m_prime: u64, r: u32, n: u32) -> Result<ShadowDegrees> {
    let segment = colex_initial_segment(m_prime, r, n)?;
    let shadow = lower_shadow(&segment)?;
    let in_segment: HashSet<u64> = segment.iter().map(|a| a.bits).collect();
    let in_shadow: HashSet<u64> = shadow.iter().map(|b| b.bits).collect();

    let up: Vec<u32> = segment
        .iter()
        .map(|a| {
            (0..n)
                .filter(|&i| a.bits >> i & 1 == 1 && in_shadow.contains(&(a.bits & !(1 << i))))
                .count() as u32
        })
        .collect();
    let down = shadow.iter().map(|b| {
        (0..n)
            .filter(|&i| b.bits >> i & 1 == 0 && in_segment.contains(&(b.bits | 1 << i)))
            .count() as u32
    });
    Ok(ShadowDegrees {
        segment_len: segment.len(),
        shadow_len: shadow.len(),
        segment_min: up.iter().copied().min().unwrap_or(0),
        segment_max: up.iter().copied().max().unwrap_or(0),
        shadow_max: down.max().unwrap_or(0),
    })
}

/// `min(k^2 - 1, (k - 1)(m + 1))`, the neighbourhood size a set of `m`
/// nodes must exceed.
pub fn expansion_bound(m: u64, k: u32) -> u64 {
    let k = k as u64;
    (k * k - 1).min((k - 1) * (m + 1))
}

/// Whether `b_v(m, Q_{2k}) > min(k^2 - 1, (k - 1)(m + 1))` for every
/// `1 <= m <= 2^(2k-1)`.
pub fn check_theorem1_condition(k: u32) -> Result<bool> {
    if !(1..=MAX_THEOREM1_K).contains(&k) {
        return Err(CubeError::infeasible(format!(
            "k must be in 1..={MAX_THEOREM1_K}, got {k}"
        )));
    }
    let half = 1u64 << (2 * k - 1);
    for m in 1..=half {
        if harper_bv(m, 2 * k)? <= expansion_bound(m, k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Individual outcomes of [`verify_facts_3_4`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactsReport {
    pub k: u32,
    /// `2Δ = m(k-m) + (k+1)(m-2) + 6` for `1 <= m <= k`.
    pub small_m_identity: bool,
    /// `2Δ = (2k+1-m)(m-k+1) + (m-1)(k-1) + 2` for `k <= m <= 2k+1`.
    pub large_m_identity: bool,
    /// `φ(m) > min((k-1)(m+1), (k-1)(k+1))` for `1 <= m <= 2k+1`.
    pub small_sets: bool,
    /// `φ(m) > (k-1)(k+1)` for `2k+2 <= m <= 2^(2k-1)`.
    pub large_sets: bool,
}

impl FactsReport {
    pub fn holds(&self) -> bool {
        self.small_m_identity && self.large_m_identity && self.small_sets && self.large_sets
    }
}

pub fn facts_3_4_report(k: u32) -> Result<FactsReport> {
    if !(1..=MAX_FACTS_K).contains(&k) {
        return Err(CubeError::infeasible(format!(
            "k must be in 1..={MAX_FACTS_K}, got {k}"
        )));
    }
    let ki = k as i64;
    let two_delta = |m: u64, subtrahend: i64| -> Result<i64> {
        Ok(2 * phi_small_m(m, k)? as i64 - 2 * subtrahend)
    };

    let mut small_m_identity = true;
    for m in 1..=k as u64 {
        let mi = m as i64;
        let expanded = 2 + mi * (4 * ki - mi - 1) - 2 * (ki - 1) * (mi + 1);
        let factored = mi * (ki - mi) + (ki + 1) * (mi - 2) + 6;
        let direct = two_delta(m, (ki - 1) * (mi + 1))?;
        small_m_identity &= expanded == factored && factored == direct;
    }

    let mut large_m_identity = true;
    for m in k as u64..=2 * k as u64 + 1 {
        let mi = m as i64;
        let expanded = 2 + mi * (4 * ki - mi - 1) - 2 * (ki - 1) * (ki + 1);
        let factored = (2 * ki + 1 - mi) * (mi - ki + 1) + (mi - 1) * (ki - 1) + 2;
        let direct = two_delta(m, (ki - 1) * (ki + 1))?;
        large_m_identity &= expanded == factored && factored == direct;
    }

    let k64 = k as u64;
    let mut small_sets = true;
    for m in 1..=2 * k64 + 1 {
        let bound = ((k64 - 1) * (m + 1)).min((k64 - 1) * (k64 + 1));
        small_sets &= phi_small_m(m, k)? > bound;
    }

    let mut large_sets = true;
    for m in 2 * k64 + 2..=1u64 << (2 * k - 1) {
        large_sets &= harper_bv(m, 2 * k)? > (k64 - 1) * (k64 + 1);
    }

    Ok(FactsReport {
        k,
        small_m_identity,
        large_m_identity,
        small_sets,
        large_sets,
    })
}

/// Both `2Δ` identities as exact integers, and the two neighbourhood
/// inequalities over their ranges.
pub fn verify_facts_3_4(k: u32) -> Result<bool> {
    Ok(facts_3_4_report(k)?.holds())
}

/// `sum_{i<k} C(2k, i) = sum_{i>k} C(2k, i)` and `2α + C(2k, k) = 2^(2k)`.
pub fn level_symmetry_holds(k: u32) -> Result<bool> {
    if k == 0 || 2 * k > MAX_CASCADE_N {
        return Err(CubeError::invalid(format!("k out of range: {k}")));
    }
    let n = 2 * k;
    let below: u64 = (0..k).map(|i| c(n, i)).sum();
    let above: u64 = (k + 1..=n).map(|i| c(n, i)).sum();
    Ok(below == above && 2 * below + c(n, k) == 1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    fn set(elements: &[u32]) -> RankedSubset {
        RankedSubset::from_elements(elements).unwrap()
    }

    #[test]
    fn binomial_table_edges() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(6, 4).unwrap(), 15);
        assert_eq!(binomial(4, 5).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert_eq!(binomial(65, 1), Err(CubeError::Overflow("binomial")));
    }

    #[test]
    fn cascade_worked_example() {
        let rep = cascade_representation(17, 6).unwrap();
        assert_eq!((rep.r, rep.m_prime, rep.s), (4, 10, 2));
        assert_eq!(rep.terms, vec![(5, 4), (4, 3), (2, 2)]);
    }

    #[test]
    fn cascade_small_examples() {
        let one = cascade_representation(1, 4).unwrap();
        assert_eq!((one.r, one.m_prime, one.terms.clone()), (4, 1, vec![(4, 4)]));
        let eight = cascade_representation(8, 4).unwrap();
        assert_eq!((eight.r, eight.m_prime, eight.terms.clone()), (2, 3, vec![(3, 2)]));
        assert_eq!(eight.reconstruct(), 8);
    }

    #[test]
    fn cascade_range_errors() {
        assert!(cascade_representation(0, 4).is_err());
        assert!(cascade_representation(16, 4).is_err());
        assert!(cascade_representation(15, 4).is_ok());
        assert!(cascade_representation(1, 0).is_err());
        assert!(cascade_representation(1, 64).is_err());
    }

    #[test]
    fn harper_examples() {
        assert_eq!(harper_bv(1, 4).unwrap(), 4);
        assert_eq!(harper_bv(17, 6).unwrap(), 23);
        assert_eq!(harper_bv(8, 4).unwrap(), 6);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_small_m(1, 2).unwrap(), 4);
        assert_eq!(phi_small_m(5, 2).unwrap(), 6);
        assert_eq!(phi_small_m(7, 3).unwrap(), 15);
        assert!(phi_small_m(0, 2).is_err());
        assert!(phi_small_m(6, 2).is_err());
        assert!(phi_small_m(1, 0).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(bv_bruteforce(1, dim(4)).unwrap(), 4);
        assert_eq!(bv_bruteforce(3, dim(4)).unwrap(), 7);
        assert_eq!(bv_bruteforce(8, dim(4)).unwrap(), 6);
        assert!(matches!(bv_bruteforce(3, dim(6)), Err(CubeError::Infeasible(_))));
        assert!(bv_bruteforce(16, dim(4)).is_err());
    }

    #[test]
    fn hamming_ball_examples() {
        assert_eq!(bv_hamming_ball(1, dim(6)).unwrap(), 6);
        assert_eq!(bv_hamming_ball(17, dim(6)).unwrap(), 23);
        assert_eq!(bv_hamming_ball(8, dim(4)).unwrap(), 6);
        assert_eq!(simplicial_segment(17, dim(6)).unwrap().len(), 17);
    }

    #[test]
    fn colex_examples() {
        assert_eq!(
            colex_initial_segment(3, 2, 4).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );
        assert_eq!(colex_initial_segment(1, 3, 5).unwrap(), vec![set(&[1, 2, 3])]);
        let full = colex_initial_segment(6, 2, 4).unwrap();
        assert_eq!(full.len(), 6);
        assert_eq!(full.last().copied(), Some(set(&[3, 4])));
        assert!(full.windows(2).all(|w| w[0] < w[1]));
        assert!(colex_initial_segment(7, 2, 4).is_err());
        assert!(colex_initial_segment(0, 2, 4).is_err());
        assert_eq!(colex_initial_segment(1, 0, 4).unwrap(), vec![set(&[])]);
    }

    #[test]
    fn lower_shadow_examples() {
        let a = [set(&[1, 2]), set(&[1, 3]), set(&[2, 3])];
        assert_eq!(lower_shadow(&a).unwrap(), vec![set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(
            lower_shadow(&[set(&[1, 2, 3])]).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );
        assert!(lower_shadow(&[set(&[1]), set(&[1, 2])]).is_err());
        assert!(lower_shadow(&[set(&[])]).is_err());
        assert!(lower_shadow(&[]).unwrap().is_empty());
    }

    #[test]
    fn shadow_size_examples() {
        assert_eq!(shadow_size(10, 4, 6).unwrap(), 18);
        let seg = colex_initial_segment(10, 4, 6).unwrap();
        assert_eq!(lower_shadow(&seg).unwrap().len(), 18);
        assert_eq!(shadow_size(1, 5, 8).unwrap(), 5);
        assert_eq!(shadow_size(3, 2, 4).unwrap(), 3);
    }

    #[test]
    fn claim6_examples() {
        assert!(check_claim6(10, 4, 3).unwrap());
        for k in 1..=5 {
            assert!(check_claim6(1, k + 1, k).unwrap());
        }
        assert!(check_claim6(1, 3, 3).is_err());
        assert!(check_claim6(0, 4, 3).is_err());
    }

    #[test]
    fn ranked_subset_level_is_checked() {
        assert!(RankedSubset::with_level(&[1, 4], 2).is_ok());
        assert!(RankedSubset::with_level(&[1, 4], 3).is_err());
        assert!(RankedSubset::from_elements(&[0]).is_err());
        assert!(RankedSubset::from_elements(&[2, 2]).is_err());
        assert_eq!(set(&[3, 1]).to_string(), "{1,3}");
    }

    #[test]
    fn theorem1_condition_small_k() {
        for k in 1..=3 {
            assert!(check_theorem1_condition(k).unwrap());
        }
        assert!(check_theorem1_condition(0).is_err());
        assert!(check_theorem1_condition(9).is_err());
    }

    #[test]
    fn facts_identity_plug_in() {
        // k = 3, m = 2: 2Δ = 2*1 + 4*0 + 6 = 8; direct: 2*φ(2) - 2*(2*3) = 2*10 - 12.
        assert_eq!(phi_small_m(2, 3).unwrap(), 10);
        let r = facts_3_4_report(3).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(verify_facts_3_4(2).unwrap());
        assert!(verify_facts_3_4(7).is_err());
    }

    #[test]
    fn level_symmetry() {
        for k in 1..=10 {
            assert!(level_symmetry_holds(k).unwrap());
        }
    }
}
