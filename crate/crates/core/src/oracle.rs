//! Exhaustive reference implementations.
//!
//! Everything here is exponential and guarded by a vertex cap so that an
//! accidental call on a large graph fails fast instead of running for
//! hours. The subset scans run on `u64` masks, so the cap never exceeds 64.
//! Subsets are visited by popcount and then by increasing mask value, which
//! makes every reported witness deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::cw::{DpTuple, Label};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet};
use crate::reductions::Bigraph;
use crate::result::{Algorithm, Problem, SolveResult};

pub const DEFAULT_CAP: usize = 20;
pub const DEFAULT_TREEDEPTH_CAP: usize = 14;
/// Default bound on the number of subsets [`solution_within_bf`] inspects.
pub const DEFAULT_SUBSET_LIMIT: u128 = 50_000_000;

const MASK_BITS: usize = 64;

/// Brute-force configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    pub cap: usize,
    pub treedepth_cap: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            cap: DEFAULT_CAP,
            treedepth_cap: DEFAULT_TREEDEPTH_CAP,
        }
    }
}

impl BruteForce {
    pub fn with_cap(cap: usize) -> Self {
        BruteForce {
            cap,
            ..BruteForce::default()
        }
    }

    fn check(&self, n: usize, cap: usize) -> Result<()> {
        let cap = cap.min(MASK_BITS);
        if n > cap {
            Err(Error::CapExceeded { n, cap })
        } else {
            Ok(())
        }
    }

    /// Minimum safe set (`problem = SafeSet`) or connected safe set.
    ///
    /// Disconnected graphs are solved per component; the smallest result
    /// wins and ties go to the component with the smallest vertex.
    pub fn solve(&self, g: &Graph, problem: Problem) -> Result<SolveResult> {
        self.check(g.n(), self.cap)?;
        let mut best: Option<VertexSet> = None;
        for comp in graph::components(g, &g.vertices())? {
            let (h, map) = g.induced_subgraph(&comp);
            let mg = MaskGraph::new(&h);
            let limit = best.as_ref().map_or(h.n(), |b| b.len() - 1);
            'sizes: for r in 1..=limit {
                for mask in SubsetsOfSize::new(h.n(), r) {
                    if mg.satisfies(mask, problem) {
                        best = Some(lift(g.n(), &map, mask));
                        break 'sizes;
                    }
                }
            }
        }
        Ok(best.map_or(SolveResult::infeasible(Algorithm::Oracle), |w| {
            SolveResult::found(Algorithm::Oracle, w)
        }))
    }

    pub fn safe_number(&self, g: &Graph) -> Result<SolveResult> {
        self.solve(g, Problem::SafeSet)
    }

    pub fn connected_safe_number(&self, g: &Graph) -> Result<SolveResult> {
        self.solve(g, Problem::ConnectedSafeSet)
    }

    /// Treedepth through the recursive definition, memoized on subsets.
    pub fn treedepth(&self, g: &Graph) -> Result<usize> {
        self.check(g.n(), self.treedepth_cap)?;
        let mg = MaskGraph::new(g);
        let mut memo = vec![0u8; 1usize << g.n()];
        Ok(treedepth_of(&mg, mg.full, &mut memo) as usize)
    }

    pub fn vertex_cover_number(&self, g: &Graph) -> Result<usize> {
        self.check(g.n(), self.cap)?;
        let edges: Vec<u64> = g.edges().map(|(u, v)| (1u64 << u) | (1u64 << v)).collect();
        for r in 0..=g.n() {
            if SubsetsOfSize::new(g.n(), r).any(|mask| edges.iter().all(|&e| e & mask != 0)) {
                return Ok(r);
            }
        }
        unreachable!("the whole vertex set is a cover")
    }

    /// Smallest dominating set of size at most `k`, if one exists.
    pub fn dominating_set(&self, g: &Graph, k: usize) -> Result<SolveResult> {
        self.check(g.n(), self.cap)?;
        let mg = MaskGraph::new(g);
        let closed: Vec<u64> = (0..g.n()).map(|v| mg.adj[v] | (1u64 << v)).collect();
        for r in 0..=k.min(g.n()) {
            for mask in SubsetsOfSize::new(g.n(), r) {
                if bits(mask).fold(0u64, |acc, v| acc | closed[v]) == mg.full {
                    let w = VertexSet::from_members(g.n(), bits(mask))?;
                    return Ok(SolveResult::found(Algorithm::Oracle, w));
                }
            }
        }
        Ok(SolveResult::infeasible(Algorithm::Oracle))
    }

    /// Smallest vertex set (at least the terminals) avoiding `forbidden`
    /// that induces a connected subgraph, by subset scan over the
    /// non-terminal vertices.
    pub fn steiner(&self, g: &Graph, terminals: &VertexSet, forbidden: &VertexSet) -> Result<Option<VertexSet>> {
        self.check(g.n(), self.cap)?;
        if terminals.is_empty() {
            return Err(Error::EmptyTerminals);
        }
        if let Some(v) = terminals.first_common(forbidden) {
            return Err(Error::Overlap(v));
        }
        let mg = MaskGraph::new(g);
        let term = to_mask(terminals);
        let free: Vec<usize> = (0..g.n())
            .filter(|&v| !terminals.contains(v) && !forbidden.contains(v))
            .collect();
        for r in 0..=free.len() {
            for pick in SubsetsOfSize::new(free.len(), r) {
                let mask = bits(pick).fold(term, |acc, i| acc | (1u64 << free[i]));
                if mg.is_connected(mask) {
                    return Ok(Some(VertexSet::from_members(g.n(), bits(mask))?));
                }
            }
        }
        Ok(None)
    }
}

pub fn safe_number_bf(g: &Graph) -> Result<SolveResult> {
    BruteForce::default().safe_number(g)
}

pub fn connected_safe_number_bf(g: &Graph) -> Result<SolveResult> {
    BruteForce::default().connected_safe_number(g)
}

pub fn treedepth_bf(g: &Graph) -> Result<usize> {
    BruteForce::default().treedepth(g)
}

pub fn vertex_cover_bf(g: &Graph) -> Result<usize> {
    BruteForce::default().vertex_cover_number(g)
}

pub fn dominating_set_bf(g: &Graph, k: usize) -> Result<SolveResult> {
    BruteForce::default().dominating_set(g, k)
}

pub fn steiner_bf(g: &Graph, terminals: &VertexSet, forbidden: &VertexSet) -> Result<Option<VertexSet>> {
    BruteForce::default().steiner(g, terminals, forbidden)
}

/// Smallest red-blue dominating set of size at most `k`, as blue indices.
pub fn red_blue_dominating_set_bf(bg: &Bigraph, k: usize) -> Option<Vec<usize>> {
    let mut covers = vec![0u64; bg.blue()];
    for &(r, b) in bg.edges() {
        covers[b] |= 1u64 << r;
    }
    let all = low_bits(bg.red());
    (0..=k.min(bg.blue())).find_map(|r| {
        SubsetsOfSize::new(bg.blue(), r)
            .find(|&mask| bits(mask).fold(0u64, |acc, b| acc | covers[b]) == all)
            .map(|mask| bits(mask).collect())
    })
}

/// Smallest solution of size at most `k`, for graphs beyond the mask cap.
///
/// On a connected graph every vertex of degree at least `2k` lies in every
/// safe set of size at most `k` (otherwise it sits in a component of
/// `G - S` with more than `k` vertices), so those vertices are fixed and
/// only the remaining ones are enumerated. Disconnected graphs are handled
/// per component. Fails if more than `limit` subsets would be inspected.
pub fn solution_within_bf(g: &Graph, k: usize, problem: Problem, limit: u128) -> Result<SolveResult> {
    let mut best: Option<VertexSet> = None;
    for comp in graph::components(g, &g.vertices())? {
        let (h, map) = g.induced_subgraph(&comp);
        let budget = best.as_ref().map_or(k, |b| b.len() - 1).min(h.n());
        if budget == 0 {
            continue;
        }
        let forced: Vec<usize> = (0..h.n()).filter(|&v| h.neighbors(v).len() >= 2 * budget).collect();
        if forced.len() > budget {
            continue;
        }
        let free: Vec<usize> = (0..h.n()).filter(|v| !forced.contains(v)).collect();
        let extra = budget - forced.len();
        let count: u128 = (0..=extra).map(|j| binomial(free.len() as u128, j as u128)).sum();
        if count > limit {
            return Err(Error::SearchTooLarge { count, limit });
        }
        let base = VertexSet::from_members(h.n(), forced.iter().copied())?;
        let found = (0..=extra).find_map(|j| {
            Combinations::new(free.len(), j).find_map(|pick| {
                let mut s = base.clone();
                for i in pick {
                    s.insert(free[i]);
                }
                graph::satisfies(&h, &s, problem).then_some(s)
            })
        });
        if let Some(s) = found {
            best = Some(VertexSet::from_members(g.n(), s.iter().map(|v| map[v]))?);
        }
    }
    Ok(best.map_or(SolveResult::infeasible(Algorithm::Oracle), |w| {
        SolveResult::found(Algorithm::Oracle, w)
    }))
}

/// The seven-function tuple of `s` on a labeled graph, computed straight
/// from the components of `G[S]` and `G - S`.
///
/// `labels[v]` is the label of `v`, in `1..=c`.
pub fn dp_tuple_bf(g: &Graph, labels: &[Label], c: usize, s: &VertexSet) -> DpTuple {
    let inside = graph::components(g, s).expect("set matches graph");
    let outside = graph::components(g, &s.complement()).expect("set matches graph");
    let label_set = |comp: &VertexSet| comp.iter().fold(0usize, |acc, v| acc | (1 << (labels[v] - 1)));
    let mut t = DpTuple::empty(c);
    let inside: Vec<(usize, usize, &VertexSet)> = inside.iter().map(|comp| (label_set(comp), comp.len(), comp)).collect();
    let outside: Vec<(usize, usize, &VertexSet)> =
        outside.iter().map(|comp| (label_set(comp), comp.len(), comp)).collect();
    for &(l, size, _) in &inside {
        t.set_num(l, t.num(l) + size as i32);
        t.set_smllst(l, t.smllst(l).min(size as i32));
    }
    for &(l, size, _) in &outside {
        t.set_bnum(l, t.bnum(l) + size as i32);
        t.set_lrgst(l, t.lrgst(l).max(size as i32));
    }
    for &(l1, c_size, c_set) in &inside {
        for &(l2, d_size, d_set) in &outside {
            if graph::sets_adjacent(g, c_set, d_set).expect("disjoint") {
                let (c_size, d_size) = (c_size as i32, d_size as i32);
                t.set_asmllst(l1, l2, t.asmllst(l1, l2).min(c_size));
                t.set_alrgst(l1, l2, t.alrgst(l1, l2).max(d_size));
                t.set_mindiff(l1, l2, t.mindiff(l1, l2).min(c_size - d_size));
            }
        }
    }
    t
}

fn lift(n: usize, map: &[usize], mask: u64) -> VertexSet {
    VertexSet::from_members(n, bits(mask).map(|i| map[i])).expect("mapped ids are in range")
}

fn to_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |acc, v| acc | (1u64 << v))
}

fn low_bits(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Adjacency masks of a graph with at most 64 vertices.
struct MaskGraph {
    adj: Vec<u64>,
    full: u64,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        assert!(g.n() <= MASK_BITS);
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | (1u64 << w)))
            .collect();
        MaskGraph {
            adj,
            full: low_bits(g.n()),
        }
    }

    fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0u64, |acc, v| acc | self.adj[v])
    }

    fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let grown = (comp | self.neighborhood(frontier)) & within;
            frontier = grown & !comp;
            comp = grown;
        }
        comp
    }

    fn components(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let comp = self.component_of(rest.trailing_zeros() as usize, within);
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn is_connected(&self, set: u64) -> bool {
        set != 0 && self.component_of(set.trailing_zeros() as usize, set) == set
    }

    fn satisfies(&self, s: u64, problem: Problem) -> bool {
        if s == 0 {
            return false;
        }
        let inside = self.components(s);
        if problem.is_connected() && inside.len() != 1 {
            return false;
        }
        let outside = self.components(self.full & !s);
        inside.iter().all(|&c| {
            let reach = self.neighborhood(c);
            outside
                .iter()
                .all(|&d| reach & d == 0 || c.count_ones() >= d.count_ones())
        })
    }
}

fn treedepth_of(mg: &MaskGraph, set: u64, memo: &mut [u8]) -> u8 {
    if set == 0 {
        return 0;
    }
    if set.count_ones() == 1 {
        return 1;
    }
    if memo[set as usize] != 0 {
        return memo[set as usize];
    }
    let comps = mg.components(set);
    let value = if comps.len() > 1 {
        comps.iter().map(|&c| treedepth_of(mg, c, memo)).max().unwrap_or(0)
    } else {
        1 + bits(set)
            .map(|v| treedepth_of(mg, set & !(1u64 << v), memo))
            .min()
            .unwrap_or(0)
    };
    memo[set as usize] = value;
    value
}

/// All `r`-subsets of `0..n` as masks, in increasing numeric order.
struct SubsetsOfSize {
    next: Option<u64>,
    limit: u64,
}

impl SubsetsOfSize {
    fn new(n: usize, r: usize) -> Self {
        assert!(n <= MASK_BITS);
        let next = if r > n {
            None
        } else if r == 0 {
            Some(0)
        } else {
            Some(low_bits(r))
        };
        SubsetsOfSize { next, limit: low_bits(n) }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            // Gosper's hack, done in u128 so the top bit cannot overflow.
            let c = current as u128;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let next = (((ripple ^ c) >> 2) / low) | ripple;
            (next <= self.limit as u128).then_some(next as u64)
        };
        Some(current)
    }
}

/// Lexicographic `r`-combinations of `0..n` as index vectors.
struct Combinations {
    current: Option<Vec<usize>>,
    n: usize,
}

impl Combinations {
    fn new(n: usize, r: usize) -> Self {
        Combinations {
            current: (r <= n).then(|| (0..r).collect()),
            n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let r = out.len();
        let mut idx = out.clone();
        let mut i = r;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if idx[i] < self.n - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                self.current = Some(idx);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn subset_order_is_by_popcount_then_value() {
        let masks: Vec<u64> = SubsetsOfSize::new(4, 2).collect();
        assert_eq!(masks, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(SubsetsOfSize::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(SubsetsOfSize::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(SubsetsOfSize::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(5, 3).count(), 10);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn safe_numbers_of_named_graphs() {
        let star3 = star(3);
        let r = safe_number_bf(&star3).unwrap();
        assert_eq!((r.size, r.witness.unwrap()), (1, set(4, &[0])));
        assert_eq!(safe_number_bf(&cycle(8)).unwrap().size, 4);
        assert_eq!(connected_safe_number_bf(&cycle(8)).unwrap().size, 4);
        assert_eq!(connected_safe_number_bf(&star3).unwrap().size, 1);
        let p4 = safe_number_bf(&path(4)).unwrap();
        assert_eq!((p4.size, p4.witness.unwrap()), (2, set(4, &[0, 1])));
    }

    #[test]
    fn c8_with_antipodal_apex() {
        // Frozen from an independent subset scan: N[apex] = {0, 4, 8}.
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend([(8, 0), (8, 4)]);
        let g = Graph::from_edges(9, &edges).unwrap();
        assert_eq!(safe_number_bf(&g).unwrap().size, 3);
        let r = connected_safe_number_bf(&g).unwrap();
        assert_eq!(r.size, 3);
        assert!(graph::is_connected_safe_set(&g, &set(9, &[0, 4, 8])).unwrap());
    }

    #[test]
    fn disconnected_graphs_use_the_best_component() {
        // P4 plus an isolated edge: the edge has safe number 1.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 5)]).unwrap();
        let r = safe_number_bf(&g).unwrap();
        assert_eq!((r.size, r.witness.unwrap()), (1, set(6, &[4])));
        assert!(!safe_number_bf(&Graph::new(0)).unwrap().feasible);
    }

    #[test]
    fn cap_is_enforced() {
        let g = path(21);
        assert_eq!(safe_number_bf(&g), Err(Error::CapExceeded { n: 21, cap: 20 }));
        assert!(BruteForce::with_cap(21).safe_number(&g).is_ok());
        assert!(treedepth_bf(&path(15)).is_err());
    }

    #[test]
    fn treedepth_values() {
        assert_eq!(treedepth_bf(&Graph::new(1)).unwrap(), 1);
        assert_eq!(treedepth_bf(&Graph::new(5)).unwrap(), 1);
        assert_eq!(treedepth_bf(&path(4)).unwrap(), 3);
        assert_eq!(treedepth_bf(&path(7)).unwrap(), 3);
        assert_eq!(treedepth_bf(&complete(5)).unwrap(), 5);
    }

    #[test]
    fn vertex_cover_values() {
        assert_eq!(vertex_cover_bf(&cycle(8)).unwrap(), 4);
        assert_eq!(vertex_cover_bf(&star(3)).unwrap(), 1);
        assert_eq!(vertex_cover_bf(&Graph::new(4)).unwrap(), 0);
    }

    #[test]
    fn dominating_set_values() {
        let r = dominating_set_bf(&star(3), 1).unwrap();
        assert_eq!(r.witness, Some(set(4, &[0])));
        assert!(!dominating_set_bf(&cycle(8), 2).unwrap().feasible);
        assert_eq!(dominating_set_bf(&cycle(8), 3).unwrap().size, 3);
    }

    #[test]
    fn steiner_scan() {
        let c8 = cycle(8);
        let r = steiner_bf(&c8, &set(8, &[0, 4]), &set(8, &[2])).unwrap();
        assert_eq!(r, Some(set(8, &[0, 4, 5, 6, 7])));
        let none = steiner_bf(&c8, &set(8, &[0, 4]), &set(8, &[2, 6])).unwrap();
        assert_eq!(none, None);
        assert_eq!(
            steiner_bf(&c8, &VertexSet::new(8), &VertexSet::new(8)),
            Err(Error::EmptyTerminals)
        );
    }

    #[test]
    fn bounded_search_matches_full_scan() {
        for g in [cycle(8), path(7), star(5), complete_bipartite(2, 4)] {
            let full = safe_number_bf(&g).unwrap();
            let within = solution_within_bf(&g, full.size, Problem::SafeSet, DEFAULT_SUBSET_LIMIT).unwrap();
            assert_eq!(within.size, full.size);
            let below = solution_within_bf(&g, full.size - 1, Problem::SafeSet, DEFAULT_SUBSET_LIMIT).unwrap();
            assert!(!below.feasible);
        }
        assert!(matches!(
            solution_within_bf(&path(60), 10, Problem::SafeSet, 1000),
            Err(Error::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn red_blue_domination() {
        let bg = Bigraph::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(red_blue_dominating_set_bf(&bg, 1), None);
        assert_eq!(red_blue_dominating_set_bf(&bg, 2), Some(vec![0, 1]));
        let shared = Bigraph::new(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        assert_eq!(red_blue_dominating_set_bf(&shared, 1), Some(vec![0]));
    }
}
