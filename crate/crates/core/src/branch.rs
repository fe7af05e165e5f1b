//! Exact solver parameterized by solution size.
//!
//! For a total size `s` the solver guesses how the solution splits into
//! components of sizes `k_1 >= ... >= k_l` and grows one partial set per
//! component. While some vertex outside the partial sets sits in a
//! component that is too large for the sets it touches, a small connected
//! set around it must meet the solution, and the search branches on which
//! vertex joins which part. At the leaves each part is completed to a
//! connected set of exactly its size by a minimum Steiner tree.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{self, component_labels, Graph, VertexSet};
use crate::preprocess::bfs_prefix;
use crate::result::{Algorithm, Problem, SolveResult};

/// Minimum connected vertex set containing `terminals` and avoiding
/// `forbidden`, or `None` when the terminals are separated in
/// `g - forbidden`.
///
/// Dreyfus-Wagner dynamic program over terminal subsets with unit vertex
/// weights: `3^t` subset splits per vertex plus one shortest-path pass per
/// subset.
pub fn steiner_exact(g: &Graph, terminals: &VertexSet, forbidden: &VertexSet) -> Result<Option<VertexSet>> {
    g.check_set(terminals)?;
    g.check_set(forbidden)?;
    if let Some(v) = terminals.first_common(forbidden) {
        return Err(Error::Overlap(v));
    }
    let term = terminals.to_vec();
    if term.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    if term.len() >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParameter(alloc::format!("{} terminals is too many", term.len())));
    }
    let n = g.n();
    let t = term.len();
    let full = (1usize << t) - 1;
    let mut cost = vec![vec![u32::MAX; n]; full + 1];
    let mut how = vec![vec![Step::None; n]; full + 1];
    for (i, &v) in term.iter().enumerate() {
        cost[1 << i][v] = 1;
        how[1 << i][v] = Step::Terminal;
    }
    for mask in 1..=full {
        if mask.count_ones() > 1 {
            for v in 0..n {
                if forbidden.contains(v) {
                    continue;
                }
                // Proper submasks containing the lowest terminal, so each
                // split is tried once.
                let low = mask & mask.wrapping_neg();
                let mut a = (mask - 1) & mask;
                while a > 0 {
                    if a & low != 0 {
                        let (x, y) = (cost[a][v], cost[mask ^ a][v]);
                        if x != u32::MAX && y != u32::MAX && x + y - 1 < cost[mask][v] {
                            cost[mask][v] = x + y - 1;
                            how[mask][v] = Step::Split(a);
                        }
                    }
                    a = (a - 1) & mask;
                }
            }
        }
        relax(g, forbidden, &mut cost[mask], &mut how[mask]);
    }
    if cost[full][term[0]] == u32::MAX {
        return Ok(None);
    }
    let mut tree = VertexSet::new(n);
    let mut stack = vec![(full, term[0])];
    while let Some((mask, v)) = stack.pop() {
        tree.insert(v);
        match how[mask][v] {
            Step::None => unreachable!("reachable states have a recorded step"),
            Step::Terminal => {}
            Step::Split(a) => {
                stack.push((a, v));
                stack.push((mask ^ a, v));
            }
            Step::From(u) => stack.push((mask, u)),
        }
    }
    debug_assert_eq!(tree.len() as u32, cost[full][term[0]]);
    Ok(Some(tree))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    None,
    Terminal,
    Split(usize),
    From(usize),
}

/// Shortest paths with unit vertex weights from every finite entry.
fn relax(g: &Graph, forbidden: &VertexSet, cost: &mut [u32], how: &mut [Step]) {
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> =
        (0..cost.len()).filter(|&v| cost[v] != u32::MAX).map(|v| Reverse((cost[v], v))).collect();
    while let Some(Reverse((c, v))) = heap.pop() {
        if c > cost[v] {
            continue;
        }
        for &w in g.neighbors(v) {
            if !forbidden.contains(w) && c + 1 < cost[w] {
                cost[w] = c + 1;
                how[w] = Step::From(v);
                heap.push(Reverse((c + 1, w)));
            }
        }
    }
}

/// Partial solution: one set per guessed component, with its target size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchState {
    pub parts: Vec<VertexSet>,
    pub targets: Vec<usize>,
    pub depth: usize,
}

impl BranchState {
    pub fn new(n: usize, targets: Vec<usize>) -> Self {
        BranchState {
            parts: vec![VertexSet::new(n); targets.len()],
            targets,
            depth: 0,
        }
    }

    /// Union of all parts.
    pub fn union(&self) -> VertexSet {
        let mut s = self.parts[0].clone();
        for p in &self.parts[1..] {
            s.union_with(p);
        }
        s
    }
}

/// The smallest vertex outside the parts whose component in `G - S` has
/// more than `k` vertices, or more than `k_i` vertices while touching part
/// `i`, with the smallest such bound.
pub fn find_problematic(g: &Graph, state: &BranchState, k: usize) -> Option<(usize, usize)> {
    let s = state.union();
    let (label, sizes) = component_labels(g, &s.complement());
    (0..g.n()).filter(|&u| !s.contains(u)).find_map(|u| {
        let size = sizes[label[u] as usize];
        let touching = state
            .parts
            .iter()
            .zip(&state.targets)
            .filter(|(p, &ki)| size > ki && g.neighbors(u).iter().any(|&w| p.contains(w)))
            .map(|(_, &ki)| ki)
            .min();
        match (size > k, touching) {
            (_, Some(m)) => Some((u, m)),
            (true, None) => Some((u, k)),
            (false, None) => None,
        }
    })
}

/// The first `m + 1` vertices of a breadth-first search from `u` in
/// `G - S`.
pub fn expand_set(g: &Graph, u: usize, m: usize, s: &VertexSet) -> VertexSet {
    let order = bfs_prefix(g, u, &s.complement(), m + 1);
    debug_assert_eq!(order.len(), m + 1);
    VertexSet::from_members(g.n(), order).expect("vertices of g")
}

/// Totals `s = 1..=k` are tried in order and the first verified solution is
/// returned. Disconnected graphs are solved per component.
pub fn branch_solve(g: &Graph, k: usize, problem: Problem) -> Result<SolveResult> {
    if k < 1 {
        return Err(Error::InvalidParameter(alloc::format!("solution size bound must be at least 1, got {k}")));
    }
    let mut best = SolveResult::infeasible(Algorithm::Branch);
    for comp in graph::components(g, &g.vertices())? {
        let budget = if best.feasible { best.size - 1 } else { k };
        let (h, map) = g.induced_subgraph(&comp);
        if let Some(local) = solve_connected(&h, budget.min(h.n()), problem) {
            let w = VertexSet::from_members(g.n(), local.iter().map(|v| map[v]))?;
            best = best.min_with(SolveResult::found(Algorithm::Branch, w));
        }
    }
    Ok(best)
}

fn solve_connected(g: &Graph, k: usize, problem: Problem) -> Option<VertexSet> {
    (1..=k).find_map(|s| {
        let shapes = match problem {
            Problem::SafeSet => partitions(s),
            Problem::ConnectedSafeSet => vec![vec![s]],
        };
        shapes
            .into_iter()
            .find_map(|shape| search(g, s, BranchState::new(g.n(), shape), problem))
    })
}

/// Partitions of `s` into non-increasing positive parts, fewest parts first.
fn partitions(s: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, s, &mut Vec::new(), &mut out);
    out.sort_by_key(Vec::len);
    out
}

fn search(g: &Graph, s: usize, state: BranchState, problem: Problem) -> Option<VertexSet> {
    let placed = state.union();
    let forced = find_problematic(g, &state, s);
    let (candidates, allowed): (Vec<usize>, Vec<usize>) = match forced {
        Some((u, m)) => (bfs_prefix(g, u, &placed.complement(), m + 1), (0..state.parts.len()).collect()),
        None => match state.parts.iter().position(VertexSet::is_empty) {
            None => return complete(g, &state, problem),
            // Nothing forces a vertex into this part, yet the component it
            // stands for lies outside `S`: try every vertex.
            Some(i) => (placed.complement().to_vec(), vec![i]),
        },
    };
    for &w in &candidates {
        for &i in &allowed {
            if state.parts[i].len() >= state.targets[i] {
                continue;
            }
            // Empty parts of equal target are interchangeable.
            if state.parts[i].is_empty()
                && (0..i).any(|j| state.parts[j].is_empty() && state.targets[j] == state.targets[i])
            {
                continue;
            }
            let mut next = state.clone();
            next.parts[i].insert(w);
            next.depth += 1;
            if let Some(found) = search(g, s, next, problem) {
                return Some(found);
            }
        }
    }
    None
}

/// Completes every part with a Steiner tree avoiding the other parts, pads
/// it to its target size and checks the union.
fn complete(g: &Graph, state: &BranchState, problem: Problem) -> Option<VertexSet> {
    let placed = state.union();
    let mut solution = VertexSet::new(g.n());
    for (part, &target) in state.parts.iter().zip(&state.targets) {
        let others = placed.difference(part);
        let mut tree = steiner_exact(g, part, &others).expect("valid Steiner instance")?;
        if tree.len() > target {
            return None;
        }
        pad(g, &mut tree, &others, target)?;
        solution.union_with(&tree);
    }
    let ok = graph::satisfies(g, &solution, problem);
    debug_assert!(ok, "completed leaf fails verification: {solution:?}");
    ok.then_some(solution)
}

/// Adds the smallest-id neighbor outside `blocked` until `set` has `target`
/// vertices.
fn pad(g: &Graph, set: &mut VertexSet, blocked: &VertexSet, target: usize) -> Option<()> {
    while set.len() < target {
        let next = set
            .iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&w| !set.contains(w) && !blocked.contains(w))
            .min()?;
        set.insert(next);
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn steiner_examples() {
        let g = path(4);
        let none = VertexSet::new(4);
        assert_eq!(steiner_exact(&g, &set(4, &[2]), &none).unwrap(), Some(set(4, &[2])));
        assert_eq!(steiner_exact(&g, &set(4, &[0, 3]), &none).unwrap(), Some(set(4, &[0, 1, 2, 3])));
        let c8 = cycle(8);
        assert_eq!(
            steiner_exact(&c8, &set(8, &[0, 4]), &set(8, &[2])).unwrap(),
            Some(set(8, &[0, 4, 5, 6, 7]))
        );
        assert_eq!(steiner_exact(&c8, &set(8, &[0, 4]), &set(8, &[2, 6])).unwrap(), None);
        assert_eq!(steiner_exact(&c8, &VertexSet::new(8), &none_of(8)), Err(Error::EmptyTerminals));
        assert_eq!(steiner_exact(&c8, &set(8, &[1]), &set(8, &[1])), Err(Error::Overlap(1)));
    }

    fn none_of(n: usize) -> VertexSet {
        VertexSet::new(n)
    }

    #[test]
    fn steiner_uses_a_shared_hub() {
        let s = star(4);
        assert_eq!(steiner_exact(&s, &set(5, &[1, 2, 3]), &none_of(5)).unwrap(), Some(set(5, &[0, 1, 2, 3])));
    }

    #[test]
    fn problematic_examples() {
        let g = path(10);
        let st = BranchState::new(10, vec![2]);
        assert_eq!(find_problematic(&g, &st, 2), Some((0, 2)));

        let c8 = cycle(8);
        let mut st = BranchState::new(8, vec![4]);
        st.parts[0].insert(0);
        assert_eq!(find_problematic(&c8, &st, 4), Some((1, 4)));

        let mut st = BranchState::new(8, vec![4]);
        for v in [0, 1, 4, 5] {
            st.parts[0].insert(v);
        }
        assert_eq!(find_problematic(&c8, &st, 4), None);
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_set(&path(10), 0, 2, &VertexSet::new(10)), set(10, &[0, 1, 2]));
        assert_eq!(expand_set(&cycle(8), 1, 4, &set(8, &[0])), set(8, &[1, 2, 3, 4, 5]));
        assert_eq!(expand_set(&star(5), 0, 1, &VertexSet::new(6)), set(6, &[0, 1]));
    }

    #[test]
    fn shapes() {
        assert_eq!(partitions(4), [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn solver_values() {
        let r = branch_solve(&star(3), 1, Problem::SafeSet).unwrap();
        assert_eq!(r.witness, Some(set(4, &[0])));
        assert_eq!(branch_solve(&cycle(8), 4, Problem::SafeSet).unwrap().size, 4);
        assert_eq!(branch_solve(&cycle(8), 4, Problem::ConnectedSafeSet).unwrap().size, 4);
        assert!(!branch_solve(&cycle(8), 3, Problem::SafeSet).unwrap().feasible);
        assert_eq!(branch_solve(&Graph::new(1), 1, Problem::SafeSet).unwrap().size, 1);
        assert_eq!(branch_solve(&complete_bipartite(3, 4), 5, Problem::ConnectedSafeSet).unwrap().size, 4);
        assert!(matches!(branch_solve(&cycle(8), 0, Problem::SafeSet), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn disconnected_components() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let r = branch_solve(&g, 3, Problem::SafeSet).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.witness, Some(set(7, &[5])));
        assert!(graph::is_safe_set(&g, r.witness.as_ref().unwrap()).unwrap());
    }
}
