//! Graphs, vertex sets and the verifiers every solver is checked against.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::result::Problem;

/// A subset of the vertices `0..universe` of some host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Builds a set from members, rejecting ids outside `0..universe`.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut set = VertexSet::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe(), "vertex {v} outside universe {}", self.universe());
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.contains(v);
        if present {
            self.bits.set(v, false);
        }
        present
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Smallest common member, if any.
    pub fn first_common(&self, other: &VertexSet) -> Option<usize> {
        self.bits.intersection(&other.bits).next()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edge_iter(n, edges.iter().copied())
    }

    pub fn from_edge_iter<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = if u < w[0] { (u, w[0]) } else { (w[0], u) };
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted open neighborhood. Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `N[v]`, including `v` itself.
    pub fn neighbors_closed(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut set = VertexSet::new(self.n());
        set.insert(v);
        for &w in &self.adj[v] {
            set.insert(w);
        }
        Ok(set)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && component_labels(self, &self.vertices()).1.len() == 1
    }

    /// The subgraph induced by `within`, with vertices renumbered in
    /// increasing order; the returned map sends new ids to old ids.
    pub fn induced_subgraph(&self, within: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = within.iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); map.len()];
        let mut m = 0;
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    if index[w] > i {
                        m += 1;
                    }
                }
            }
        }
        (Graph { adj, m }, map)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.n(),
                found: s.universe(),
            })
        }
    }
}

pub(crate) const NO_COMPONENT: u32 = u32::MAX;

/// Labels the components of `g[within]`, numbered by smallest member.
/// Vertices outside `within` get [`NO_COMPONENT`].
pub(crate) fn component_labels(g: &Graph, within: &VertexSet) -> (Vec<u32>, Vec<usize>) {
    let mut label = vec![NO_COMPONENT; g.n()];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in within.iter() {
        if label[start] != NO_COMPONENT {
            continue;
        }
        let id = sizes.len() as u32;
        label[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if label[w] == NO_COMPONENT && within.contains(w) {
                    label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    (label, sizes)
}

fn labels_to_sets(n: usize, label: &[u32], count: usize) -> Vec<VertexSet> {
    let mut sets = vec![VertexSet::new(n); count];
    for (v, &l) in label.iter().enumerate() {
        if l != NO_COMPONENT {
            sets[l as usize].insert(v);
        }
    }
    sets
}

/// Connected components of `g[within]`, ordered by smallest member.
pub fn components(g: &Graph, within: &VertexSet) -> Result<Vec<VertexSet>> {
    g.check_set(within)?;
    let (label, sizes) = component_labels(g, within);
    Ok(labels_to_sets(g.n(), &label, sizes.len()))
}

/// Whether some edge joins `a` and `b`. The sets must be disjoint.
pub fn sets_adjacent(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<bool> {
    g.check_set(a)?;
    g.check_set(b)?;
    if let Some(v) = a.first_common(b) {
        return Err(Error::Overlap(v));
    }
    Ok(a.iter().any(|u| g.neighbors(u).iter().any(|&w| b.contains(w))))
}

/// Why a vertex set fails to be a (connected) safe set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SafetyViolation {
    Empty,
    /// Only reported when a connected safe set was asked for.
    Disconnected { components: usize },
    /// `component` of `G[S]` is adjacent to the strictly larger `neighbor`
    /// of `G - S`.
    LargerNeighbor { component: VertexSet, neighbor: VertexSet },
}

/// First reason `s` is not a solution of `problem`, or `None` if it is.
///
/// For unsafe sets the reported pair is the one with the smallest
/// component index of `G[S]`, then of `G - S`.
pub fn find_violation(g: &Graph, s: &VertexSet, problem: Problem) -> Result<Option<SafetyViolation>> {
    g.check_set(s)?;
    if s.is_empty() {
        return Ok(Some(SafetyViolation::Empty));
    }
    let (in_label, in_sizes) = component_labels(g, s);
    if problem.is_connected() && in_sizes.len() != 1 {
        return Ok(Some(SafetyViolation::Disconnected {
            components: in_sizes.len(),
        }));
    }
    let rest = s.complement();
    let (out_label, out_sizes) = component_labels(g, &rest);
    let mut worst: Option<(u32, u32)> = None;
    for u in s.iter() {
        let cu = in_label[u];
        for &w in g.neighbors(u) {
            let dw = out_label[w];
            if dw != NO_COMPONENT && in_sizes[cu as usize] < out_sizes[dw as usize] {
                let pair = (cu, dw);
                if worst.is_none_or(|best| pair < best) {
                    worst = Some(pair);
                }
            }
        }
    }
    Ok(worst.map(|(c, d)| {
        let n = g.n();
        let mut component = VertexSet::new(n);
        let mut neighbor = VertexSet::new(n);
        for v in 0..n {
            if in_label[v] == c {
                component.insert(v);
            }
            if out_label[v] == d {
                neighbor.insert(v);
            }
        }
        SafetyViolation::LargerNeighbor { component, neighbor }
    }))
}

/// Fast check used on solver hot paths; `s` must match `g`.
pub(crate) fn satisfies(g: &Graph, s: &VertexSet, problem: Problem) -> bool {
    if s.is_empty() {
        return false;
    }
    let (in_label, in_sizes) = component_labels(g, s);
    if problem.is_connected() && in_sizes.len() != 1 {
        return false;
    }
    let (out_label, out_sizes) = component_labels(g, &s.complement());
    s.iter().all(|u| {
        let size = in_sizes[in_label[u] as usize];
        g.neighbors(u).iter().all(|&w| {
            let d = out_label[w];
            d == NO_COMPONENT || size >= out_sizes[d as usize]
        })
    })
}

/// Whether `s` is a safe set of `g`. The empty set is never safe.
pub fn is_safe_set(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(satisfies(g, s, Problem::SafeSet))
}

pub fn is_connected_safe_set(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(satisfies(g, s, Problem::ConnectedSafeSet))
}

/// Verifier for either problem.
pub fn is_solution(g: &Graph, s: &VertexSet, problem: Problem) -> Result<bool> {
    g.check_set(s)?;
    Ok(satisfies(g, s, problem))
}

/// An ordered sequence of bags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition { bags }
    }

    /// The one-bag decomposition `[V]`.
    pub fn trivial(g: &Graph) -> Self {
        PathDecomposition {
            bags: vec![(0..g.n()).collect()],
        }
    }
}

/// First violated condition of a path decomposition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    VertexOutOfRange { bag: usize, vertex: usize },
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    /// `vertex` occurs in `first` and `later` but not in `gap` between them.
    NotContiguous {
        vertex: usize,
        first: usize,
        gap: usize,
        later: usize,
    },
}

/// Checks the three path-decomposition conditions in order (vertex cover,
/// edge cover, contiguity) and returns the maximum bag size on success.
///
/// The returned value is the largest `|X_i|`, one more than the usual
/// width.
pub fn validate_path_decomposition(
    g: &Graph,
    pd: &PathDecomposition,
) -> core::result::Result<usize, DecompositionViolation> {
    let n = g.n();
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut max_bag = 0;
    for (b, bag) in pd.bags.iter().enumerate() {
        let mut in_bag = 0;
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::VertexOutOfRange { bag: b, vertex: v });
            }
            if occurrences[v].last() != Some(&b) {
                occurrences[v].push(b);
                in_bag += 1;
            }
        }
        max_bag = max_bag.max(in_bag);
    }
    if let Some(v) = (0..n).find(|&v| occurrences[v].is_empty()) {
        return Err(DecompositionViolation::UncoveredVertex(v));
    }
    for (u, v) in g.edges() {
        if !sorted_intersect(&occurrences[u], &occurrences[v]) {
            return Err(DecompositionViolation::UncoveredEdge(u, v));
        }
    }
    for (v, occ) in occurrences.iter().enumerate() {
        if let Some(w) = occ.windows(2).find(|w| w[1] != w[0] + 1) {
            return Err(DecompositionViolation::NotContiguous {
                vertex: v,
                first: w[0],
                gap: w[0] + 1,
                later: w[1],
            });
        }
    }
    Ok(max_bag)
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::from_edge_iter(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edge_iter(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edge_iter(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edge_iter(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edge_iter(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(n, members.iter().copied()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn components_of_partial_path() {
        let g = path(4);
        let comps = components(&g, &set(4, &[0, 1, 3])).unwrap();
        assert_eq!(comps, vec![set(4, &[0, 1]), set(4, &[3])]);
        assert!(components(&g, &VertexSet::new(4)).unwrap().is_empty());
    }

    #[test]
    fn components_of_cycle_minus_two_pairs() {
        let g = cycle(8);
        let within = set(8, &[0, 1, 4, 5]).complement();
        let comps = components(&g, &within).unwrap();
        assert_eq!(comps, vec![set(8, &[2, 3]), set(8, &[6, 7])]);
    }

    #[test]
    fn components_rejects_foreign_sets() {
        let g = path(4);
        assert!(matches!(
            components(&g, &VertexSet::new(5)),
            Err(Error::UniverseMismatch { .. })
        ));
        assert!(VertexSet::from_members(4, [4]).is_err());
    }

    #[test]
    fn adjacency_between_sets() {
        let g = cycle(8);
        assert!(sets_adjacent(&g, &set(8, &[0, 1]), &set(8, &[2, 3])).unwrap());
        assert!(!sets_adjacent(&g, &set(8, &[0, 1]), &set(8, &[4, 5])).unwrap());
        assert!(!sets_adjacent(&g, &set(8, &[0, 1]), &VertexSet::new(8)).unwrap());
        assert_eq!(
            sets_adjacent(&g, &set(8, &[0, 1]), &set(8, &[1, 2])),
            Err(Error::Overlap(1))
        );
    }

    #[test]
    fn safe_set_examples() {
        let star3 = star(3);
        assert!(is_safe_set(&star3, &set(4, &[0])).unwrap());
        assert!(is_connected_safe_set(&star3, &set(4, &[0])).unwrap());
        assert!(!is_safe_set(&star3, &VertexSet::new(4)).unwrap());

        let c8 = cycle(8);
        assert!(is_safe_set(&c8, &set(8, &[0, 1, 4, 5])).unwrap());
        assert!(!is_connected_safe_set(&c8, &set(8, &[0, 1, 4, 5])).unwrap());
        assert!(is_connected_safe_set(&c8, &set(8, &[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn no_three_vertices_of_c8_are_safe() {
        let c8 = cycle(8);
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    assert!(!is_safe_set(&c8, &set(8, &[a, b, c])).unwrap(), "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn violation_reports_pair() {
        let c8 = cycle(8);
        let v = find_violation(&c8, &set(8, &[0]), Problem::SafeSet).unwrap();
        assert_eq!(
            v,
            Some(SafetyViolation::LargerNeighbor {
                component: set(8, &[0]),
                neighbor: set(8, &[1, 2, 3, 4, 5, 6, 7]),
            })
        );
        let v = find_violation(&c8, &set(8, &[0, 1, 4, 5]), Problem::ConnectedSafeSet).unwrap();
        assert_eq!(v, Some(SafetyViolation::Disconnected { components: 2 }));
        assert_eq!(
            find_violation(&c8, &VertexSet::new(8), Problem::SafeSet).unwrap(),
            Some(SafetyViolation::Empty)
        );
    }

    #[test]
    fn degrees_and_closed_neighborhoods() {
        assert_eq!(star(3).max_degree(), 3);
        let c8 = cycle(8);
        assert!((0..8).all(|v| c8.degree(v).unwrap() == 2));
        assert_eq!(path(4).neighbors_closed(1).unwrap(), set(4, &[0, 1, 2]));
        assert!(path(4).degree(4).is_err());
        assert!(path(4).neighbors_closed(9).is_err());
    }

    #[test]
    fn graph_construction_errors() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = cycle(6);
        let (h, map) = g.induced_subgraph(&set(6, &[1, 2, 3, 5]));
        assert_eq!(map, vec![1, 2, 3, 5]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(h.m(), 2);
    }

    #[test]
    fn path_decomposition_examples() {
        let p3 = path(3);
        let ok = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(validate_path_decomposition(&p3, &ok), Ok(2));
        let bad = PathDecomposition::new(vec![vec![0, 1], vec![2]]);
        assert_eq!(
            validate_path_decomposition(&p3, &bad),
            Err(DecompositionViolation::UncoveredEdge(1, 2))
        );
        let tri = complete(3);
        assert_eq!(
            validate_path_decomposition(&tri, &PathDecomposition::new(vec![vec![0, 1, 2]])),
            Ok(3)
        );
    }

    #[test]
    fn path_decomposition_violations_in_order() {
        let p3 = path(3);
        let missing = PathDecomposition::new(vec![vec![0, 1]]);
        assert_eq!(
            validate_path_decomposition(&p3, &missing),
            Err(DecompositionViolation::UncoveredVertex(2))
        );
        let gap = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2], vec![0]]);
        assert_eq!(
            validate_path_decomposition(&p3, &gap),
            Err(DecompositionViolation::NotContiguous {
                vertex: 0,
                first: 0,
                gap: 1,
                later: 3
            })
        );
        let oob = PathDecomposition::new(vec![vec![0, 7]]);
        assert_eq!(
            validate_path_decomposition(&p3, &oob),
            Err(DecompositionViolation::VertexOutOfRange { bag: 0, vertex: 7 })
        );
    }
}
