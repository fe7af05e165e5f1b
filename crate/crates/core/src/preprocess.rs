//! Polynomial-time approximation and kernel-style refusal rules.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{self, component_labels, Graph, VertexSet};
use crate::result::{Algorithm, SolveResult};

/// A connected safe set within factor `s(G) + 1` of the safe number.
///
/// For every guess `s` the set starts as a BFS prefix of `s + 1` vertices
/// and then swallows connected `(s + 1)`-sets from oversized neighboring
/// components until every component of `G - S` has at most `s` vertices.
/// The smallest set over all guesses (and all components) is returned.
pub fn approx_safe_set(g: &Graph) -> SolveResult {
    let mut best: Option<VertexSet> = None;
    for comp in graph::components(g, &g.vertices()).expect("full set") {
        for s in 1..=comp.len() {
            let candidate = grow_for_guess(g, &comp, s);
            debug_assert!(graph::satisfies(g, &candidate, crate::Problem::ConnectedSafeSet));
            if best.as_ref().is_none_or(|b| candidate.len() < b.len()) {
                best = Some(candidate);
            }
        }
    }
    best.map_or(SolveResult::infeasible(Algorithm::Approx), |w| {
        SolveResult::found(Algorithm::Approx, w)
    })
}

fn grow_for_guess(g: &Graph, comp: &VertexSet, s: usize) -> VertexSet {
    let start = comp.first().expect("components are non-empty");
    let mut set = VertexSet::new(g.n());
    for v in bfs_prefix(g, start, comp, s + 1) {
        set.insert(v);
    }
    loop {
        let rest = comp.difference(&set);
        let (label, sizes) = component_labels(g, &rest);
        // Oversized components, in order of their smallest vertex.
        let Some(big) = (0..sizes.len()).find(|&c| sizes[c] > s) else {
            return set;
        };
        let seed = rest
            .iter()
            .find(|&v| label[v] == big as u32 && g.neighbors(v).iter().any(|&w| set.contains(w)))
            .expect("every component of a connected graph touches S");
        let mut inside = VertexSet::new(g.n());
        for v in rest.iter().filter(|&v| label[v] == big as u32) {
            inside.insert(v);
        }
        for v in bfs_prefix(g, seed, &inside, s + 1) {
            set.insert(v);
        }
    }
}

/// First `limit` vertices of a BFS from `start` inside `within`, visiting
/// neighbors in increasing order.
pub(crate) fn bfs_prefix(g: &Graph, start: usize, within: &VertexSet, limit: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(limit);
    let mut seen = VertexSet::new(g.n());
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        if order.len() == limit {
            break;
        }
        order.push(v);
        for &w in g.neighbors(v) {
            if within.contains(w) && !seen.contains(w) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Outcome of a refusal rule: either the instance has no solution of the
/// given size, or the rule lets it pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    No(Refusal),
    Pass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refusal {
    /// More than `k` vertices of degree at least `2k`.
    TooManyHighDegree { count: usize, k: usize },
    /// A component of `G - H` has more than `(2k)^(2k)` vertices, where
    /// `H` is the set of vertices of degree at least `2k`.
    ComponentTooLarge { size: usize, bound: u64 },
    /// `|V| > k + k^2 * max_degree`.
    TooManyVertices { n: usize, bound: u64 },
}

/// Result of [`highdegree_rule`]: the verdict and the vertices of degree at
/// least `2k`, which every safe set of size at most `k` must contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighDegree {
    pub verdict: Verdict,
    pub high: VertexSet,
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Refusal rule for connected graphs built on the high-degree argument.
///
/// `H` is the set of vertices of degree at least `2k`. More than `k` of
/// them means no safe set of size `k` exists. Otherwise every component of
/// `G - H` has maximum degree below `2k` and treedepth at most `2k`, which
/// caps its order at `(2k)^(2k)`; a larger component is refused. The bound
/// is computed with checked arithmetic and an overflow lets the test pass.
pub fn highdegree_rule(g: &Graph, k: usize) -> Result<HighDegree> {
    require_connected(g)?;
    let threshold = 2 * k;
    let high = VertexSet::from_members(g.n(), (0..g.n()).filter(|&v| g.neighbors(v).len() >= threshold))?;
    let count = high.len();
    if count > k {
        return Ok(HighDegree {
            verdict: Verdict::No(Refusal::TooManyHighDegree { count, k }),
            high,
        });
    }
    let bound = u32::try_from(threshold)
        .ok()
        .and_then(|e| (threshold as u64).checked_pow(e));
    let largest = component_labels(g, &high.complement()).1.into_iter().max().unwrap_or(0);
    let verdict = match bound {
        Some(bound) if largest as u64 > bound => Verdict::No(Refusal::ComponentTooLarge { size: largest, bound }),
        _ => Verdict::Pass,
    };
    Ok(HighDegree { verdict, high })
}

/// Refuses when `|V| > k + k^2 * max_degree`, since then `s(G) > k`.
pub fn degree_bound_check(g: &Graph, k: usize) -> Result<Verdict> {
    require_connected(g)?;
    let k64 = k as u64;
    let bound = k64
        .checked_mul(k64)
        .and_then(|sq| sq.checked_mul(g.max_degree() as u64))
        .and_then(|x| x.checked_add(k64));
    Ok(match bound {
        Some(bound) if g.n() as u64 > bound => Verdict::No(Refusal::TooManyVertices { n: g.n(), bound }),
        _ => Verdict::Pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_safe_set;

    #[test]
    fn approximation_examples() {
        let r = approx_safe_set(&star(3));
        assert!(r.size <= 2);
        assert!(is_safe_set(&star(3), r.witness.as_ref().unwrap()).unwrap());

        let c8 = cycle(8);
        let r = approx_safe_set(&c8);
        assert!(r.size <= 20);
        assert!(graph::is_connected_safe_set(&c8, r.witness.as_ref().unwrap()).unwrap());

        let p4 = path(4);
        let r = approx_safe_set(&p4);
        assert!(r.size <= 6);
        assert!(is_safe_set(&p4, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn approximation_on_disconnected_graph() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = approx_safe_set(&g);
        assert!(is_safe_set(&g, r.witness.as_ref().unwrap()).unwrap());
        assert_eq!(r.size, 2);
        assert!(!approx_safe_set(&Graph::new(0)).feasible);
    }

    #[test]
    fn bfs_prefix_order() {
        let g = path(10);
        assert_eq!(bfs_prefix(&g, 0, &g.vertices(), 3), [0, 1, 2]);
        assert_eq!(bfs_prefix(&g, 4, &g.vertices(), 3), [4, 3, 5]);
        assert_eq!(bfs_prefix(&g, 0, &set(10, &[0, 1]), 5), [0, 1]);
    }

    #[test]
    fn high_degree_rule_examples() {
        let r = highdegree_rule(&star(5), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.high, set(6, &[0]));

        // Two hubs sharing four leaves: both have degree 4 >= 2.
        let hubs = Graph::from_edges(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(matches!(
            highdegree_rule(&hubs, 1).unwrap().verdict,
            Verdict::No(Refusal::TooManyHighDegree { count, k: 1 }) if count >= 2
        ));

        let r = highdegree_rule(&cycle(8), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.high.is_empty());
    }

    #[test]
    fn high_degree_rule_component_bound() {
        // Five isolated leaves remain after removing the hub; each one is a
        // tiny component, so the star is not refused.
        assert_eq!(highdegree_rule(&star(5), 1).unwrap().verdict, Verdict::Pass);
        assert!(matches!(
            highdegree_rule(&path(7), 1).unwrap().verdict,
            Verdict::No(Refusal::TooManyHighDegree { count: 5, k: 1 })
        ));
        assert_eq!(
            highdegree_rule(&path(300), 2).unwrap().verdict,
            Verdict::No(Refusal::ComponentTooLarge { size: 300, bound: 256 })
        );
        assert_eq!(highdegree_rule(&path(256), 2).unwrap().verdict, Verdict::Pass);
        assert_eq!(highdegree_rule(&cycle(8), 40).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn degree_bound_examples() {
        assert!(matches!(degree_bound_check(&path(100), 3).unwrap(), Verdict::No(_)));
        assert_eq!(degree_bound_check(&cycle(8), 4).unwrap(), Verdict::Pass);
        assert_eq!(degree_bound_check(&star(9), 1).unwrap(), Verdict::Pass);
        assert_eq!(degree_bound_check(&path(5), usize::MAX).unwrap(), Verdict::Pass);
    }

    #[test]
    fn rules_reject_disconnected_input() {
        let g = Graph::new(2);
        assert_eq!(highdegree_rule(&g, 1), Err(Error::Disconnected));
        assert_eq!(degree_bound_check(&g, 1), Err(Error::Disconnected));
    }
}
