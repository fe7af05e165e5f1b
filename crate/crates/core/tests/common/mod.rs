//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use safeset_core::cw::{CExpression, ExprBuilder, NodeId};
use safeset_core::{Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random spanning tree plus every other edge with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edge_iter(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Any graph on `n` vertices, edges with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_subset(rng: &mut impl Rng, n: usize) -> VertexSet {
    VertexSet::from_members(n, (0..n).filter(|_| rng.gen_bool(0.5))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edge_iter(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edge_iter(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edge_iter(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edge_iter(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edge_iter(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// Paths, cycles, stars, cliques and complete bipartite graphs on at most
/// `max_n` vertices.
pub fn named_graphs(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push((format!("P{n}"), path(n)));
        out.push((format!("K{n}"), complete(n)));
        if n >= 3 {
            out.push((format!("C{n}"), cycle(n)));
        }
        if n >= 2 {
            out.push((format!("S{}", n - 1), star(n - 1)));
        }
        for a in 1..n {
            if a <= n - a {
                out.push((format!("K{a},{}", n - a), complete_bipartite(a, n - a)));
            }
        }
    }
    out
}

/// The named graphs on at most 8 vertices followed by 500 random
/// connected graphs on 1 to 8 vertices, drawn from a fixed seed.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = named_graphs(8);
    let mut r = rng(0x05af_e5e7);
    for i in 0..500 {
        let n = r.gen_range(1..=8);
        let p = [0.1, 0.25, 0.4, 0.6][i % 4];
        out.push((format!("random#{i}"), random_connected(&mut r, n, p)));
    }
    out
}

/// A random expression with at most `c` labels and `leaves` leaves, or
/// `None` if the draw introduced some edge twice.
pub fn try_random_expression(rng: &mut impl Rng, c: usize, leaves: usize) -> Option<CExpression> {
    let mut b = ExprBuilder::new(c).unwrap();
    let root = grow(rng, &mut b, c, leaves);
    let e = b.finish(root).unwrap();
    e.validate_irredundant().ok().map(|_| e)
}

/// Draws until an irredundant expression comes up.
pub fn random_expression(rng: &mut impl Rng, c: usize, leaves: usize) -> CExpression {
    loop {
        if let Some(e) = try_random_expression(rng, c, leaves) {
            return e;
        }
    }
}

fn grow(rng: &mut impl Rng, b: &mut ExprBuilder, c: usize, leaves: usize) -> NodeId {
    let mut t = if leaves == 1 {
        b.leaf(rng.gen_range(1..=c) as u8).unwrap()
    } else {
        let left = rng.gen_range(1..leaves);
        let l = grow(rng, b, c, left);
        let r = grow(rng, b, c, leaves - left);
        b.union(l, r).unwrap()
    };
    if c >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(1..=c) as u8;
            let mut j = rng.gen_range(1..c) as u8;
            if j >= i {
                j += 1;
            }
            t = if rng.gen_bool(0.6) { b.join(i, j, t) } else { b.relabel(i, j, t) }.unwrap();
        }
    }
    t
}
