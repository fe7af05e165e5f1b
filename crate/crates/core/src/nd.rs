//! Exact solver parameterized by neighborhood diversity.
//!
//! Vertices are grouped into twin classes. Since twins are interchangeable,
//! a solution is described up to symmetry by how many vertices it takes
//! from each class. Every class is guessed to be untouched, partially
//! taken or fully taken; the guess fixes which classes merge into common
//! components on either side, and the sizes left open are found by an
//! integer program.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{self, Graph, VertexSet};
use crate::ip::{self, IntegerProgram, Relation};
use crate::result::{Algorithm, Problem, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Clique,
    Independent,
}

/// Partition of the vertices into maximal classes of pairwise twins.
///
/// Classes are ordered by their smallest vertex. A single-vertex class is
/// reported as independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    classes: Vec<Vec<usize>>,
    kinds: Vec<ClassKind>,
    adjacent: Vec<Vec<bool>>,
}

impl TwinPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Members of class `i` in increasing order.
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn kind(&self, i: usize) -> ClassKind {
        self.kinds[i]
    }

    /// Whether every vertex of class `i` is adjacent to every vertex of
    /// class `j`. Always `false` for `i == j`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }
}

/// `N(u) \ {v} == N(v) \ {u}` on sorted adjacency lists.
fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&w| w != v);
    let b = g.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        match classes.iter_mut().find(|c| are_twins(g, c[0], v)) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let kinds = classes
        .iter()
        .map(|c| {
            if c.len() > 1 && g.has_edge(c[0], c[1]) {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            }
        })
        .collect();
    let k = classes.len();
    let mut adjacent = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            adjacent[i][j] = i != j && g.has_edge(classes[i][0], classes[j][0]);
        }
    }
    TwinPartition { classes, kinds, adjacent }
}

/// How a solution meets a twin class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Empty,
    Partial,
    Full,
}

/// One part per twin class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuessPartition(pub Vec<Part>);

impl GuessPartition {
    /// All guesses that leave some class non-empty and never mark a
    /// single-vertex class as partial.
    pub fn enumerate(tp: &TwinPartition) -> impl Iterator<Item = GuessPartition> + '_ {
        let k = tp.len();
        let mut digits = vec![0u8; k];
        let mut done = k == 0;
        core::iter::from_fn(move || loop {
            if done {
                return None;
            }
            let guess = GuessPartition(
                digits
                    .iter()
                    .map(|d| match d {
                        0 => Part::Empty,
                        1 => Part::Partial,
                        _ => Part::Full,
                    })
                    .collect(),
            );
            done = !advance(&mut digits);
            if guess.is_valid(tp) {
                return Some(guess);
            }
        })
    }

    pub fn is_valid(&self, tp: &TwinPartition) -> bool {
        self.0.len() == tp.len()
            && self.0.iter().any(|&p| p != Part::Empty)
            && self.0.iter().enumerate().all(|(i, &p)| p != Part::Partial || tp.class(i).len() > 1)
    }
}

fn advance(digits: &mut [u8]) -> bool {
    for d in digits.iter_mut() {
        if *d < 2 {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Inside the solution.
    Solution,
    /// Outside the solution.
    Complement,
}

/// Classes grouped by the components they form on one side.
///
/// Every family is a maximal set of pairwise reachable classes and yields
/// exactly one component. Each class in `singletons` contributes one
/// single-vertex component per vertex it has on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Families {
    pub families: Vec<Vec<usize>>,
    pub singletons: Vec<usize>,
}

pub fn build_families(tp: &TwinPartition, guess: &GuessPartition, side: Side) -> Families {
    let excluded = match side {
        Side::Solution => Part::Empty,
        Side::Complement => Part::Full,
    };
    let k = tp.len();
    let present: Vec<bool> = guess.0.iter().map(|&p| p != excluded).collect();
    let mut seen = vec![false; k];
    let mut families = Vec::new();
    let mut singletons = Vec::new();
    for start in 0..k {
        if !present[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..k {
                if present[j] && !seen[j] && tp.adjacent(i, j) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        if comp.len() > 1 || tp.kind(start) == ClassKind::Clique {
            families.push(comp);
        } else {
            singletons.push(start);
        }
    }
    Families { families, singletons }
}

/// The integer program for one guess, with the variable layout needed to
/// read back the class counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessProgram {
    pub program: IntegerProgram,
    /// Variable holding the count taken from class `i` is `i`.
    pub classes: usize,
}

/// Builds the program for one guess, or `None` when the guess cannot yield
/// a solution of the requested kind.
///
/// Variables `0..k` are the class counts `x_i`, followed by one `y_j` per
/// solution-side family and one `z_h` per complement-side family.
pub fn assemble_ip(
    tp: &TwinPartition,
    guess: &GuessPartition,
    inside: &Families,
    outside: &Families,
    connected: bool,
) -> Option<GuessProgram> {
    if !guess.is_valid(tp) {
        return None;
    }
    let k = tp.len();
    let size = |i: usize| tp.class(i).len() as i64;
    let total: i64 = (0..k).map(size).sum();
    let mut ip = IntegerProgram::new();
    for (i, &part) in guess.0.iter().enumerate() {
        let (lo, hi) = match part {
            Part::Empty => (0, 0),
            Part::Partial => (1, size(i) - 1),
            Part::Full => (size(i), size(i)),
        };
        ip.add_var(lo, hi, 1);
    }
    if connected {
        match (inside.families.len(), inside.singletons.as_slice()) {
            (1, []) => {}
            (0, &[i]) => ip.add_constraint(vec![(i, 1)], Relation::Eq, 1),
            _ => return None,
        }
    }
    ip.add_constraint((0..k).map(|i| (i, 1)).collect(), Relation::Ge, 1);
    let ys: Vec<usize> = inside
        .families
        .iter()
        .map(|fam| {
            let y = ip.add_var(0, total, 0);
            let mut terms = vec![(y, 1)];
            terms.extend(fam.iter().map(|&i| (i, -1)));
            ip.add_constraint(terms, Relation::Eq, 0);
            y
        })
        .collect();
    let zs: Vec<usize> = outside
        .families
        .iter()
        .map(|fam| {
            let z = ip.add_var(0, total, 0);
            let mut terms = vec![(z, 1)];
            terms.extend(fam.iter().map(|&i| (i, 1)));
            ip.add_constraint(terms, Relation::Eq, fam.iter().map(|&i| size(i)).sum());
            z
        })
        .collect();
    let touching = |a: &[usize], b: &[usize]| {
        a.iter().any(|&i| b.iter().any(|&j| i == j || tp.adjacent(i, j)))
    };
    for (cj, &y) in inside.families.iter().zip(&ys) {
        for (dh, &z) in outside.families.iter().zip(&zs) {
            if touching(cj, dh) {
                ip.add_constraint(vec![(y, 1), (z, -1)], Relation::Ge, 0);
            }
        }
    }
    for &i in &inside.singletons {
        for (dh, &z) in outside.families.iter().zip(&zs) {
            if dh.iter().any(|&j| tp.adjacent(i, j)) {
                ip.add_constraint(vec![(z, 1)], Relation::Le, 1);
            }
        }
    }
    Some(GuessProgram { program: ip, classes: k })
}

/// The best guess found on a connected graph, as per-class counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdOptimum {
    pub partition: TwinPartition,
    pub guess: GuessPartition,
    pub counts: Vec<usize>,
}

impl NdOptimum {
    pub fn size(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The lowest-id members of every class, in the optimal counts.
    pub fn witness(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for (class, &c) in self.partition.classes().iter().zip(&self.counts) {
            for &v in &class[..c] {
                s.insert(v);
            }
        }
        s
    }
}

/// Optimal class counts over all guesses; ties keep the first guess in
/// enumeration order.
pub fn optimum(g: &Graph, problem: Problem) -> Option<NdOptimum> {
    let tp = twin_partition(g);
    let mut best: Option<(GuessPartition, Vec<usize>)> = None;
    for guess in GuessPartition::enumerate(&tp) {
        let inside = build_families(&tp, &guess, Side::Solution);
        let outside = build_families(&tp, &guess, Side::Complement);
        let Some(gp) = assemble_ip(&tp, &guess, &inside, &outside, problem.is_connected()) else {
            continue;
        };
        let Some(sol) = ip::solve_ip(&gp.program) else {
            continue;
        };
        let counts: Vec<usize> = sol.values[..gp.classes].iter().map(|&x| x as usize).collect();
        debug_assert_eq!(sol.objective as usize, counts.iter().sum::<usize>());
        if best.as_ref().is_none_or(|(_, b)| counts.iter().sum::<usize>() < b.iter().sum()) {
            best = Some((guess, counts));
        }
    }
    best.map(|(guess, counts)| NdOptimum { partition: tp, guess, counts })
}

/// Minimum safe set or connected safe set. Disconnected graphs are solved
/// per component; the empty graph is infeasible.
pub fn solve_nd(g: &Graph, problem: Problem) -> SolveResult {
    let mut best = SolveResult::infeasible(Algorithm::NeighborhoodDiversity);
    for comp in graph::components(g, &g.vertices()).expect("full set") {
        let (h, map) = g.induced_subgraph(&comp);
        let Some(opt) = optimum(&h, problem) else {
            continue;
        };
        let local = opt.witness(h.n());
        assert!(
            graph::satisfies(&h, &local, problem),
            "reconstructed witness fails verification"
        );
        let w = VertexSet::from_members(g.n(), local.iter().map(|v| map[v])).expect("mapped ids are in range");
        best = best.min_with(SolveResult::found(Algorithm::NeighborhoodDiversity, w));
    }
    best
}
