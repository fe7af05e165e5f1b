//! Instance generators from Dominating Set and Red-Blue Dominating Set.
//!
//! Both constructions come with the forward certificate: a dominating set
//! of the source is turned into a connected safe set of the target size.
//! The Dominating Set construction also yields a path decomposition of
//! width at most `2k + 4`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, PathDecomposition, VertexSet};

/// A bipartite graph with red vertices `0..red` and blue vertices
/// `0..blue`; edges are `(red, blue)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    red: usize,
    blue: usize,
    edges: Vec<(usize, usize)>,
}

impl Bigraph {
    pub fn new(red: usize, blue: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(r, b) in &edges {
            if r >= red {
                return Err(Error::VertexOutOfRange { vertex: r, n: red });
            }
            if b >= blue {
                return Err(Error::VertexOutOfRange { vertex: b, n: blue });
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Bigraph { red, blue, edges })
    }

    pub fn red(&self) -> usize {
        self.red
    }

    pub fn blue(&self) -> usize {
        self.blue
    }

    /// Sorted `(red, blue)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether the blue indices in `d` dominate every red vertex.
    pub fn dominated_by(&self, d: &[usize]) -> bool {
        (0..self.red).all(|r| self.edges.iter().any(|&(x, b)| x == r && d.contains(&b)))
    }
}

/// What a vertex of a generated graph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Position `pos` of cycle `line`.
    Line { line: usize, pos: usize },
    /// Pendant on the first vertex of block `block` of cycle `line`.
    Guard { line: usize, block: usize },
    /// Central vertex of the gadget of source vertex `column`.
    Center { column: usize },
    /// Pendant of a gadget center.
    CenterLeaf { column: usize },
    /// Copy of source vertex `member` in the gadget of `column`, wired to
    /// cycle `line`.
    X { column: usize, line: usize, member: usize },
    /// Partner of the matching `X` vertex.
    Y { column: usize, line: usize, member: usize },
    /// Pendant of the matching `X` vertex.
    Q { column: usize, line: usize, member: usize },
    /// The vertex adjacent to everything else, or to all of `B`.
    Universal,
    Red(usize),
    Blue(usize),
    /// Pendant of a red vertex, or of the hub when `owner` is `None`.
    Pendant { owner: Option<usize> },
    StarCenter(usize),
    StarLeaf(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Line { line, pos } => write!(f, "line:{line}:{pos}"),
            Role::Guard { line, block } => write!(f, "guard:{line}:{block}"),
            Role::Center { column } => write!(f, "z:{column}"),
            Role::CenterLeaf { column } => write!(f, "w:{column}"),
            Role::X { column, line, member } => write!(f, "x:{column}:{line}:{member}"),
            Role::Y { column, line, member } => write!(f, "y:{column}:{line}:{member}"),
            Role::Q { column, line, member } => write!(f, "q:{column}:{line}:{member}"),
            Role::Universal => f.write_str("u"),
            Role::Red(r) => write!(f, "red:{r}"),
            Role::Blue(b) => write!(f, "blue:{b}"),
            Role::Pendant { owner: None } => f.write_str("pendant:u"),
            Role::Pendant { owner: Some(r) } => write!(f, "pendant:{r}"),
            Role::StarCenter(r) => write!(f, "star:{r}"),
            Role::StarLeaf(r) => write!(f, "starleaf:{r}"),
        }
    }
}

/// The instance a reduction started from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    DominatingSet { graph: Graph, k: usize },
    RedBlue { bigraph: Bigraph, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    /// Size of the safe set the construction is built around.
    pub target: usize,
    pub roles: Vec<Role>,
    pub source: Source,
}

struct Builder {
    roles: Vec<Role>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn pendants(&mut self, anchor: usize, count: usize, role: Role) {
        for _ in 0..count {
            let p = self.vertex(role);
            self.edge(anchor, p);
        }
    }

    fn finish(self) -> Result<(Graph, Vec<Role>)> {
        Ok((Graph::from_edges(self.roles.len(), &self.edges)?, self.roles))
    }
}

/// `k' = 1 + kn + Σ_v k(δ(v) + 1)`.
pub fn ds_target(g: &Graph, k: usize) -> usize {
    1 + k * g.n() + (0..g.n()).map(|v| k * (g.neighbors(v).len() + 1)).sum::<usize>()
}

/// Vertex count of [`ds_to_ss`] on `(g, k)`, from the parts of the
/// construction.
pub fn ds_vertex_count(g: &Graph, k: usize) -> usize {
    let n = g.n();
    let kp = ds_target(g, k);
    let lines = k * n * n;
    let guards = n * k * (kp - n + 1);
    let gadgets: usize = (0..n)
        .map(|i| {
            let closed = g.neighbors(i).len() + 1;
            1 + (kp - k * closed) + k * closed * (kp + 1)
        })
        .sum();
    lines + guards + gadgets + 1
}

/// The Dominating Set construction.
///
/// Cycle `j` (a *line*) has `n²` vertices split into `n` blocks of `n`;
/// position `p` copies source vertex `p mod n` and lies in block `p / n`.
/// The first vertex of every block carries `k' - n + 1` guard pendants.
/// Block `i` of every line is wired to the gadget of source vertex `i`.
pub fn ds_to_ss(g: &Graph, k: usize) -> Result<ReductionOutput> {
    let n = g.n();
    if k < 1 {
        return Err(Error::InvalidParameter(format!("k must be at least 1, got {k}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("source graph needs at least 2 vertices, has {n}")));
    }
    let kp = ds_target(g, k);
    let mut b = Builder { roles: Vec::new(), edges: Vec::new() };
    let line = |j: usize, p: usize| j * n * n + p;
    for j in 0..k {
        for pos in 0..n * n {
            b.vertex(Role::Line { line: j, pos });
        }
        for pos in 0..n * n {
            b.edge(line(j, pos), line(j, (pos + 1) % (n * n)));
        }
    }
    for j in 0..k {
        for block in 0..n {
            b.pendants(line(j, block * n), kp - n + 1, Role::Guard { line: j, block });
        }
    }
    for column in 0..n {
        let closed = closed_neighborhood(g, column);
        let z = b.vertex(Role::Center { column });
        b.pendants(z, kp - k * closed.len(), Role::CenterLeaf { column });
        for j in 0..k {
            for &member in &closed {
                let x = b.vertex(Role::X { column, line: j, member });
                b.pendants(x, kp - 1, Role::Q { column, line: j, member });
                let y = b.vertex(Role::Y { column, line: j, member });
                b.edge(x, y);
                b.edge(y, z);
                b.edge(x, line(j, column * n + member));
            }
        }
    }
    let u = b.vertex(Role::Universal);
    for v in 0..u {
        b.edge(v, u);
    }
    let (graph, roles) = b.finish()?;
    debug_assert_eq!(graph.n(), ds_vertex_count(g, k));
    Ok(ReductionOutput {
        graph,
        target: kp,
        roles,
        source: Source::DominatingSet { graph: g.clone(), k },
    })
}

fn closed_neighborhood(g: &Graph, v: usize) -> Vec<usize> {
    let mut c: Vec<usize> = g.neighbors(v).to_vec();
    c.push(v);
    c.sort_unstable();
    c
}

fn ds_source(output: &ReductionOutput) -> Result<(&Graph, usize)> {
    match &output.source {
        Source::DominatingSet { graph, k } => Ok((graph, *k)),
        Source::RedBlue { .. } => Err(Error::InvalidParameter("not a Dominating Set reduction".into())),
    }
}

fn rbds_source(output: &ReductionOutput) -> Result<(&Bigraph, usize)> {
    match &output.source {
        Source::RedBlue { bigraph, k } => Ok((bigraph, *k)),
        Source::DominatingSet { .. } => Err(Error::InvalidParameter("not a Red-Blue Dominating Set reduction".into())),
    }
}

/// Locates vertices of a built instance by role.
fn index_of(output: &ReductionOutput) -> impl Fn(Role) -> usize + '_ {
    let lookup: alloc::collections::BTreeMap<RoleKey, usize> = output
        .roles
        .iter()
        .enumerate()
        .filter_map(|(v, &r)| RoleKey::of(r).map(|key| (key, v)))
        .collect();
    move |r| lookup[&RoleKey::of(r).expect("role with a unique vertex")]
}

/// Roles naming exactly one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum RoleKey {
    Line(usize, usize),
    Center(usize),
    X(usize, usize, usize),
    Y(usize, usize, usize),
    Universal,
    Red(usize),
    Blue(usize),
    StarCenter(usize),
}

impl RoleKey {
    fn of(r: Role) -> Option<RoleKey> {
        Some(match r {
            Role::Line { line, pos } => RoleKey::Line(line, pos),
            Role::Center { column } => RoleKey::Center(column),
            Role::X { column, line, member } => RoleKey::X(column, line, member),
            Role::Y { column, line, member } => RoleKey::Y(column, line, member),
            Role::Universal => RoleKey::Universal,
            Role::Red(i) => RoleKey::Red(i),
            Role::Blue(i) => RoleKey::Blue(i),
            Role::StarCenter(i) => RoleKey::StarCenter(i),
            _ => return None,
        })
    }
}

/// The connected safe set of size `k'` built from a dominating set `dom`
/// of the source graph with at most `k` vertices.
///
/// The dominating set is listed in increasing order and, if shorter than
/// `k`, extended by the smallest unused vertices (repeating its first
/// member once the graph runs out); line `j` takes every copy of the
/// `j`-th listed vertex. In the gadget of `v`, the smallest listed member
/// `x` of `N[v]` is left out of the line on which it is first listed, and
/// its partner `Y` vertex is taken instead.
pub fn ds_forward_certificate(dom: &VertexSet, output: &ReductionOutput) -> Result<VertexSet> {
    let (g, k) = ds_source(output)?;
    g.check_set(dom)?;
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| !dom.contains(v) && g.neighbors(v).iter().all(|&w| !dom.contains(w))) {
        return Err(Error::NotDominating(v));
    }
    if dom.len() > k {
        return Err(Error::InvalidParameter(format!("dominating set has {} > k = {k} vertices", dom.len())));
    }
    let mut listed = dom.to_vec();
    listed.extend((0..n).filter(|v| !dom.contains(*v)).take(k - listed.len()));
    while listed.len() < k {
        listed.push(listed[0]);
    }
    let at = index_of(output);
    let mut s = VertexSet::new(output.graph.n());
    s.insert(at(Role::Universal));
    for (j, &v) in listed.iter().enumerate() {
        for block in 0..n {
            s.insert(at(Role::Line { line: j, pos: block * n + v }));
        }
    }
    for column in 0..n {
        let closed = closed_neighborhood(g, column);
        let x = *closed.iter().find(|&&m| listed.contains(&m)).expect("dominated");
        let j_star = listed.iter().position(|&m| m == x).expect("listed");
        for j in 0..k {
            for &member in &closed {
                if (j, member) == (j_star, x) {
                    s.insert(at(Role::Y { column, line: j, member }));
                } else {
                    s.insert(at(Role::X { column, line: j, member }));
                }
            }
        }
    }
    debug_assert_eq!(s.len(), output.target);
    Ok(s)
}

/// Path decomposition of the Dominating Set construction with bags of at
/// most `2k + 5` vertices.
///
/// Without the universal vertex and the edges closing the lines, each
/// column is covered by advancing all lines one vertex at a time, with the
/// column's center in every bag; pendants and `X` vertices go into copies
/// of a bag holding their neighbor. Consecutive columns share the bag of
/// the first vertices of the next block. Finally the universal vertex and
/// the first vertex of every line are added to every bag.
pub fn ds_path_decomposition(output: &ReductionOutput) -> Result<PathDecomposition> {
    let (g, k) = ds_source(output)?;
    let n = g.n();
    let at = index_of(output);
    let nn = n * n;
    let h = &output.graph;
    let mut bags: Vec<Vec<usize>> = Vec::new();
    // Index of a bag holding line vertex (j, p) and the center of p's block.
    let mut home = vec![usize::MAX; k * nn];
    let mut center_home = Vec::with_capacity(n);
    for block in 0..n {
        let z = at(Role::Center { column: block });
        let start = block * n;
        let end = if block + 1 < n { start + n } else { nn - 1 };
        let mut cur: Vec<usize> = (0..k).map(|j| at(Role::Line { line: j, pos: start })).collect();
        if block == 0 {
            bags.push(cur.clone());
        }
        center_home.push(bags.len());
        for p in start..end {
            for j in 0..k {
                let next = at(Role::Line { line: j, pos: p + 1 });
                let mut bag = cur.clone();
                bag.push(next);
                bag.push(z);
                let idx = bags.len();
                bags.push(bag);
                if home[j * nn + p] == usize::MAX {
                    home[j * nn + p] = idx;
                }
                if p + 1 < start + n && home[j * nn + p + 1] == usize::MAX {
                    home[j * nn + p + 1] = idx;
                }
                cur[j] = next;
            }
        }
        if block + 1 < n {
            bags.push(cur.clone());
        }
    }
    // Groups of extra bags inserted after a base bag.
    let mut after: Vec<Vec<Vec<usize>>> = vec![Vec::new(); bags.len()];
    for v in 0..h.n() {
        match output.roles[v] {
            Role::Guard { line, block } => after[home[line * nn + block * n]].push(vec![v]),
            Role::CenterLeaf { column } => after[center_home[column]].push(vec![v]),
            Role::X { column, line, member } => {
                let base = home[line * nn + column * n + member];
                let mut group = vec![Vec::from([v])];
                for &w in h.neighbors(v) {
                    if matches!(output.roles[w], Role::Q { .. } | Role::Y { .. }) {
                        group.push(vec![v, w]);
                    }
                }
                after[base].extend(group);
            }
            _ => {}
        }
    }
    let mut always: Vec<usize> = (0..k).map(|j| at(Role::Line { line: j, pos: 0 })).collect();
    always.push(at(Role::Universal));
    let mut out = Vec::new();
    for (bag, extras) in bags.iter().zip(&after) {
        let mut emit = |extra: &[usize]| {
            let mut b: BTreeSet<usize> = bag.iter().copied().collect();
            b.extend(always.iter().copied());
            b.extend(extra.iter().copied());
            out.push(b.into_iter().collect::<Vec<usize>>());
        };
        emit(&[]);
        for extra in extras {
            emit(extra);
        }
    }
    Ok(PathDecomposition::new(out))
}

/// `s = k + |R| + 1`.
pub fn rbds_target(bg: &Bigraph, k: usize) -> usize {
    k + bg.red() + 1
}

/// The Red-Blue Dominating Set construction.
///
/// A hub `u` is joined to every blue vertex; `u` and every red vertex get
/// `2s` pendants, and every red vertex is joined to the center of its own
/// star `K_{1,s-1}`. Requires `1 <= k < |R|` and every red vertex to have
/// a blue neighbor, since otherwise the target graph falls apart and the
/// equivalence fails.
pub fn rbds_to_ss(bg: &Bigraph, k: usize) -> Result<ReductionOutput> {
    if k < 1 || k >= bg.red() {
        return Err(Error::InvalidParameter(format!("need 1 <= k < |R| = {}, got k = {k}", bg.red())));
    }
    if let Some(r) = (0..bg.red()).find(|&r| !bg.edges.iter().any(|&(x, _)| x == r)) {
        return Err(Error::InvalidParameter(format!("red vertex {r} has no blue neighbor")));
    }
    let s = rbds_target(bg, k);
    let mut b = Builder { roles: Vec::new(), edges: Vec::new() };
    let red: Vec<usize> = (0..bg.red()).map(|r| b.vertex(Role::Red(r))).collect();
    let blue: Vec<usize> = (0..bg.blue()).map(|i| b.vertex(Role::Blue(i))).collect();
    for &(r, i) in &bg.edges {
        b.edge(red[r], blue[i]);
    }
    let u = b.vertex(Role::Universal);
    for &v in &blue {
        b.edge(u, v);
    }
    b.pendants(u, 2 * s, Role::Pendant { owner: None });
    for (r, &rv) in red.iter().enumerate() {
        b.pendants(rv, 2 * s, Role::Pendant { owner: Some(r) });
        let c = b.vertex(Role::StarCenter(r));
        b.edge(rv, c);
        b.pendants(c, s - 1, Role::StarLeaf(r));
    }
    let (graph, roles) = b.finish()?;
    Ok(ReductionOutput {
        graph,
        target: s,
        roles,
        source: Source::RedBlue { bigraph: bg.clone(), k },
    })
}

/// `{u} ∪ R ∪ D` for a red-blue dominating set `d` (blue indices) with at
/// most `k` vertices, extended to exactly `s` vertices by further blue
/// vertices and then star centers.
pub fn rbds_forward_certificate(d: &[usize], output: &ReductionOutput) -> Result<VertexSet> {
    let (bg, k) = rbds_source(output)?;
    if let Some(&b) = d.iter().find(|&&b| b >= bg.blue()) {
        return Err(Error::VertexOutOfRange { vertex: b, n: bg.blue() });
    }
    if let Some(r) = (0..bg.red()).find(|&r| !bg.edges.iter().any(|&(x, b)| x == r && d.contains(&b))) {
        return Err(Error::NotDominating(r));
    }
    let chosen: BTreeSet<usize> = d.iter().copied().collect();
    if chosen.len() > k {
        return Err(Error::InvalidParameter(format!("dominating set has {} > k = {k} vertices", chosen.len())));
    }
    let at = index_of(output);
    let mut s = VertexSet::new(output.graph.n());
    s.insert(at(Role::Universal));
    for r in 0..bg.red() {
        s.insert(at(Role::Red(r)));
    }
    for &b in &chosen {
        s.insert(at(Role::Blue(b)));
    }
    let extra = (0..bg.blue())
        .filter(|b| !chosen.contains(b))
        .map(|b| at(Role::Blue(b)))
        .chain((0..bg.red()).map(|r| at(Role::StarCenter(r))));
    for v in extra.take(output.target - s.len()) {
        s.insert(v);
    }
    debug_assert_eq!(s.len(), output.target);
    Ok(s)
}
