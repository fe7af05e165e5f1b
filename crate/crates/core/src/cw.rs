//! Dynamic program over irredundant clique-width expressions.
//!
//! Every node `t` of the expression describes a labeled graph `G_t`. For a
//! set `S ⊆ V(G_t)` the program records seven functions of label sets:
//!
//! * `num(L)` / `bnum(L)`: total size of the components of `G_t[S]` /
//!   `G_t - S` whose label set is exactly `L`;
//! * `smllst(L)`: smallest such component of `G_t[S]` (`+∞` if none);
//! * `lrgst(L)`: largest such component of `G_t - S` (`-∞` if none);
//! * `asmllst(L1, L2)`, `alrgst(L1, L2)`, `mindiff(L1, L2)`: over adjacent
//!   pairs `C` of `G_t[S]` with label set `L1` and `D` of `G_t - S` with
//!   label set `L2`, the smallest `|C|`, the largest `|D|` and the smallest
//!   `|C| - |D|`.
//!
//! Tables are sparse: only tuples realized by some `S` are stored, each with
//! one realizing set. Label sets are bitmasks with label `i` on bit `i - 1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet};
use crate::result::{Algorithm, Problem, SolveResult};

/// A vertex label, in `1..=c`.
pub type Label = u8;

/// Largest label count an expression may declare.
pub const MAX_LABELS: usize = 16;
/// Largest label count the dynamic program accepts; a tuple holds
/// `4 * 2^c + 3 * 4^c` integers.
pub const MAX_DP_LABELS: usize = 6;

pub const INF: i32 = i32::MAX;
pub const NEG_INF: i32 = i32::MIN;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    /// A single vertex with the given label.
    Leaf(Label),
    /// Disjoint union.
    Union(NodeId, NodeId),
    /// Every label `from` becomes `to`.
    Relabel { from: Label, to: Label, child: NodeId },
    /// All edges between labels `i` and `j`.
    Join { i: Label, j: Label, child: NodeId },
}

impl Node {
    fn children(&self) -> (Option<NodeId>, Option<NodeId>) {
        match *self {
            Node::Leaf(_) => (None, None),
            Node::Union(a, b) => (Some(a), Some(b)),
            Node::Relabel { child, .. } | Node::Join { child, .. } => (Some(child), None),
        }
    }
}

/// A validated c-expression stored as an arena in which every child precedes
/// its parent.
///
/// Vertices of the described graph are numbered by leaf order: the leftmost
/// leaf is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CExpression {
    c: usize,
    nodes: Vec<Node>,
    root: NodeId,
    /// Vertex range `[lo, hi)` covered by each node.
    range: Vec<(usize, usize)>,
}

/// Incremental construction of a [`CExpression`].
#[derive(Debug, Clone)]
pub struct ExprBuilder {
    c: usize,
    nodes: Vec<Node>,
    used: Vec<bool>,
}

impl ExprBuilder {
    pub fn new(c: usize) -> Result<Self> {
        if c == 0 || c > MAX_LABELS {
            return Err(Error::InvalidExpression(format!("label count {c} outside 1..={MAX_LABELS}")));
        }
        Ok(ExprBuilder { c, nodes: Vec::new(), used: Vec::new() })
    }

    fn label(&self, l: Label) -> Result<Label> {
        if l == 0 || l as usize > self.c {
            Err(Error::InvalidExpression(format!("label {l} outside 1..={}", self.c)))
        } else {
            Ok(l)
        }
    }

    fn take(&mut self, id: NodeId) -> Result<NodeId> {
        match self.used.get_mut(id) {
            None => Err(Error::InvalidExpression(format!("unknown node {id}"))),
            Some(true) => Err(Error::InvalidExpression(format!("node {id} used twice"))),
            Some(u) => {
                *u = true;
                Ok(id)
            }
        }
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.used.push(false);
        self.nodes.len() - 1
    }

    pub fn leaf(&mut self, l: Label) -> Result<NodeId> {
        let l = self.label(l)?;
        Ok(self.push(Node::Leaf(l)))
    }

    pub fn union(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        if a == b {
            return Err(Error::InvalidExpression(format!("node {a} used twice")));
        }
        let a = self.take(a)?;
        let b = self.take(b)?;
        Ok(self.push(Node::Union(a, b)))
    }

    pub fn relabel(&mut self, from: Label, to: Label, child: NodeId) -> Result<NodeId> {
        let (from, to) = self.distinct(from, to, 'r')?;
        let child = self.take(child)?;
        Ok(self.push(Node::Relabel { from, to, child }))
    }

    pub fn join(&mut self, i: Label, j: Label, child: NodeId) -> Result<NodeId> {
        let (i, j) = self.distinct(i, j, 'e')?;
        let child = self.take(child)?;
        Ok(self.push(Node::Join { i, j, child }))
    }

    fn distinct(&self, a: Label, b: Label, op: char) -> Result<(Label, Label)> {
        let (a, b) = (self.label(a)?, self.label(b)?);
        if a == b {
            return Err(Error::InvalidExpression(format!("({op} {a} {b} ...) needs two distinct labels")));
        }
        Ok((a, b))
    }

    /// Finishes with `root`, which must be the only node without a parent.
    pub fn finish(self, root: NodeId) -> Result<CExpression> {
        if root >= self.nodes.len() {
            return Err(Error::InvalidExpression(format!("unknown node {root}")));
        }
        if let Some(stray) = (0..self.nodes.len()).find(|&v| v != root && !self.used[v]) {
            return Err(Error::InvalidExpression(format!("node {stray} is not below the root")));
        }
        if self.used[root] {
            return Err(Error::InvalidExpression(format!("root {root} has a parent")));
        }
        Ok(CExpression::from_parts(self.c, self.nodes, root))
    }
}

impl CExpression {
    fn from_parts(c: usize, nodes: Vec<Node>, root: NodeId) -> Self {
        let mut range = vec![(0, 0); nodes.len()];
        // Pre-order walk, left child first, to number the leaves.
        let mut next = 0;
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            match nodes[t].children() {
                (None, _) => {
                    range[t] = (next, next + 1);
                    next += 1;
                }
                (Some(a), b) => {
                    if let Some(b) = b {
                        stack.push(b);
                    }
                    stack.push(a);
                }
            }
        }
        for t in 0..nodes.len() {
            range[t] = match nodes[t].children() {
                (None, _) => range[t],
                (Some(a), None) => range[a],
                (Some(a), Some(b)) => (range[a].0.min(range[b].0), range[a].1.max(range[b].1)),
            };
        }
        CExpression { c, nodes, root, range }
    }

    pub fn labels(&self) -> usize {
        self.c
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, t: NodeId) -> Node {
        self.nodes[t]
    }

    /// Number of vertices of the described graph.
    pub fn n(&self) -> usize {
        self.range[self.root].1
    }

    /// Vertices `[lo, hi)` of the subtree at `t`.
    pub fn vertex_range(&self, t: NodeId) -> (usize, usize) {
        self.range[t]
    }

    /// The nodes of the subtree at `t`, children before parents.
    fn subtree(&self, t: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let (lo, hi) = self.range[t];
        (0..=t).filter(move |&x| {
            let (a, b) = self.range[x];
            lo <= a && b <= hi
        })
    }

    /// Labeled graph of the subtree at `t`, with vertex `v` standing for
    /// vertex `v + lo` of the whole expression. Redundant joins are
    /// reported when `strict` is set.
    fn simulate(&self, t: NodeId, strict: bool) -> Result<(Graph, Vec<Label>)> {
        let (lo, hi) = self.range[t];
        let mut labels: Vec<Label> = vec![0; hi - lo];
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for x in self.subtree(t) {
            let (a, b) = self.range[x];
            let span = a - lo..b - lo;
            match self.nodes[x] {
                Node::Leaf(l) => labels[a - lo] = l,
                Node::Union(..) => {}
                Node::Relabel { from, to, .. } => {
                    for l in &mut labels[span] {
                        if *l == from {
                            *l = to;
                        }
                    }
                }
                Node::Join { i, j, .. } => {
                    let (left, right): (Vec<usize>, Vec<usize>) = (
                        span.clone().filter(|&v| labels[v] == i).collect(),
                        span.filter(|&v| labels[v] == j).collect(),
                    );
                    for &u in &left {
                        for &v in &right {
                            let e = (u.min(v), u.max(v));
                            if !edges.insert(e) && strict {
                                return Err(Error::RedundantExpression { node: x, u: e.0 + lo, v: e.1 + lo });
                            }
                        }
                    }
                }
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let g = Graph::from_edges(hi - lo, &edges).expect("simulated edges are simple");
        Ok((g, labels))
    }

    /// The graph and vertex labels described by the whole expression.
    pub fn eval_graph(&self) -> (Graph, Vec<Label>) {
        self.simulate(self.root, false).expect("non-strict evaluation cannot fail")
    }

    /// The graph and labels of the subtree at `t`, on vertices
    /// `0..hi - lo` where `(lo, hi) = vertex_range(t)`.
    pub fn eval_subtree(&self, t: NodeId) -> (Graph, Vec<Label>) {
        self.simulate(t, false).expect("non-strict evaluation cannot fail")
    }

    /// Fails with the first join (children first) that adds an edge that is
    /// already present.
    pub fn validate_irredundant(&self) -> Result<()> {
        self.simulate(self.root, true).map(|_| ())
    }

    /// Parses the text format: a header line `c <int>` followed by one
    /// s-expression built from `(v i)`, `(u A B)`, `(r i j A)` and
    /// `(e i j A)`. `#` starts a comment running to the end of the line.
    pub fn parse(text: &str) -> Result<CExpression> {
        Parser::new(text).run()
    }
}

impl fmt::Display for CExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c {}", self.c)?;
        enum Task {
            Open(NodeId),
            Close,
        }
        let mut stack = vec![Task::Open(self.root)];
        let mut first = true;
        while let Some(task) = stack.pop() {
            match task {
                Task::Close => f.write_str(")")?,
                Task::Open(t) => {
                    if !first {
                        f.write_str(" ")?;
                    }
                    first = false;
                    stack.push(Task::Close);
                    match self.nodes[t] {
                        Node::Leaf(l) => write!(f, "(v {l}")?,
                        Node::Union(a, b) => {
                            f.write_str("(u")?;
                            stack.push(Task::Open(b));
                            stack.push(Task::Open(a));
                        }
                        Node::Relabel { from, to, child } => {
                            write!(f, "(r {from} {to}")?;
                            stack.push(Task::Open(child));
                        }
                        Node::Join { i, j, child } => {
                            write!(f, "(e {i} {j}")?;
                            stack.push(Task::Open(child));
                        }
                    }
                }
            }
        }
        writeln!(f)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Frame {
    op: char,
    args: Vec<usize>,
    children: Vec<NodeId>,
    at: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0, line: 1, col: 1 }
    }

    fn error(&self, at: (usize, usize), msg: &str) -> Error {
        Error::InvalidExpression(format!("line {}, column {}: {msg}", at.0, at.1))
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.text[self.pos..].chars().next()?;
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(ch)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_space(&mut self) {
        while let Some(ch) = self.peek() {
            if ch == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if ch.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// A word of alphanumeric characters.
    fn word(&mut self) -> Option<(&'a str, (usize, usize))> {
        self.skip_space();
        let at = self.here();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '+') {
            self.bump();
        }
        (self.pos > start).then(|| (&self.text[start..self.pos], at))
    }

    fn number(&mut self) -> Result<(usize, (usize, usize))> {
        let at = {
            self.skip_space();
            self.here()
        };
        match self.word() {
            Some((w, at)) => w.parse().map(|v| (v, at)).map_err(|_| self.error(at, "expected a non-negative integer")),
            None => Err(self.error(at, "expected a non-negative integer")),
        }
    }

    fn run(mut self) -> Result<CExpression> {
        let at = {
            self.skip_space();
            self.here()
        };
        match self.word() {
            Some(("c", _)) => {}
            _ => return Err(self.error(at, "expected header `c <int>`")),
        }
        let (c, c_at) = self.number()?;
        let mut b = ExprBuilder::new(c).map_err(|e| self.error(c_at, &message(e)))?;
        let mut stack: Vec<Frame> = Vec::new();
        let mut root: Option<NodeId> = None;
        loop {
            self.skip_space();
            let at = self.here();
            match self.bump() {
                None => break,
                Some('(') => {
                    if root.is_some() {
                        return Err(self.error(at, "unexpected input after the expression"));
                    }
                    let (op, op_at) = self.word().ok_or_else(|| self.error(at, "expected an operator"))?;
                    let (op, arity) = match op {
                        "v" => ('v', 1),
                        "u" => ('u', 0),
                        "r" => ('r', 2),
                        "e" => ('e', 2),
                        _ => return Err(self.error(op_at, "unknown operator, expected v, u, r or e")),
                    };
                    let mut args = Vec::with_capacity(arity);
                    for _ in 0..arity {
                        args.push(self.number()?.0);
                    }
                    stack.push(Frame { op, args, children: Vec::new(), at });
                }
                Some(')') => {
                    let frame = stack.pop().ok_or_else(|| self.error(at, "unbalanced `)`"))?;
                    let id = self.close(&mut b, frame)?;
                    match stack.last_mut() {
                        Some(parent) => parent.children.push(id),
                        None => root = Some(id),
                    }
                }
                Some(_) => return Err(self.error(at, "expected `(` or `)`")),
            }
        }
        if let Some(open) = stack.last() {
            return Err(self.error(open.at, "unclosed `(`"));
        }
        let root = root.ok_or_else(|| self.error(self.here(), "missing expression"))?;
        b.finish(root)
    }

    fn close(&self, b: &mut ExprBuilder, frame: Frame) -> Result<NodeId> {
        let expected = match frame.op {
            'v' => 0,
            'u' => 2,
            _ => 1,
        };
        if frame.children.len() != expected {
            return Err(self.error(
                frame.at,
                &format!("`{}` takes {expected} subexpressions, found {}", frame.op, frame.children.len()),
            ));
        }
        let label = |x: usize| Label::try_from(x).unwrap_or(Label::MAX);
        let built = match frame.op {
            'v' => b.leaf(label(frame.args[0])),
            'u' => b.union(frame.children[0], frame.children[1]),
            'r' => b.relabel(label(frame.args[0]), label(frame.args[1]), frame.children[0]),
            _ => b.join(label(frame.args[0]), label(frame.args[1]), frame.children[0]),
        };
        built.map_err(|e| self.error(frame.at, &message(e)))
    }
}

fn message(e: Error) -> String {
    match e {
        Error::InvalidExpression(m) => m,
        other => format!("{other}"),
    }
}

/// The seven functions of one table row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DpTuple {
    c: u8,
    data: Vec<i32>,
}

const NUM: usize = 0;
const BNUM: usize = 1;
const SMLLST: usize = 2;
const LRGST: usize = 3;
const ASMLLST: usize = 0;
const ALRGST: usize = 1;
const MINDIFF: usize = 2;

impl DpTuple {
    /// The tuple of the empty graph: zero counts and sentinels everywhere.
    pub fn empty(c: usize) -> Self {
        assert!(c <= MAX_DP_LABELS, "too many labels for the table");
        let m = 1usize << c;
        let mut data = Vec::with_capacity(4 * m + 3 * m * m);
        data.extend(core::iter::repeat_n(0, 2 * m));
        data.extend(core::iter::repeat_n(INF, m));
        data.extend(core::iter::repeat_n(NEG_INF, m));
        data.extend(core::iter::repeat_n(INF, m * m));
        data.extend(core::iter::repeat_n(NEG_INF, m * m));
        data.extend(core::iter::repeat_n(INF, m * m));
        DpTuple { c: c as u8, data }
    }

    pub fn labels(&self) -> usize {
        self.c as usize
    }

    fn masks(&self) -> usize {
        1 << self.c
    }

    fn single(&self, f: usize, l: usize) -> usize {
        debug_assert!(l < self.masks());
        f * self.masks() + l
    }

    fn pair(&self, f: usize, l1: usize, l2: usize) -> usize {
        let m = self.masks();
        debug_assert!(l1 < m && l2 < m);
        4 * m + f * m * m + l1 * m + l2
    }

    pub fn num(&self, l: usize) -> i32 {
        self.data[self.single(NUM, l)]
    }
    pub fn bnum(&self, l: usize) -> i32 {
        self.data[self.single(BNUM, l)]
    }
    pub fn smllst(&self, l: usize) -> i32 {
        self.data[self.single(SMLLST, l)]
    }
    pub fn lrgst(&self, l: usize) -> i32 {
        self.data[self.single(LRGST, l)]
    }
    pub fn asmllst(&self, l1: usize, l2: usize) -> i32 {
        self.data[self.pair(ASMLLST, l1, l2)]
    }
    pub fn alrgst(&self, l1: usize, l2: usize) -> i32 {
        self.data[self.pair(ALRGST, l1, l2)]
    }
    pub fn mindiff(&self, l1: usize, l2: usize) -> i32 {
        self.data[self.pair(MINDIFF, l1, l2)]
    }

    pub fn set_num(&mut self, l: usize, v: i32) {
        let i = self.single(NUM, l);
        self.data[i] = v;
    }
    pub fn set_bnum(&mut self, l: usize, v: i32) {
        let i = self.single(BNUM, l);
        self.data[i] = v;
    }
    pub fn set_smllst(&mut self, l: usize, v: i32) {
        let i = self.single(SMLLST, l);
        self.data[i] = v;
    }
    pub fn set_lrgst(&mut self, l: usize, v: i32) {
        let i = self.single(LRGST, l);
        self.data[i] = v;
    }
    pub fn set_asmllst(&mut self, l1: usize, l2: usize, v: i32) {
        let i = self.pair(ASMLLST, l1, l2);
        self.data[i] = v;
    }
    pub fn set_alrgst(&mut self, l1: usize, l2: usize, v: i32) {
        let i = self.pair(ALRGST, l1, l2);
        self.data[i] = v;
    }
    pub fn set_mindiff(&mut self, l1: usize, l2: usize, v: i32) {
        let i = self.pair(MINDIFF, l1, l2);
        self.data[i] = v;
    }

    fn set_adjacent(&mut self, l1: usize, l2: usize, small: i32, large: i32) {
        self.set_asmllst(l1, l2, small);
        self.set_alrgst(l1, l2, large);
        self.set_mindiff(l1, l2, small - large);
    }

    /// `|S|`.
    pub fn size(&self) -> i32 {
        (0..self.masks()).map(|l| self.num(l)).sum()
    }

    /// `|V_t|`.
    pub fn order(&self) -> i32 {
        (0..self.masks()).map(|l| self.num(l) + self.bnum(l)).sum()
    }

    /// Non-empty and every adjacent pair satisfies `|C| >= |D|`.
    pub fn is_safe(&self) -> bool {
        let m = self.masks();
        self.size() > 0 && (0..m * m).all(|p| self.mindiff(p / m, p % m) >= 0)
    }

    /// Exactly one label set carries components of `G[S]`.
    pub fn single_label_set(&self) -> bool {
        (0..self.masks()).filter(|&l| self.num(l) > 0).count() == 1
    }

    /// `G[S]` is connected: one label set carries components and its
    /// smallest one already has all the vertices.
    pub fn is_connected(&self) -> bool {
        let mut carriers = (0..self.masks()).filter(|&l| self.num(l) > 0);
        match (carriers.next(), carriers.next()) {
            (Some(l), None) => self.smllst(l) == self.num(l),
            _ => false,
        }
    }

    /// `+∞` in `asmllst` exactly where `alrgst` is `-∞` and `mindiff` is `+∞`.
    pub fn sentinels_consistent(&self) -> bool {
        let m = self.masks();
        (0..m * m).all(|p| {
            let (a, b) = (p / m, p % m);
            let absent = self.asmllst(a, b) == INF;
            absent == (self.alrgst(a, b) == NEG_INF) && absent == (self.mindiff(a, b) == INF)
        })
    }
}

impl fmt::Debug for DpTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.masks();
        let show = |v: i32| match v {
            INF => String::from("+inf"),
            NEG_INF => String::from("-inf"),
            v => format!("{v}"),
        };
        let mut d = f.debug_struct("DpTuple");
        for l in 1..m {
            if self.num(l) != 0 || self.bnum(l) != 0 {
                d.field(
                    &format!("{l:#b}"),
                    &format!(
                        "num={} bnum={} smllst={} lrgst={}",
                        self.num(l),
                        self.bnum(l),
                        show(self.smllst(l)),
                        show(self.lrgst(l))
                    ),
                );
            }
        }
        for l1 in 1..m {
            for l2 in 1..m {
                if self.asmllst(l1, l2) != INF {
                    d.field(
                        &format!("{l1:#b}~{l2:#b}"),
                        &format!(
                            "asmllst={} alrgst={} mindiff={}",
                            self.asmllst(l1, l2),
                            self.alrgst(l1, l2),
                            show(self.mindiff(l1, l2))
                        ),
                    );
                }
            }
        }
        d.finish()
    }
}

/// One table row: the tuple and a set realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpEntry<'a> {
    pub tuple: &'a DpTuple,
    pub witness: &'a VertexSet,
}

/// Realized tuples of one node, each with the first set found for it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpTable {
    rows: BTreeMap<DpTuple, VertexSet>,
}

impl DpTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = DpEntry<'_>> {
        self.rows.iter().map(|(tuple, witness)| DpEntry { tuple, witness })
    }

    pub fn contains(&self, tuple: &DpTuple) -> bool {
        self.rows.contains_key(tuple)
    }

    fn insert(&mut self, tuple: DpTuple, witness: VertexSet) {
        self.rows.entry(tuple).or_insert(witness);
    }
}

fn bit(l: Label) -> usize {
    1 << (l - 1)
}

/// Table of a single vertex `v` (out of `n`) with label `l`.
pub fn dp_leaf(c: usize, l: Label, v: usize, n: usize) -> DpTable {
    let b = bit(l);
    let mut out = DpTable::default();
    let mut outside = DpTuple::empty(c);
    outside.set_bnum(b, 1);
    outside.set_lrgst(b, 1);
    out.insert(outside, VertexSet::new(n));
    let mut inside = DpTuple::empty(c);
    inside.set_num(b, 1);
    inside.set_smllst(b, 1);
    out.insert(inside, VertexSet::from_members(n, [v]).expect("leaf vertex in range"));
    out
}

fn union_tuple(a: &DpTuple, b: &DpTuple) -> DpTuple {
    let m = a.masks();
    let mut out = a.clone();
    for f in [NUM, BNUM] {
        for l in 0..m {
            let i = out.single(f, l);
            out.data[i] += b.data[i];
        }
    }
    for l in 0..m {
        let i = out.single(SMLLST, l);
        out.data[i] = out.data[i].min(b.data[i]);
        let i = out.single(LRGST, l);
        out.data[i] = out.data[i].max(b.data[i]);
    }
    for p in 0..m * m {
        let (l1, l2) = (p / m, p % m);
        for (f, take_max) in [(ASMLLST, false), (ALRGST, true), (MINDIFF, false)] {
            let i = out.pair(f, l1, l2);
            out.data[i] = if take_max { out.data[i].max(b.data[i]) } else { out.data[i].min(b.data[i]) };
        }
    }
    out
}

/// Disjoint union: counts add up, extremes combine.
pub fn dp_union(left: &DpTable, right: &DpTable) -> DpTable {
    let mut out = DpTable::default();
    for (ta, wa) in &left.rows {
        for (tb, wb) in &right.rows {
            out.insert(union_tuple(ta, tb), wa.union(wb));
        }
    }
    out
}

fn relabel_tuple(t: &DpTuple, from: Label, to: Label) -> DpTuple {
    let (fb, tb) = (bit(from), bit(to));
    let image = |l: usize| if l & fb != 0 { (l & !fb) | tb } else { l };
    let m = t.masks();
    let mut out = DpTuple::empty(t.labels());
    for l in 0..m {
        let r = image(l);
        out.set_num(r, out.num(r) + t.num(l));
        out.set_bnum(r, out.bnum(r) + t.bnum(l));
        out.set_smllst(r, out.smllst(r).min(t.smllst(l)));
        out.set_lrgst(r, out.lrgst(r).max(t.lrgst(l)));
    }
    for l1 in 0..m {
        for l2 in 0..m {
            let (r1, r2) = (image(l1), image(l2));
            out.set_asmllst(r1, r2, out.asmllst(r1, r2).min(t.asmllst(l1, l2)));
            out.set_alrgst(r1, r2, out.alrgst(r1, r2).max(t.alrgst(l1, l2)));
            out.set_mindiff(r1, r2, out.mindiff(r1, r2).min(t.mindiff(l1, l2)));
        }
    }
    out
}

/// Relabeling `from` to `to`: each label set is renamed and rows with the
/// same image are merged.
pub fn dp_relabel(from: Label, to: Label, child: &DpTable) -> DpTable {
    let mut out = DpTable::default();
    for (t, w) in &child.rows {
        out.insert(relabel_tuple(t, from, to), w.clone());
    }
    out
}

/// Components of one side after a join: if both labels occur on that side,
/// every component touching either label merges into one.
struct Merge {
    active: bool,
    /// Union of the merged label sets.
    label: usize,
    size: i32,
    /// Label sets of the merged components.
    parts: Vec<usize>,
}

impl Merge {
    fn new(counts: impl Fn(usize) -> i32, m: usize, ib: usize, jb: usize) -> Self {
        let on = |b: usize| (0..m).any(|l| l & b != 0 && counts(l) > 0);
        let active = on(ib) && on(jb);
        let parts: Vec<usize> = if active {
            (0..m).filter(|&l| l & (ib | jb) != 0 && counts(l) > 0).collect()
        } else {
            Vec::new()
        };
        Merge {
            active,
            label: parts.iter().fold(0, |acc, &l| acc | l),
            size: parts.iter().map(|&l| counts(l)).sum(),
            parts,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// Components that keep their old identity.
    Plain,
    /// The single merged component.
    Merged,
    /// No component can carry this label set.
    Gone,
}

fn join_tuple(t: &DpTuple, i: Label, j: Label) -> DpTuple {
    let (ib, jb) = (bit(i), bit(j));
    let touch = ib | jb;
    let m = t.masks();
    let s = Merge::new(|l| t.num(l), m, ib, jb);
    let d = Merge::new(|l| t.bnum(l), m, ib, jb);
    let kind = |merge: &Merge, l: usize| {
        if merge.active && l & touch != 0 {
            if l == merge.label {
                Kind::Merged
            } else {
                Kind::Gone
            }
        } else {
            Kind::Plain
        }
    };
    // A component carrying both labels would have forced a merge.
    debug_assert!(s.active || (0..m).all(|l| l & touch != touch || t.num(l) == 0));
    debug_assert!(d.active || (0..m).all(|l| l & touch != touch || t.bnum(l) == 0));

    let mut out = DpTuple::empty(t.labels());
    for l in 0..m {
        match kind(&s, l) {
            Kind::Plain => {
                out.set_num(l, t.num(l));
                out.set_smllst(l, t.smllst(l));
            }
            Kind::Merged => {
                out.set_num(l, s.size);
                out.set_smllst(l, s.size);
            }
            Kind::Gone => {}
        }
        match kind(&d, l) {
            Kind::Plain => {
                out.set_bnum(l, t.bnum(l));
                out.set_lrgst(l, t.lrgst(l));
            }
            Kind::Merged => {
                out.set_bnum(l, d.size);
                out.set_lrgst(l, d.size);
            }
            Kind::Gone => {}
        }
    }
    let crosses = |l1: usize, l2: usize| (l1 & ib != 0 && l2 & jb != 0) || (l1 & jb != 0 && l2 & ib != 0);
    for l1 in 0..m {
        for l2 in 0..m {
            match (kind(&s, l1), kind(&d, l2)) {
                (Kind::Gone, _) | (_, Kind::Gone) => {}
                (Kind::Plain, Kind::Plain) => {
                    if crosses(l1, l2) {
                        if t.num(l1) > 0 && t.bnum(l2) > 0 {
                            out.set_adjacent(l1, l2, t.smllst(l1), t.lrgst(l2));
                        }
                    } else {
                        out.set_asmllst(l1, l2, t.asmllst(l1, l2));
                        out.set_alrgst(l1, l2, t.alrgst(l1, l2));
                        out.set_mindiff(l1, l2, t.mindiff(l1, l2));
                    }
                }
                (Kind::Merged, Kind::Plain) => {
                    let large = if l2 & touch != 0 {
                        if t.bnum(l2) > 0 {
                            t.lrgst(l2)
                        } else {
                            NEG_INF
                        }
                    } else {
                        s.parts.iter().map(|&p| t.alrgst(p, l2)).max().unwrap_or(NEG_INF)
                    };
                    if large != NEG_INF {
                        out.set_adjacent(l1, l2, s.size, large);
                    }
                }
                (Kind::Plain, Kind::Merged) => {
                    let small = if l1 & touch != 0 {
                        if t.num(l1) > 0 {
                            t.smllst(l1)
                        } else {
                            INF
                        }
                    } else {
                        d.parts.iter().map(|&p| t.asmllst(l1, p)).min().unwrap_or(INF)
                    };
                    if small != INF {
                        out.set_adjacent(l1, l2, small, d.size);
                    }
                }
                (Kind::Merged, Kind::Merged) => out.set_adjacent(l1, l2, s.size, d.size),
            }
        }
    }
    out
}

/// Adding all edges between labels `i` and `j`. Assumes no such edge exists
/// yet, which holds in irredundant expressions.
pub fn dp_join(i: Label, j: Label, child: &DpTable) -> DpTable {
    let mut out = DpTable::default();
    for (t, w) in &child.rows {
        out.insert(join_tuple(t, i, j), w.clone());
    }
    out
}

fn check_dp(expr: &CExpression) -> Result<()> {
    if expr.c > MAX_DP_LABELS {
        return Err(Error::InvalidParameter(format!(
            "the table supports at most {MAX_DP_LABELS} labels, expression declares {}",
            expr.c
        )));
    }
    expr.validate_irredundant()
}

/// Runs the program and keeps the table of every node.
///
/// Witnesses are over the vertices of the whole expression.
pub fn dp_tables(expr: &CExpression) -> Result<Vec<DpTable>> {
    check_dp(expr)?;
    let mut tables: Vec<DpTable> = Vec::with_capacity(expr.nodes.len());
    for t in 0..expr.nodes.len() {
        let table = step(expr, t, |x| &tables[x]);
        tables.push(table);
    }
    Ok(tables)
}

fn step<'a>(expr: &CExpression, t: NodeId, table: impl Fn(NodeId) -> &'a DpTable) -> DpTable {
    match expr.nodes[t] {
        Node::Leaf(l) => dp_leaf(expr.c, l, expr.range[t].0, expr.n()),
        Node::Union(a, b) => dp_union(table(a), table(b)),
        Node::Relabel { from, to, child } => dp_relabel(from, to, table(child)),
        Node::Join { i, j, child } => dp_join(i, j, table(child)),
    }
}

fn root_table(expr: &CExpression) -> Result<DpTable> {
    check_dp(expr)?;
    let mut tables: Vec<Option<DpTable>> = Vec::with_capacity(expr.nodes.len());
    for t in 0..expr.nodes.len() {
        let table = {
            let (a, b) = expr.nodes[t].children();
            let ta = a.and_then(|x| tables[x].take());
            let tb = b.and_then(|x| tables[x].take());
            match expr.nodes[t] {
                Node::Leaf(l) => dp_leaf(expr.c, l, expr.range[t].0, expr.n()),
                Node::Union(..) => dp_union(&ta.expect("child table"), &tb.expect("child table")),
                Node::Relabel { from, to, .. } => dp_relabel(from, to, &ta.expect("child table")),
                Node::Join { i, j, .. } => dp_join(i, j, &ta.expect("child table")),
            }
        };
        tables.push(Some(table));
    }
    Ok(tables[expr.root].take().expect("root table"))
}

/// How the root rows fare under the two connectivity tests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RootReport {
    /// Safe rows.
    pub safe_rows: usize,
    /// Safe rows with exactly one label set carrying solution vertices.
    pub single_label_set_rows: usize,
    /// Safe rows whose solution side is connected.
    pub connected_rows: usize,
    /// Witnesses that pass the single-label-set test but are disconnected.
    pub disconnected_single_label_set: Vec<VertexSet>,
    /// Minimum over the single-label-set rows, if any.
    pub single_label_set_minimum: Option<usize>,
}

/// Minimum safe set or connected safe set of the graph `expr` describes.
pub fn solve_cw(expr: &CExpression, problem: Problem) -> Result<SolveResult> {
    solve_cw_with_report(expr, problem).map(|(r, _)| r)
}

/// [`solve_cw`] together with statistics comparing the single-label-set
/// acceptance test against true connectivity.
pub fn solve_cw_with_report(expr: &CExpression, problem: Problem) -> Result<(SolveResult, RootReport)> {
    let table = root_table(expr)?;
    let (g, _) = expr.eval_graph();
    let mut report = RootReport::default();
    let mut best: Option<(i32, &VertexSet)> = None;
    for (t, w) in &table.rows {
        if !t.is_safe() {
            continue;
        }
        report.safe_rows += 1;
        let single = t.single_label_set();
        let connected = t.is_connected();
        if single {
            report.single_label_set_rows += 1;
            report.single_label_set_minimum =
                Some(report.single_label_set_minimum.map_or(t.size() as usize, |b| b.min(t.size() as usize)));
            if !connected {
                report.disconnected_single_label_set.push(w.clone());
            }
        }
        if connected {
            report.connected_rows += 1;
        }
        let accepted = match problem {
            Problem::SafeSet => true,
            Problem::ConnectedSafeSet => single && connected,
        };
        if accepted && best.is_none_or(|(size, _)| t.size() < size) {
            best = Some((t.size(), w));
        }
    }
    let result = match best {
        None => SolveResult::infeasible(Algorithm::CliqueWidth),
        Some((_, w)) => {
            assert!(graph::satisfies(&g, w, problem), "table witness fails verification");
            SolveResult::found(Algorithm::CliqueWidth, w.clone())
        }
    };
    Ok((result, report))
}
