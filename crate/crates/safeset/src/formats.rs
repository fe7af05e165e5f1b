//! Graph, bigraph, sidecar and decomposition file formats.
//!
//! Graph files start with `n m` and list `m` edges `u v`, one per line,
//! 0-indexed. Bigraph files start with `r b m` and list `m` pairs `i j`
//! joining red vertex `i` to blue vertex `j`. Blank lines and everything
//! after `#` are ignored in both.

use std::fmt;

use safeset_core::reductions::{Bigraph, ReductionOutput, Source};
use safeset_core::{Graph, PathDecomposition};
use serde::{Deserialize, Serialize};

/// A malformed input file, with the 1-based line the problem was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers<const N: usize>(line: usize, text: &str) -> Result<[usize; N], ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return fail(line, format!("expected {N} integers, found {} fields", fields.len()));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| ParseError { line, message: format!("not a non-negative integer: {f:?}") })?;
    }
    Ok(out)
}

/// Header fields, then `(line, [a, b])` records.
type Records<const H: usize> = ([usize; H], Vec<(usize, [usize; 2])>);

/// Header and body of a file whose header announces the body length last.
fn records<const H: usize>(text: &str) -> Result<Records<H>, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return fail(1, "missing header line");
    };
    let header = numbers::<H>(hl, header)?;
    let m = header[H - 1];
    let mut body = Vec::with_capacity(m);
    let mut last = hl;
    for (l, text) in lines {
        if body.len() == m {
            return fail(l, format!("more than the {m} announced records"));
        }
        body.push((l, numbers::<2>(l, text)?));
        last = l;
    }
    if body.len() < m {
        return fail(last, format!("expected {m} records, found {}", body.len()));
    }
    Ok((header, body))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let ([n, _], body) = records::<2>(text)?;
    let mut seen = std::collections::BTreeSet::new();
    for &(l, [u, v]) in &body {
        if u >= n || v >= n {
            return fail(l, format!("vertex {} out of range for {n} vertices", u.max(v)));
        }
        if u == v {
            return fail(l, format!("self-loop at vertex {u}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return fail(l, format!("duplicate edge {u} {v}"));
        }
    }
    Ok(Graph::from_edge_iter(n, body.iter().map(|&(_, [u, v])| (u, v))).expect("validated edges"))
}

/// The graph in its text format, edges in increasing order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_bigraph(text: &str) -> Result<Bigraph, ParseError> {
    let ([r, b, _], body) = records::<3>(text)?;
    let mut seen = std::collections::BTreeSet::new();
    for &(l, [i, j]) in &body {
        if i >= r {
            return fail(l, format!("red vertex {i} out of range for {r}"));
        }
        if j >= b {
            return fail(l, format!("blue vertex {j} out of range for {b}"));
        }
        if !seen.insert((i, j)) {
            return fail(l, format!("duplicate edge {i} {j}"));
        }
    }
    Ok(Bigraph::new(r, b, body.iter().map(|&(_, [i, j])| (i, j)).collect()).expect("validated edges"))
}

pub fn write_bigraph(bg: &Bigraph) -> String {
    let mut out = format!("{} {} {}\n", bg.red(), bg.blue(), bg.edges().len());
    for &(i, j) in bg.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

/// JSON companion of a generated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub target: usize,
    pub role_map: Vec<String>,
    pub source: SourceRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum SourceRecord {
    DominatingSet { k: usize, n: usize, edges: Vec<(usize, usize)> },
    RedBlueDominatingSet { k: usize, red: usize, blue: usize, edges: Vec<(usize, usize)> },
}

impl Sidecar {
    pub fn new(out: &ReductionOutput) -> Self {
        let source = match &out.source {
            Source::DominatingSet { graph, k } => SourceRecord::DominatingSet {
                k: *k,
                n: graph.n(),
                edges: graph.edges().collect(),
            },
            Source::RedBlue { bigraph, k } => SourceRecord::RedBlueDominatingSet {
                k: *k,
                red: bigraph.red(),
                blue: bigraph.blue(),
                edges: bigraph.edges().to_vec(),
            },
        };
        Sidecar {
            target: out.target,
            role_map: out.roles.iter().map(ToString::to_string).collect(),
            source,
        }
    }
}

/// A path decomposition as a JSON array of bags.
pub fn decomposition_json(pd: &PathDecomposition) -> String {
    serde_json::to_string(&pd.bags).expect("plain integers")
}

pub fn parse_decomposition(text: &str) -> serde_json::Result<PathDecomposition> {
    serde_json::from_str::<Vec<Vec<usize>>>(text).map(PathDecomposition::new)
}

/// Parses `0,1,4,5`; surrounding whitespace and an empty list are allowed.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|f| f.trim().parse().map_err(|_| format!("not a vertex id: {:?}", f.trim())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("# square\n4 4\n0 1\n1 2\n\n2 3 # last\n3 0\n").unwrap();
        assert_eq!(g.m(), 4);
        let again = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(again, g);
        assert_eq!(write_graph(&g), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn graph_errors_carry_lines() {
        let err = |t: &str| parse_graph(t).unwrap_err();
        assert_eq!(err("").line, 1);
        assert_eq!(err("3 2\n0 1\n1 1\n").line, 3);
        assert_eq!(err("3 2\n0 1\n1 0\n").line, 3);
        assert_eq!(err("3 1\n0 3\n").line, 2);
        assert_eq!(err("3 1\n0 1\n1 2\n").line, 3);
        assert_eq!(err("3 2\n0 1\n").line, 2);
        assert_eq!(err("3 1\n0 x\n").to_string(), "line 2: not a non-negative integer: \"x\"");
        assert_eq!(err("3\n").line, 1);
    }

    #[test]
    fn bigraph_round_trip() {
        let bg = parse_bigraph("2 1 2\n0 0\n1 0\n").unwrap();
        assert_eq!((bg.red(), bg.blue(), bg.edges().len()), (2, 1, 2));
        assert_eq!(parse_bigraph(&write_bigraph(&bg)).unwrap(), bg);
        assert_eq!(parse_bigraph("1 1 1\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_bigraph("1 1 2\n0 0\n0 0\n").unwrap_err().line, 3);
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("0,1, 4 ,5"), Ok(vec![0, 1, 4, 5]));
        assert_eq!(parse_vertex_list(""), Ok(vec![]));
        assert!(parse_vertex_list("0,,1").is_err());
        assert!(parse_vertex_list("-1").is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        let text = decomposition_json(&pd);
        assert_eq!(text, "[[0,1],[1,2]]");
        assert_eq!(parse_decomposition(&text).unwrap(), pd);
    }
}
