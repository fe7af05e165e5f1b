//! JSON documents printed on stdout.

use safeset_core::graph::SafetyViolation;
use safeset_core::{Graph, Problem, SolveResult, VertexSet};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub algorithm: &'static str,
    pub problem: &'static str,
    pub feasible: bool,
    pub size: usize,
    /// Sorted; empty when infeasible.
    pub witness: Vec<usize>,
    pub stats: Stats,
    pub elapsed_ms: f64,
    pub input_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nd: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
}

impl Stats {
    pub fn of(g: &Graph) -> Self {
        Stats { n: g.n(), m: g.m(), max_degree: g.max_degree(), nd: None, c: None }
    }
}

impl RunReport {
    pub fn new(result: &SolveResult, problem: Problem, stats: Stats, input: &[u8]) -> Self {
        RunReport {
            algorithm: result.algorithm.tag(),
            problem: problem.tag(),
            feasible: result.feasible,
            size: result.size,
            witness: result.witness.as_ref().map(VertexSet::to_vec).unwrap_or_default(),
            stats,
            elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
            input_sha256: digest(input),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub problem: &'static str,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Empty,
    Disconnected { components: usize },
    /// A component `c` of `G[S]` next to a larger component `d` of `G - S`.
    LargerNeighbor { c: Vec<usize>, d: Vec<usize> },
}

impl From<SafetyViolation> for Violation {
    fn from(v: SafetyViolation) -> Self {
        match v {
            SafetyViolation::Empty => Violation::Empty,
            SafetyViolation::Disconnected { components } => Violation::Disconnected { components },
            SafetyViolation::LargerNeighbor { component, neighbor } => Violation::LargerNeighbor {
                c: component.to_vec(),
                d: neighbor.to_vec(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use safeset_core::Algorithm;

    #[test]
    fn report_field_order_is_stable() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let w = VertexSet::from_members(2, [0]).unwrap();
        let r = RunReport::new(&SolveResult::found(Algorithm::Oracle, w), Problem::SafeSet, Stats::of(&g), b"2 1\n0 1\n");
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"algorithm":"oracle","problem":"ss","feasible":true,"size":1,"witness":[0],"stats":{"n":2,"m":1,"max_degree":1},"elapsed_ms":0.0,"input_sha256":""#));
    }

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(digest(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
