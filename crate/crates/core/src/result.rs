use core::fmt;
use core::time::Duration;

use crate::graph::VertexSet;

/// Which of the two problems is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    SafeSet,
    ConnectedSafeSet,
}

impl Problem {
    pub fn from_connected(connected: bool) -> Self {
        if connected {
            Problem::ConnectedSafeSet
        } else {
            Problem::SafeSet
        }
    }

    pub fn is_connected(self) -> bool {
        self == Problem::ConnectedSafeSet
    }

    pub fn tag(self) -> &'static str {
        match self {
            Problem::SafeSet => "ss",
            Problem::ConnectedSafeSet => "css",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Oracle,
    Approx,
    NeighborhoodDiversity,
    CliqueWidth,
    Branch,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Approx => "approx",
            Algorithm::NeighborhoodDiversity => "nd",
            Algorithm::CliqueWidth => "cw",
            Algorithm::Branch => "branch",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of a solver run.
///
/// `witness` is present iff `feasible`, and then `size == witness.len()`.
/// `elapsed` is left at zero by the solvers themselves; callers that can
/// read a clock fill it in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    pub size: usize,
    pub witness: Option<VertexSet>,
    pub algorithm: Algorithm,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn found(algorithm: Algorithm, witness: VertexSet) -> Self {
        SolveResult {
            feasible: true,
            size: witness.len(),
            witness: Some(witness),
            algorithm,
            elapsed: Duration::ZERO,
        }
    }

    pub fn infeasible(algorithm: Algorithm) -> Self {
        SolveResult {
            feasible: false,
            size: 0,
            witness: None,
            algorithm,
            elapsed: Duration::ZERO,
        }
    }

    /// Keeps the smaller of two results; ties keep `self`.
    pub(crate) fn min_with(self, other: SolveResult) -> SolveResult {
        match (self.feasible, other.feasible) {
            (false, _) => other,
            (true, false) => self,
            (true, true) => {
                if other.size < self.size {
                    other
                } else {
                    self
                }
            }
        }
    }
}
