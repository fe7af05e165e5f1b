//! Algorithms for the safe set and connected safe set problems.
//!
//! A non-empty vertex set `S` of a graph is *safe* when no connected
//! component of `G[S]` is adjacent to a strictly larger component of
//! `G - S`; it is a *connected* safe set when `G[S]` is connected.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`graph`]: graphs, vertex sets, components, the safe-set verifier and
//!   the path-decomposition validator.
//! * [`oracle`]: exhaustive reference implementations used as ground truth.
//! * [`preprocess`]: the polynomial-time approximation and kernel-style rules.
//! * [`nd`] and [`ip`]: the algorithm parameterized by neighborhood diversity
//!   and the bounded-box integer program solver it relies on.
//! * [`cw`]: the dynamic program over irredundant clique-width expressions.
//! * [`branch`]: the branching algorithm parameterized by solution size,
//!   completed with exact Steiner trees.
//! * [`reductions`]: instance generators from Dominating Set and Red-Blue
//!   Dominating Set, with their certificates.
#![no_std]

extern crate alloc;

pub mod branch;
pub mod cw;
pub mod error;
pub mod graph;
pub mod ip;
pub mod nd;
pub mod oracle;
pub mod preprocess;
pub mod reductions;
mod result;

pub use error::{Error, Result};
pub use graph::{Graph, PathDecomposition, VertexSet};
pub use result::{Algorithm, Problem, SolveResult};
