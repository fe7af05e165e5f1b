//! Text formats, JSON reports and the `safeset` command line built on
//! [`safeset_core`].

pub mod cli;
pub mod formats;
pub mod report;
