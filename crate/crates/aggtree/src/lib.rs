//! Energy-minimizing data aggregation trees for wireless sensor networks.
//!
//! A sensor network reports readings toward a sink along a routing tree,
//! merging up to `q` unit reports into one packet at every hop. This crate
//! builds such trees with provable energy guarantees, both when every node
//! reports (spanning trees) and when relay nodes may be used or skipped:
//!
//! - shortest-path trees, a 2-approximation for the spanning problem;
//! - a metric-closure Steiner 2-approximation and (alpha, beta) light
//!   approximate shortest-path trees as building blocks;
//! - capacitated routing toward the sink with a 7-approximation, and the
//!   tree extraction pipeline that turns any such routing into an
//!   aggregation tree (a 7- and 2λ-approximation respectively);
//! - exact brute-force oracles, an instance lower bound, NP-hardness
//!   reduction gadgets, adversarial instance families, and a random
//!   geometric graph simulation harness.
//!
//! Start with the `examples/` directory; each example is a small, runnable
//! tour of one capability. The `aggtree` binary exposes the same operations
//! as a command-line tool.

pub mod error;
pub mod rat;

pub mod graph;

pub mod cost;

pub mod trees;

pub mod cnd;

pub mod algos;

pub mod oracle;

pub mod reduction;

pub mod families;

pub mod rgg;

pub mod sweep;

pub mod chart;

pub mod fileio;

pub use error::{AggError, Result};
pub use rat::Rational;
