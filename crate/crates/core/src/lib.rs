//! Deterministic local 3-approximation of minimum vertex cover.
//!
//! Nodes of an anonymous, port-numbered network run a proposal scheme for
//! `2Δ + 1` synchronous steps. The nodes that end up with an accepted
//! outgoing or incoming proposal form a vertex cover at most three times
//! the optimum. Besides the algorithm and the simulator that runs it, the
//! crate carries the machinery to check every run: pair-graph
//! decomposition with a certified lower bound, the bipartite double cover
//! view of the same run, and exact solvers for small instances.

pub mod algorithm;
pub mod analysis;
pub mod corpus;
pub mod double_cover;
pub mod graph;
pub mod oracle;
pub mod ratio;
pub mod simulator;
pub mod verify;
