//! Exact machinery for structure theorems about sparse graphs: density
//! invariants via integral max-flow, reducible-configuration detectors,
//! a replayable discharging engine, constructive colorings, and
//! brute-force oracles that cross-check all of it on small instances.

pub mod config;
pub mod density;
pub mod discharge;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod plane;
pub mod rational;

pub mod color;

pub use graph::{Graph, GraphError, Thread};
pub use plane::PlaneGraph;
pub use rational::Rational;
