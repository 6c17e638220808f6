//! Memory-bounded optimal search on unit-cost graphs.
//!
//! Engines: [`astar`] (A* with an optional stored-node threshold),
//! [`bfhs`] (breadth-first heuristic search over a sliding window of
//! layers), [`bfida`] (iterative deepening on BFHS with divide-and-conquer
//! path recovery) and [`hybrid`] (A* until a memory threshold, then BFHS
//! from the A* frontier). Domains, heuristics and the benchmark harness
//! live in [`domains`], [`heuristics`] and [`bench`].

pub mod astar;
pub mod bench;
pub mod bfida;
pub mod bfhs;
pub mod domains;
pub mod error;
pub mod heuristics;
pub mod hybrid;
pub mod oracle;
pub mod state;
pub mod stats;

pub use error::{Error, Result};
pub use state::{Cost, GoalTest, GraphClass, OpId, PackedState, Solution, StateSpace, INFINITE};
pub use stats::{Budget, Outcome, RunReport, RunStats};
