//! Maker-Breaker resolving game on graphs and corona products.
//!
//! * [`graph`]: generators, the corona product, the expression language, distances.
//! * [`resolving`]: resolving, locating and pairing-resolving sets.
//! * [`game`]: positions, terminal detection and the exact solver.
//! * [`strategy`]: constructive strategies and their exhaustive validator.
//! * [`harness`]: verification campaigns and their reports.
//! * [`session`]: a live game against the solver or a named strategy.
//! * [`api`]: the request/response documents shared by the service and the CLI.

pub mod api;
pub mod game;
pub mod graph;
pub mod harness;
pub mod resolving;
pub mod session;
pub mod strategy;
pub mod vertex_set;

pub use game::{GameState, GameValue, Outcome, Player};
pub use graph::{Graph, Vertex};
pub use vertex_set::VertexSet;
