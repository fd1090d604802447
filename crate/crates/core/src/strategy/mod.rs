//! Constructive strategies as deterministic move pickers, and an exhaustive
//! validator that plays a strategy against every opponent line.
//!
//! A strategy is pure: its choice depends on the position and a small
//! memory folded from the move history by [`Strategy::observe`]. The
//! validator memoizes on `(position, memory)`, which is sound for exactly
//! that reason.

mod catalog;
mod copywise;
mod local;
mod pairing;
mod spoiler;
mod validate;

use smallvec::SmallVec;
use thiserror::Error;

pub use catalog::{build, catalog, Applicability, CatalogEntry};
pub use copywise::{CopyPlan, CopywiseResolver, LocalSets, PairBlocks};
pub use local::{LocalGame, LOCAL_GAME_CAP};
pub use pairing::PairingStrategy;
pub use spoiler::{SpoilerCopy, SpoilerP5};
pub use validate::{
    random_playouts, validate, PlayoutReport, Validation, ValidationReport, DEFAULT_VALIDATION_CAP,
};

use crate::game::{GameError, GameState, Move, Player};
use crate::graph::{GraphError, Vertex};
use crate::resolving::ResolvingError;

/// Per-game scratch state of a strategy.
pub type Memory = SmallVec<[u8; 16]>;

/// A chosen vertex plus the mechanism that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pick {
    pub vertex: Vertex,
    pub tag: &'static str,
}

pub trait Strategy: Send + Sync {
    fn name(&self) -> &str;

    fn role(&self) -> Player;

    fn initial_memory(&self) -> Memory {
        Memory::new()
    }

    /// Called for every move of either player, with the position before it.
    fn observe(&self, _memory: &mut Memory, _before: &GameState, _mover: Player, _vertex: Vertex) {}

    /// The move for the strategy's owner. Must return an unclaimed vertex
    /// whenever one exists.
    fn pick(&self, state: &GameState, memory: &Memory) -> Option<Pick>;
}

impl std::fmt::Debug for dyn Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Strategy({}, {})", self.name(), self.role())
    }
}

/// Folds a move history into the strategy's memory.
pub fn memory_after(strategy: &dyn Strategy, first: Player, history: &[Move]) -> Memory {
    let mut memory = strategy.initial_memory();
    let mut state = GameState::new(first);
    for m in history {
        strategy.observe(&mut memory, &state, m.player, m.vertex);
        state = state.with_move(m.player, m.vertex);
    }
    memory
}

/// `pick` as a function of the full history.
pub fn pick_from_history(strategy: &dyn Strategy, first: Player, history: &[Move]) -> Option<Pick> {
    let memory = memory_after(strategy, first, history);
    let mut state = GameState::new(first);
    for m in history {
        state = state.with_move(m.player, m.vertex);
    }
    strategy.pick(&state, &memory)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error("strategy `{name}` does not apply: {reason}")]
    NotApplicable { name: String, reason: String },
    #[error("graph order {n} exceeds the validation cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("strategy `{name}` picked vertex {vertex}, which is not available")]
    IllegalPick { name: String, vertex: Vertex },
    #[error("strategy `{0}` passed although vertices remain")]
    NoMove(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Resolving(#[from] ResolvingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn not_applicable(name: &str, reason: impl Into<String>) -> StrategyError {
    StrategyError::NotApplicable {
        name: name.to_string(),
        reason: reason.into(),
    }
}
