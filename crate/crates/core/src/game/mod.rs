//! The Maker-Breaker resolving game: positions, terminal detection and the
//! exact solver.
//!
//! Resolver (Maker) wins as soon as his claimed vertices form a resolving set.
//! Spoiler (Breaker) wins as soon as the vertices she has not claimed no
//! longer form a resolving set, i.e. she holds a vertex of every resolving
//! set. Both conditions are monotone, so the first one to trigger is final.

mod solver;
mod transcript;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use solver::{
    game_numbers, outcome, solve, solve_parallel, GameNumbers, Solver, SolverConfig,
    DEFAULT_SOLVER_CAP,
};
pub use transcript::{Move, Replay, Transcript, TranscriptError};

use crate::graph::{Graph, Vertex};
use crate::resolving::ResolvingOracle;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Resolver,
    Spoiler,
}

impl Player {
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::Resolver => Player::Spoiler,
            Player::Spoiler => Player::Resolver,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::Resolver => "resolver",
            Player::Spoiler => "spoiler",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "resolver" | "r" => Ok(Player::Resolver),
            "spoiler" | "s" => Ok(Player::Spoiler),
            other => Err(format!(
                "unknown player `{other}` (expected resolver or spoiler)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("graph order {n} exceeds the solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("the game needs a connected graph")]
    Disconnected,
    #[error("the game needs at least two vertices")]
    TooSmall,
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(Vertex),
    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("the second player wins both games; this contradicts the no-skip property")]
    SecondPlayerWinsBoth,
}

/// Claimed sets of both players plus who opened the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub resolver: VertexSet,
    pub spoiler: VertexSet,
    pub first: Player,
}

impl GameState {
    pub fn new(first: Player) -> Self {
        GameState {
            resolver: VertexSet::EMPTY,
            spoiler: VertexSet::EMPTY,
            first,
        }
    }

    #[inline]
    pub fn claimed(&self) -> VertexSet {
        self.resolver.union(self.spoiler)
    }

    #[inline]
    pub fn unclaimed(&self, n: usize) -> VertexSet {
        self.claimed().complement(n)
    }

    #[inline]
    pub fn set_of(&self, player: Player) -> VertexSet {
        match player {
            Player::Resolver => self.resolver,
            Player::Spoiler => self.spoiler,
        }
    }

    #[inline]
    pub fn moves_made(&self) -> usize {
        self.resolver.len() + self.spoiler.len()
    }

    /// Derived from the set sizes.
    #[inline]
    pub fn to_move(&self) -> Player {
        if self.set_of(self.first).len() == self.set_of(self.first.opponent()).len() {
            self.first
        } else {
            self.first.opponent()
        }
    }

    /// Disjoint sets and alternating move counts.
    pub fn is_consistent(&self) -> bool {
        let a = self.set_of(self.first).len();
        let b = self.set_of(self.first.opponent()).len();
        !self.resolver.intersects(self.spoiler) && (a == b || a == b + 1)
    }

    /// Claims `v` for the player to move.
    pub fn play(&self, v: Vertex, n: usize) -> Result<GameState, GameError> {
        if v >= n {
            return Err(GameError::VertexOutOfRange { v, n });
        }
        if self.claimed().contains(v) {
            return Err(GameError::AlreadyClaimed(v));
        }
        Ok(self.with_move(self.to_move(), v))
    }

    /// Unchecked claim by an explicit player (used for skip analysis).
    #[inline]
    pub fn with_move(&self, player: Player, v: Vertex) -> GameState {
        let mut next = *self;
        match player {
            Player::Resolver => next.resolver.insert(v),
            Player::Spoiler => next.spoiler.insert(v),
        }
        next
    }
}

/// Winner under perfect play and the number of moves the winner makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameValue {
    pub winner: Player,
    pub winner_moves: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// Resolver wins no matter who starts.
    R,
    /// Spoiler wins no matter who starts.
    S,
    /// The first player wins.
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::R => "R",
            Outcome::S => "S",
            Outcome::N => "N",
        })
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(Outcome::R),
            "S" => Ok(Outcome::S),
            "N" => Ok(Outcome::N),
            other => Err(format!("unknown outcome `{other}`")),
        }
    }
}

impl Outcome {
    /// Combines the winners of the R-game and the S-game.
    pub fn from_winners(r_game: Player, s_game: Player) -> Result<Outcome, GameError> {
        match (r_game, s_game) {
            (Player::Resolver, Player::Resolver) => Ok(Outcome::R),
            (Player::Spoiler, Player::Spoiler) => Ok(Outcome::S),
            (Player::Resolver, Player::Spoiler) => Ok(Outcome::N),
            (Player::Spoiler, Player::Resolver) => Err(GameError::SecondPlayerWinsBoth),
        }
    }
}

/// Who has won in `state`, if anyone. Resolver's condition is checked first.
#[inline]
pub fn terminal_status(oracle: &ResolvingOracle, state: &GameState) -> Option<Player> {
    if oracle.resolves(state.resolver) {
        Some(Player::Resolver)
    } else if !oracle.resolves(state.spoiler.complement(oracle.order())) {
        Some(Player::Spoiler)
    } else {
        None
    }
}

pub fn terminal_status_in(g: &Graph, state: &GameState) -> Option<Player> {
    terminal_status(&ResolvingOracle::for_graph(g), state)
}
