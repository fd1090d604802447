use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{terminal_status, GameState, Player};
use crate::graph::Vertex;
use crate::resolving::ResolvingOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub player: Player,
    pub vertex: Vertex,
}

/// A game record. Text form: one `R <v>` or `S <v>` per line, first line
/// `first resolver|spoiler`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub first: Player,
    pub moves: Vec<Move>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranscriptError {
    #[error("move {index}: expected {expected} to move")]
    OutOfTurn { index: usize, expected: Player },
    #[error("move {index}: vertex {vertex} is not available")]
    Illegal { index: usize, vertex: Vertex },
    #[error("move {index}: the game was already won by {winner}")]
    AfterEnd { index: usize, winner: Player },
    #[error("transcript line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replay {
    pub state: GameState,
    pub winner: Option<Player>,
}

impl Transcript {
    pub fn new(first: Player) -> Self {
        Transcript {
            first,
            moves: Vec::new(),
        }
    }

    /// Re-validates every move and reports the final position.
    pub fn replay(&self, oracle: &ResolvingOracle) -> Result<Replay, TranscriptError> {
        let n = oracle.order();
        let mut state = GameState::new(self.first);
        let mut winner = None;
        for (index, m) in self.moves.iter().enumerate() {
            if let Some(winner) = winner {
                return Err(TranscriptError::AfterEnd { index, winner });
            }
            let expected = state.to_move();
            if m.player != expected {
                return Err(TranscriptError::OutOfTurn { index, expected });
            }
            state = state
                .play(m.vertex, n)
                .map_err(|_| TranscriptError::Illegal {
                    index,
                    vertex: m.vertex,
                })?;
            winner = terminal_status(oracle, &state);
        }
        Ok(Replay { state, winner })
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "first {}", self.first)?;
        for m in &self.moves {
            let tag = match m.player {
                Player::Resolver => 'R',
                Player::Spoiler => 'S',
            };
            writeln!(f, "{tag} {}", m.vertex)?;
        }
        Ok(())
    }
}

impl FromStr for Transcript {
    type Err = TranscriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line, message: &str| TranscriptError::Syntax {
            line,
            message: message.to_string(),
        };
        let (line, header) = lines.next().ok_or_else(|| syntax(1, "empty transcript"))?;
        let first = header
            .strip_prefix("first")
            .map(str::trim)
            .ok_or_else(|| syntax(line, "expected `first <player>`"))?
            .parse::<Player>()
            .map_err(|e| syntax(line, &e))?;
        let mut moves = Vec::new();
        for (line, text) in lines {
            let mut parts = text.split_whitespace();
            let player = parts
                .next()
                .ok_or_else(|| syntax(line, "missing player"))?
                .parse::<Player>()
                .map_err(|e| syntax(line, &e))?;
            let vertex = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| syntax(line, "missing or invalid vertex"))?;
            if parts.next().is_some() {
                return Err(syntax(line, "trailing input"));
            }
            moves.push(Move { player, vertex });
        }
        Ok(Transcript { first, moves })
    }
}
