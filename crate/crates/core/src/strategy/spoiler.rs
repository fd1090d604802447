//! Spoiler strategies that fight inside a single focal copy of `G ⊙ H`.
//!
//! The focal copy is the lowest copy other than the one of Resolver's
//! opening move (copy 0 when Spoiler opens or when `n(G) = 1`). Moves
//! elsewhere are ignored.

use super::local::LocalGame;
use super::{Memory, Pick, Strategy};
use crate::game::{GameState, Player};
use crate::graph::{CoronaFactors, Vertex};
use crate::vertex_set::VertexSet;

const UNSET: u8 = u8::MAX;

struct Focus {
    factors: CoronaFactors,
}

impl Focus {
    fn order(&self) -> usize {
        self.factors.base_order() * (1 + self.factors.fiber_order())
    }

    fn observe(&self, memory: &mut Memory, mover: Player, v: Vertex) {
        if memory[0] != UNSET {
            return;
        }
        memory[0] = match mover {
            Player::Spoiler => 0,
            Player::Resolver => {
                let copy = self.factors.cluster_of(v);
                let j = usize::from(copy == 0);
                if j < self.factors.base_order() {
                    j as u8
                } else {
                    0
                }
            }
        };
    }

    fn copy(&self, memory: &Memory) -> usize {
        if memory[0] == UNSET {
            0
        } else {
            memory[0] as usize
        }
    }

    /// Local `(resolver, spoiler)` sets of the focal copy.
    fn local(&self, copy: usize, state: &GameState) -> (VertexSet, VertexSet) {
        let offset = self.factors.copy_vertex(copy, 0);
        let mask = (1u64 << self.factors.fiber_order()) - 1;
        let project = |set: VertexSet| VertexSet::from_bits((set.bits() >> offset) & mask);
        (project(state.resolver), project(state.spoiler))
    }

    fn fallback(&self, copy: usize, state: &GameState) -> Option<Pick> {
        let free = state.unclaimed(self.order());
        let h = self.factors.fiber_order();
        (0..h)
            .map(|j| self.factors.copy_vertex(copy, j))
            .find(|&v| free.contains(v))
            .or_else(|| free.first())
            .map(|vertex| Pick {
                vertex,
                tag: "filler",
            })
    }
}

/// Optimal Spoiler play on the focal copy for a local game on `H`.
pub struct SpoilerCopy {
    name: String,
    focus: Focus,
    game: LocalGame,
}

impl SpoilerCopy {
    /// `game` is played on the copy vertices; Spoiler needs it to be a
    /// first-player win for her.
    pub fn new(name: impl Into<String>, factors: CoronaFactors, game: LocalGame) -> Self {
        SpoilerCopy {
            name: name.into(),
            focus: Focus { factors },
            game,
        }
    }
}

impl Strategy for SpoilerCopy {
    fn name(&self) -> &str {
        &self.name
    }

    fn role(&self) -> Player {
        Player::Spoiler
    }

    fn initial_memory(&self) -> Memory {
        Memory::from_slice(&[UNSET])
    }

    fn observe(&self, memory: &mut Memory, _before: &GameState, mover: Player, vertex: Vertex) {
        self.focus.observe(memory, mover, vertex);
    }

    fn pick(&self, state: &GameState, memory: &Memory) -> Option<Pick> {
        let copy = self.focus.copy(memory);
        let (r, s) = self.focus.local(copy, state);
        match self.game.spoiler_move(r, s) {
            Some(j) => Some(Pick {
                vertex: self.focus.factors.copy_vertex(copy, j),
                tag: "spoiler copy",
            }),
            None => self.focus.fallback(copy, state),
        }
    }
}

/// The fixed line on a copy of `P_5`: take the centre, then answer `v_1`
/// with `v_5`, `v_2` with `v_4` and mirror images, which leaves one pair
/// of which Spoiler gets a vertex.
pub struct SpoilerP5 {
    focus: Focus,
}

impl SpoilerP5 {
    pub fn new(factors: CoronaFactors) -> Self {
        SpoilerP5 {
            focus: Focus { factors },
        }
    }
}

const P5_PARTNER: [usize; 5] = [4, 3, 2, 1, 0];

impl Strategy for SpoilerP5 {
    fn name(&self) -> &str {
        "spoiler-p5"
    }

    fn role(&self) -> Player {
        Player::Spoiler
    }

    fn initial_memory(&self) -> Memory {
        Memory::from_slice(&[UNSET])
    }

    fn observe(&self, memory: &mut Memory, _before: &GameState, mover: Player, vertex: Vertex) {
        self.focus.observe(memory, mover, vertex);
    }

    fn pick(&self, state: &GameState, memory: &Memory) -> Option<Pick> {
        let copy = self.focus.copy(memory);
        let (r, s) = self.focus.local(copy, state);
        let free = VertexSet::full(5).difference(r.union(s));
        let at = |j: usize, tag| Pick {
            vertex: self.focus.factors.copy_vertex(copy, j),
            tag,
        };
        if free.contains(2) {
            return Some(at(2, "spoiler-p5"));
        }
        let reply = r.iter().map(|x| P5_PARTNER[x]).find(|&y| free.contains(y));
        if let Some(y) = reply {
            return Some(at(y, "spoiler-p5"));
        }
        match free.first() {
            Some(j) => Some(at(j, "spoiler-p5")),
            None => self.focus.fallback(copy, state),
        }
    }
}
