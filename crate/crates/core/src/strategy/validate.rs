//! Exhaustive check of a strategy against every opponent line.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{Memory, Strategy, StrategyError};
use crate::game::{terminal_status, GameState, Move, Player, Transcript};
use crate::graph::{Graph, Vertex};
use crate::resolving::ResolvingOracle;

pub const DEFAULT_VALIDATION_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Validation {
    WinsAll,
    /// A shortest line on which the strategy loses.
    Counterexample {
        transcript: Transcript,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub strategy: String,
    pub role: Player,
    pub first: Player,
    pub result: Validation,
    /// Distinct positions examined.
    pub positions: usize,
}

impl ValidationReport {
    pub fn wins_all(&self) -> bool {
        self.result == Validation::WinsAll
    }
}

/// Plays `strategy` against all opponent moves from the empty position.
/// Opponent branches at the first opponent turn are searched in parallel;
/// the outcome does not depend on scheduling.
pub fn validate(
    g: &Graph,
    strategy: &dyn Strategy,
    first: Player,
    cap: usize,
) -> Result<ValidationReport, StrategyError> {
    let n = g.order();
    if n > cap {
        return Err(StrategyError::TooLarge { n, cap });
    }
    let oracle = ResolvingOracle::for_graph(g);
    let mut prefix = Vec::new();
    let mut state = GameState::new(first);
    let mut memory = strategy.initial_memory();
    let mut root = Search::new(&oracle, strategy);
    // Strategy moves before the first opponent turn are forced.
    while terminal_status(&oracle, &state).is_none() && state.to_move() == strategy.role() {
        let v = root.pick(&state, &memory)?;
        root.advance(&mut state, &mut memory, &mut prefix, v);
    }
    let opening = |state: &GameState| state.unclaimed(n).to_vec();
    let (depth, branch, positions) = if let Some(winner) = terminal_status(&oracle, &state) {
        (if winner == strategy.role() { WIN } else { 0 }, None, 0)
    } else {
        let results: Vec<Result<(u16, usize), StrategyError>> = opening(&state)
            .par_iter()
            .map(|&v| {
                let mut search = Search::new(&oracle, strategy);
                let mut st = state;
                let mut mem = memory.clone();
                search.advance(&mut st, &mut mem, &mut Vec::new(), v);
                let d = match search.decided_by(&st, st.to_move().opponent(), v) {
                    Some(_) => 0,
                    None => search.depth(st, mem)?,
                };
                Ok((d, search.memo.len()))
            })
            .collect();
        let mut best: Option<(u16, Vertex)> = None;
        let mut positions = 0;
        for (&v, result) in opening(&state).iter().zip(results) {
            let (d, count) = result?;
            positions += count;
            if d != WIN && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, v));
            }
        }
        match best {
            Some((d, v)) => (d, Some(v), positions),
            None => (WIN, None, positions),
        }
    };
    let result = if depth == WIN {
        Validation::WinsAll
    } else {
        if let Some(v) = branch {
            root.advance(&mut state, &mut memory, &mut prefix, v);
        }
        root.line(state, memory, &mut prefix)?;
        Validation::Counterexample {
            transcript: Transcript {
                first,
                moves: prefix,
            },
        }
    };
    Ok(ValidationReport {
        strategy: strategy.name().to_string(),
        role: strategy.role(),
        first,
        result,
        positions,
    })
}

const WIN: u16 = u16::MAX;

struct Search<'a> {
    oracle: &'a ResolvingOracle,
    strategy: &'a dyn Strategy,
    n: usize,
    /// Keyed on `(resolver, spoiler, memory id)`; only positions where the
    /// opponent moves are stored.
    memo: FxHashMap<(u64, u64, u64), u16>,
    /// Memories longer than seven bytes get sequential ids.
    interned: FxHashMap<Memory, u64>,
}

impl<'a> Search<'a> {
    fn new(oracle: &'a ResolvingOracle, strategy: &'a dyn Strategy) -> Self {
        Search {
            oracle,
            strategy,
            n: oracle.order(),
            memo: FxHashMap::default(),
            interned: FxHashMap::default(),
        }
    }

    fn memory_id(&mut self, memory: &Memory) -> u64 {
        if memory.len() < 8 {
            memory
                .iter()
                .fold(memory.len() as u64, |acc, &b| (acc << 8) | b as u64)
        } else {
            let next = (1u64 << 63) | self.interned.len() as u64;
            *self.interned.entry(memory.clone()).or_insert(next)
        }
    }

    fn pick(&self, state: &GameState, memory: &Memory) -> Result<Vertex, StrategyError> {
        let name = || self.strategy.name().to_string();
        let pick = self
            .strategy
            .pick(state, memory)
            .ok_or_else(|| StrategyError::NoMove(name()))?;
        if !state.unclaimed(self.n).contains(pick.vertex) {
            return Err(StrategyError::IllegalPick {
                name: name(),
                vertex: pick.vertex,
            });
        }
        Ok(pick.vertex)
    }

    fn advance(&self, state: &mut GameState, memory: &mut Memory, line: &mut Vec<Move>, v: Vertex) {
        let player = state.to_move();
        self.strategy.observe(memory, state, player, v);
        *state = state.with_move(player, v);
        line.push(Move { player, vertex: v });
    }

    /// Winner created by `mover` claiming `v`, given that the position
    /// before the claim was undecided.
    #[inline]
    fn decided_by(&self, child: &GameState, mover: Player, v: Vertex) -> Option<Player> {
        match mover {
            Player::Resolver => self
                .oracle
                .resolves(child.resolver)
                .then_some(Player::Resolver),
            Player::Spoiler => self
                .oracle
                .kills(child.spoiler, v)
                .then_some(Player::Spoiler),
        }
    }

    /// For an undecided position: `WIN`, or the number of further moves
    /// until the strategy's owner loses against the fastest refutation.
    fn depth(&mut self, state: GameState, memory: Memory) -> Result<u16, StrategyError> {
        let role = self.strategy.role();
        let mover = state.to_move();
        if mover == role {
            let v = self.pick(&state, &memory)?;
            let child = state.with_move(mover, v);
            if self.decided_by(&child, mover, v).is_some() {
                return Ok(WIN);
            }
            let mut memory = memory;
            self.strategy.observe(&mut memory, &state, mover, v);
            let d = self.depth(child, memory)?;
            return Ok(if d == WIN { WIN } else { d + 1 });
        }
        let key = (
            state.resolver.bits(),
            state.spoiler.bits(),
            self.memory_id(&memory),
        );
        if let Some(&d) = self.memo.get(&key) {
            return Ok(d);
        }
        let mut best = WIN;
        for v in state.unclaimed(self.n) {
            let child = state.with_move(mover, v);
            if self.decided_by(&child, mover, v).is_some() {
                best = 1;
                break;
            }
            let mut mem = memory.clone();
            self.strategy.observe(&mut mem, &state, mover, v);
            let d = self.depth(child, mem)?;
            if d != WIN {
                best = best.min(d + 1);
                if best == 2 {
                    break;
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    /// Extends `line` along a shortest losing continuation.
    fn line(
        &mut self,
        mut state: GameState,
        mut memory: Memory,
        line: &mut Vec<Move>,
    ) -> Result<(), StrategyError> {
        let role = self.strategy.role();
        while terminal_status(self.oracle, &state).is_none() {
            let target = self.depth(state, memory.clone())?;
            debug_assert_ne!(target, WIN);
            let v = if state.to_move() == role {
                self.pick(&state, &memory)?
            } else {
                let mut chosen = None;
                let mover = state.to_move();
                for v in state.unclaimed(self.n) {
                    let child = state.with_move(mover, v);
                    let d = if self.decided_by(&child, mover, v).is_some() {
                        0
                    } else {
                        let mut mem = memory.clone();
                        self.strategy.observe(&mut mem, &state, mover, v);
                        self.depth(child, mem)?
                    };
                    if d != WIN && d + 1 == target {
                        chosen = Some(v);
                        break;
                    }
                }
                chosen.expect("a refutation realizing the memoized depth")
            };
            self.advance(&mut state, &mut memory, line, v);
        }
        Ok(())
    }
}

/// Result of [`random_playouts`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayoutReport {
    pub strategy: String,
    pub first: Player,
    pub games: usize,
    pub wins: usize,
    /// The first game the strategy lost, if any.
    pub loss: Option<Transcript>,
}

/// Plays `games` games of `strategy` against an opponent that takes an
/// immediately winning vertex when there is one and a random vertex
/// otherwise. No cap applies.
pub fn random_playouts(
    g: &Graph,
    strategy: &dyn Strategy,
    first: Player,
    games: usize,
    rng: &mut impl rand::Rng,
) -> Result<PlayoutReport, StrategyError> {
    let oracle = ResolvingOracle::for_graph(g);
    let n = g.order();
    let search = Search::new(&oracle, strategy);
    let mut wins = 0;
    let mut loss = None;
    for _ in 0..games {
        let mut state = GameState::new(first);
        let mut memory = strategy.initial_memory();
        let mut moves = Vec::new();
        let winner = loop {
            if let Some(w) = terminal_status(&oracle, &state) {
                break w;
            }
            let mover = state.to_move();
            let v = if mover == strategy.role() {
                search.pick(&state, &memory)?
            } else {
                let free = state.unclaimed(n);
                let winning = free.iter().find(|&v| {
                    search
                        .decided_by(&state.with_move(mover, v), mover, v)
                        .is_some()
                });
                match winning {
                    Some(v) => v,
                    None => {
                        let free = free.to_vec();
                        free[rng.gen_range(0..free.len())]
                    }
                }
            };
            search.advance(&mut state, &mut memory, &mut moves, v);
        };
        if winner == strategy.role() {
            wins += 1;
        } else if loss.is_none() {
            loss = Some(Transcript { first, moves });
        }
    }
    Ok(PlayoutReport {
        strategy: strategy.name().to_string(),
        first,
        games,
        wins,
        loss,
    })
}
