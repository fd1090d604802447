use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{GameError, GameState, GameValue, Outcome, Player};
use crate::graph::{Graph, Vertex};
use crate::resolving::ResolvingOracle;
use crate::vertex_set::VertexSet;

/// Default order limit for exact solving.
pub const DEFAULT_SOLVER_CAP: usize = 16;

/// Orders up to this use a flat base-3 table instead of a hash map.
const DENSE_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub cap: usize,
    /// Try vertices that resolve the most open pairs first. Only affects
    /// search speed, never the returned values.
    pub heuristic_order: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cap: DEFAULT_SOLVER_CAP,
            heuristic_order: false,
        }
    }
}

/// `R_MB`, `R'_MB`, `S_MB`, `S'_MB`; each present only when its player wins
/// the corresponding game.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameNumbers {
    pub r_mb: Option<u32>,
    pub r_mb_prime: Option<u32>,
    pub s_mb: Option<u32>,
    pub s_mb_prime: Option<u32>,
}

enum Table {
    /// Indexed by `2·(Σ_{v∈R} 3^v + 2·Σ_{v∈S} 3^v) + turn`.
    Dense(Vec<u8>),
    Sparse(FxHashMap<(u64, u64, bool), u8>),
}

const PRESENT: u8 = 0x80;
const SPOILER_WINS: u8 = 0x40;

#[inline]
fn pack(v: GameValue) -> u8 {
    let w = if v.winner == Player::Spoiler {
        SPOILER_WINS
    } else {
        0
    };
    PRESENT | w | v.winner_moves as u8
}

#[inline]
fn unpack(b: u8) -> Option<GameValue> {
    (b & PRESENT != 0).then_some(GameValue {
        winner: if b & SPOILER_WINS != 0 {
            Player::Spoiler
        } else {
            Player::Resolver
        },
        winner_moves: (b & 0x3f) as u32,
    })
}

/// Lower is better for `mover`: a win with few own moves beats a win with
/// many; among losses, the one that costs the winner the most moves is best.
#[inline]
fn rank(mover: Player, v: GameValue) -> (u8, i64) {
    if v.winner == mover {
        (0, v.winner_moves as i64)
    } else {
        (1, -(v.winner_moves as i64))
    }
}

/// Memoized minimax over claimed-set pairs.
///
/// Values follow the lexicographic convention: the winner is decided by
/// perfect play, the winner minimizes its own move count and the loser
/// maximizes it. Positions need not be reachable by strict alternation, so
/// the side to move is part of the key.
pub struct Solver {
    n: usize,
    oracle: ResolvingOracle,
    config: SolverConfig,
    table: Table,
    pow3: Vec<u64>,
    full: VertexSet,
    nodes: u64,
}

impl Solver {
    pub fn new(g: &Graph, config: SolverConfig) -> Result<Self, GameError> {
        let n = g.order();
        if n > config.cap {
            return Err(GameError::TooLarge { n, cap: config.cap });
        }
        if n < 2 {
            return Err(GameError::TooSmall);
        }
        if !g.is_connected() {
            return Err(GameError::Disconnected);
        }
        let pow3: Vec<u64> = (0..n as u32).map(|i| 3u64.pow(i.min(40))).collect();
        let table = if n <= DENSE_MAX_ORDER {
            Table::Dense(vec![0; 2 * 3usize.pow(n as u32)])
        } else {
            Table::Sparse(FxHashMap::default())
        };
        Ok(Solver {
            n,
            oracle: ResolvingOracle::for_graph(g),
            config,
            table,
            pow3,
            full: VertexSet::full(n),
            nodes: 0,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn oracle(&self) -> &ResolvingOracle {
        &self.oracle
    }

    /// Positions expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn solve(&mut self, first: Player) -> GameValue {
        self.value(&GameState::new(first))
    }

    pub fn value(&mut self, state: &GameState) -> GameValue {
        self.value_at(state.resolver, state.spoiler, state.to_move())
    }

    /// Value of an arbitrary position with `to_move` to play.
    pub fn value_at(&mut self, r: VertexSet, s: VertexSet, to_move: Player) -> GameValue {
        let idx = self.index(r, s);
        self.search(r, s, to_move, idx)
    }

    /// Values of every legal move from a non-terminal position, in vertex order.
    pub fn children(
        &mut self,
        r: VertexSet,
        s: VertexSet,
        to_move: Player,
    ) -> Vec<(Vertex, GameValue)> {
        let unclaimed = r.union(s).complement(self.n);
        unclaimed
            .iter()
            .map(|v| {
                let (r2, s2) = claim(r, s, to_move, v);
                (v, self.value_at(r2, s2, to_move.opponent()))
            })
            .collect()
    }

    /// The best move for `to_move` with its value; ties go to the smallest
    /// vertex id. `None` when no vertex is left.
    pub fn best_move(
        &mut self,
        r: VertexSet,
        s: VertexSet,
        to_move: Player,
    ) -> Option<(Vertex, GameValue)> {
        self.children(r, s, to_move)
            .into_iter()
            .min_by_key(|&(v, val)| (rank(to_move, val), v))
    }

    pub fn outcome(&mut self) -> Result<Outcome, GameError> {
        let r = self.solve(Player::Resolver);
        let s = self.solve(Player::Spoiler);
        Outcome::from_winners(r.winner, s.winner)
    }

    pub fn numbers(&mut self) -> GameNumbers {
        let r_game = self.solve(Player::Resolver);
        let s_game = self.solve(Player::Spoiler);
        let pick = |v: GameValue, p: Player| (v.winner == p).then_some(v.winner_moves);
        GameNumbers {
            r_mb: pick(r_game, Player::Resolver),
            s_mb: pick(r_game, Player::Spoiler),
            r_mb_prime: pick(s_game, Player::Resolver),
            s_mb_prime: pick(s_game, Player::Spoiler),
        }
    }

    #[inline]
    fn index(&self, r: VertexSet, s: VertexSet) -> u64 {
        r.iter().map(|v| self.pow3[v]).sum::<u64>()
            + 2 * s.iter().map(|v| self.pow3[v]).sum::<u64>()
    }

    #[inline]
    fn terminal(&self, r: VertexSet, s: VertexSet) -> Option<GameValue> {
        if self.oracle.resolves(r) {
            Some(GameValue {
                winner: Player::Resolver,
                winner_moves: r.len() as u32,
            })
        } else if !self.oracle.resolves(self.full.difference(s)) {
            Some(GameValue {
                winner: Player::Spoiler,
                winner_moves: s.len() as u32,
            })
        } else {
            None
        }
    }

    #[inline]
    fn lookup(&self, r: VertexSet, s: VertexSet, to_move: Player, idx: u64) -> Option<GameValue> {
        let turn = to_move == Player::Spoiler;
        match &self.table {
            Table::Dense(t) => unpack(t[(2 * idx) as usize + turn as usize]),
            Table::Sparse(m) => m.get(&(r.bits(), s.bits(), turn)).copied().and_then(unpack),
        }
    }

    #[inline]
    fn store(&mut self, r: VertexSet, s: VertexSet, to_move: Player, idx: u64, v: GameValue) {
        let turn = to_move == Player::Spoiler;
        match &mut self.table {
            Table::Dense(t) => t[(2 * idx) as usize + turn as usize] = pack(v),
            Table::Sparse(m) => {
                m.insert((r.bits(), s.bits(), turn), pack(v));
            }
        }
    }

    fn move_order(&self, r: VertexSet, unclaimed: VertexSet) -> Vec<Vertex> {
        let mut order = unclaimed.to_vec();
        if self.config.heuristic_order {
            order.sort_by_key(|&v| std::cmp::Reverse(self.oracle.gain(r, v)));
        }
        order
    }

    fn search(&mut self, r: VertexSet, s: VertexSet, to_move: Player, idx: u64) -> GameValue {
        match self.terminal(r, s) {
            Some(v) => v,
            None => self.search_open(r, s, to_move, idx),
        }
    }

    /// Like `search` for a position known to be undecided. Children are
    /// tested only for the win the last claim could have created.
    fn search_open(&mut self, r: VertexSet, s: VertexSet, to_move: Player, idx: u64) -> GameValue {
        if let Some(v) = self.lookup(r, s, to_move, idx) {
            return v;
        }
        self.nodes += 1;
        let unclaimed = r.union(s).complement(self.n);
        let fastest = (match to_move {
            Player::Resolver => r.len(),
            Player::Spoiler => s.len(),
        } + 1) as u32;
        let digit = if to_move == Player::Resolver { 1 } else { 2 };
        let mut best: Option<GameValue> = None;
        for v in self.move_order(r, unclaimed) {
            let (r2, s2) = claim(r, s, to_move, v);
            let won = match to_move {
                Player::Resolver => self.oracle.resolves(r2),
                Player::Spoiler => self.oracle.kills(s2, v),
            };
            let child = if won {
                let moves = if to_move == Player::Resolver {
                    r2.len()
                } else {
                    s2.len()
                };
                GameValue {
                    winner: to_move,
                    winner_moves: moves as u32,
                }
            } else {
                self.search_open(r2, s2, to_move.opponent(), idx + digit * self.pow3[v])
            };
            if best.is_none_or(|b| rank(to_move, child) < rank(to_move, b)) {
                best = Some(child);
            }
            if child.winner == to_move && child.winner_moves == fastest {
                break;
            }
        }
        // a non-terminal position always has an unclaimed vertex: if all
        // were claimed, R would be the complement of S
        let best = best.expect("non-terminal position with no moves");
        self.store(r, s, to_move, idx, best);
        best
    }
}

#[inline]
fn claim(r: VertexSet, s: VertexSet, player: Player, v: Vertex) -> (VertexSet, VertexSet) {
    match player {
        Player::Resolver => (r.with(v), s),
        Player::Spoiler => (r, s.with(v)),
    }
}

pub fn solve(g: &Graph, first: Player, config: SolverConfig) -> Result<GameValue, GameError> {
    Ok(Solver::new(g, config)?.solve(first))
}

/// First-ply moves are solved concurrently, each worker with its own table.
/// Produces the same value as [`solve`].
pub fn solve_parallel(
    g: &Graph,
    first: Player,
    config: SolverConfig,
) -> Result<GameValue, GameError> {
    let root = Solver::new(g, config)?;
    let n = root.n;
    let values: Vec<GameValue> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut worker = Solver::new(g, config).expect("validated above");
            let (r, s) = claim(VertexSet::EMPTY, VertexSet::EMPTY, first, v);
            worker.value_at(r, s, first.opponent())
        })
        .collect();
    Ok(values
        .into_iter()
        .min_by_key(|&v| rank(first, v))
        .expect("n >= 2"))
}

pub fn outcome(g: &Graph, config: SolverConfig) -> Result<Outcome, GameError> {
    Solver::new(g, config)?.outcome()
}

pub fn game_numbers(g: &Graph, config: SolverConfig) -> Result<GameNumbers, GameError> {
    Ok(Solver::new(g, config)?.numbers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::terminal_status;
    use crate::graph::parse_graph_expr;

    fn g(expr: &str) -> Graph {
        parse_graph_expr(expr).unwrap()
    }

    /// Plain minimax over move sequences: no table, no cutoffs, no
    /// shared code with the solver beyond the terminal test.
    fn naive(oracle: &ResolvingOracle, state: GameState, n: usize) -> GameValue {
        if let Some(w) = terminal_status(oracle, &state) {
            return GameValue {
                winner: w,
                winner_moves: state.set_of(w).len() as u32,
            };
        }
        let mover = state.to_move();
        let mut vals: Vec<GameValue> = state
            .unclaimed(n)
            .iter()
            .map(|v| naive(oracle, state.play(v, n).unwrap(), n))
            .collect();
        vals.sort_by_key(|&v| rank(mover, v));
        vals[0]
    }

    #[test]
    fn p2_resolver_first() {
        assert_eq!(
            solve(&g("path(2)"), Player::Resolver, SolverConfig::default()).unwrap(),
            GameValue {
                winner: Player::Resolver,
                winner_moves: 1
            }
        );
    }

    #[test]
    fn k3_spoiler_first() {
        assert_eq!(
            solve(&g("complete(3)"), Player::Spoiler, SolverConfig::default()).unwrap(),
            GameValue {
                winner: Player::Spoiler,
                winner_moves: 2
            }
        );
    }

    #[test]
    fn k1_corona_p5_first_player_wins() {
        let graph = g("corona(k1,path(5))");
        let cfg = SolverConfig::default();
        assert_eq!(
            solve(&graph, Player::Resolver, cfg).unwrap().winner,
            Player::Resolver
        );
        assert_eq!(
            solve(&graph, Player::Spoiler, cfg).unwrap().winner,
            Player::Spoiler
        );
    }

    #[test]
    fn outcome_examples() {
        let cfg = SolverConfig::default();
        assert_eq!(outcome(&g("path(5)"), cfg).unwrap(), Outcome::R);
        assert_eq!(outcome(&g("cycle(3)"), cfg).unwrap(), Outcome::N);
        assert_eq!(
            outcome(&g("corona(path(2),cycle(3))"), cfg).unwrap(),
            Outcome::S
        );
    }

    #[test]
    fn numbers_examples() {
        let cfg = SolverConfig::default();
        let p4 = game_numbers(&g("path(4)"), cfg).unwrap();
        assert_eq!((p4.r_mb, p4.r_mb_prime), (Some(1), Some(1)));
        let k3 = game_numbers(&g("complete(3)"), cfg).unwrap();
        assert_eq!(
            k3,
            GameNumbers {
                r_mb: Some(2),
                r_mb_prime: None,
                s_mb: None,
                s_mb_prime: Some(2)
            }
        );
        let c4 = game_numbers(&g("cycle(4)"), cfg).unwrap();
        assert_eq!((c4.r_mb, c4.r_mb_prime), (Some(2), Some(2)));
        let k2c4 = game_numbers(&g("corona(path(2),cycle(4))"), cfg).unwrap();
        assert_eq!((k2c4.r_mb, k2c4.r_mb_prime), (Some(4), Some(4)));
    }

    #[test]
    fn agrees_with_naive_minimax() {
        for expr in [
            "path(4)",
            "cycle(5)",
            "complete(4)",
            "paw",
            "star(4)",
            "corona(k1,path(3))",
            "corona(path(2),path(2))",
        ] {
            let graph = g(expr);
            let oracle = ResolvingOracle::for_graph(&graph);
            let mut solver = Solver::new(&graph, SolverConfig::default()).unwrap();
            for first in [Player::Resolver, Player::Spoiler] {
                let expected = naive(&oracle, GameState::new(first), graph.order());
                assert_eq!(solver.solve(first), expected, "{expr} {first}");
            }
        }
    }

    #[test]
    fn heuristic_order_and_parallel_are_identical() {
        for expr in ["petersen", "corona(path(2),path(3))", "corona(k1,paw)"] {
            let graph = g(expr);
            for first in [Player::Resolver, Player::Spoiler] {
                let plain = solve(&graph, first, SolverConfig::default()).unwrap();
                let ordered = solve(
                    &graph,
                    first,
                    SolverConfig {
                        heuristic_order: true,
                        ..Default::default()
                    },
                )
                .unwrap();
                let par = solve_parallel(&graph, first, SolverConfig::default()).unwrap();
                assert_eq!(plain, ordered);
                assert_eq!(plain, par);
                assert_eq!(
                    plain,
                    solve(&graph, first, SolverConfig::default()).unwrap()
                );
            }
        }
    }

    #[test]
    fn sparse_table_matches_dense() {
        let graph = g("corona(path(2),path(3))");
        let mut dense = Solver::new(&graph, SolverConfig::default()).unwrap();
        let mut sparse = Solver::new(&graph, SolverConfig::default()).unwrap();
        sparse.table = Table::Sparse(FxHashMap::default());
        for first in [Player::Resolver, Player::Spoiler] {
            assert_eq!(dense.solve(first), sparse.solve(first));
        }
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            Solver::new(&g("path(17)"), SolverConfig::default()).err(),
            Some(GameError::TooLarge { n: 17, cap: 16 })
        );
        assert_eq!(
            Solver::new(&g("k1"), SolverConfig::default()).err(),
            Some(GameError::TooSmall)
        );
        let two = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(
            Solver::new(&two, SolverConfig::default()).err(),
            Some(GameError::Disconnected)
        );
    }

    #[test]
    fn best_move_preserves_value() {
        let graph = g("corona(path(2),cycle(4))");
        let mut solver = Solver::new(&graph, SolverConfig::default()).unwrap();
        let root = solver.solve(Player::Spoiler);
        let (_, v) = solver
            .best_move(VertexSet::EMPTY, VertexSet::EMPTY, Player::Spoiler)
            .unwrap();
        assert_eq!(root, v);
    }
}
