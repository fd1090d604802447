//! Live games of a human against the engine. The transcript is the state:
//! everything else in a session is derived from it.

mod layout;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    terminal_status, GameError, GameState, Move, Player, Solver, SolverConfig, Transcript,
    TranscriptError,
};
use crate::graph::{parse_graph_expr, CoronaLabel, Graph, GraphError, Vertex};
use crate::resolving::ResolvingOracle;
use crate::strategy::{build, catalog, pick_from_history, Strategy, StrategyError};

pub use layout::layout;

/// Largest playable order.
pub const PLAYABLE_CAP: usize = 20;
/// Largest order with an optimal engine and solver hints.
pub const SESSION_SOLVER_CAP: usize = 14;

pub const OPTIMAL_TAG: &str = "optimal (solver)";

/// `optimal`, or the name of a catalog strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Engine {
    Optimal,
    Strategy(String),
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Optimal => f.write_str("optimal"),
            Engine::Strategy(name) => f.write_str(name),
        }
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "" => Err("empty engine name".to_string()),
            "optimal" => Ok(Engine::Optimal),
            name => Ok(Engine::Strategy(
                name.strip_prefix("strategy:").unwrap_or(name).to_string(),
            )),
        }
    }
}

impl TryFrom<String> for Engine {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Engine> for String {
    fn from(e: Engine) -> String {
        e.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub graph: String,
    pub human: Player,
    pub first: Player,
    pub engine: Engine,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph order {n} exceeds the playable cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Engine(String),
    #[error("game over")]
    GameOver,
    #[error("it is {0}'s turn")]
    NotYourTurn(Player),
    #[error("vertex {0} is already claimed")]
    Claimed(Vertex),
    #[error("vertex {v} out of range for a graph of order {n}")]
    OutOfRange { v: Vertex, n: usize },
    #[error("no human move to undo")]
    NothingToUndo,
    #[error("no hint available: {0}")]
    HintUnavailable(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("stored transcript does not replay: {0}")]
    Transcript(#[from] TranscriptError),
}

impl SessionError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::Graph(_) => "invalid-graph",
            SessionError::TooLarge { .. } => "too-large",
            SessionError::Engine(_) => "invalid-engine",
            SessionError::GameOver => "game-over",
            SessionError::NotYourTurn(_) => "not-your-turn",
            SessionError::Claimed(_) => "already-claimed",
            SessionError::OutOfRange { .. } => "out-of-range",
            SessionError::NothingToUndo => "nothing-to-undo",
            SessionError::HintUnavailable(_) => "hint-unavailable",
            SessionError::Game(_) => "invalid-game",
            SessionError::Strategy(_) => "invalid-strategy",
            SessionError::Transcript(_) => "invalid-transcript",
        }
    }

    /// Errors about the current position rather than the request.
    pub fn is_conflict(&self) -> bool {
        matches!(
            self,
            SessionError::GameOver
                | SessionError::NotYourTurn(_)
                | SessionError::Claimed(_)
                | SessionError::NothingToUndo
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ongoing,
    Finished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meters {
    /// Vertex pairs Resolver's set does not yet resolve.
    pub unresolved_pairs: usize,
    /// `V ∖ Spoiler` still resolves the graph.
    pub complement_resolving: bool,
    /// `"alive"` while Spoiler has not won, `"killed"` after.
    pub spoiler_meter: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub graph: String,
    pub order: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<CoronaLabel>>,
    pub layout: Vec<[f64; 2]>,
    pub human: Player,
    pub first: Player,
    pub engine: Engine,
    pub to_move: Option<Player>,
    pub resolver: Vec<Vertex>,
    pub spoiler: Vec<Vertex>,
    pub transcript: Vec<Move>,
    pub status: Status,
    pub winner: Option<Player>,
    pub meters: Meters,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub vertex: Vertex,
    pub tag: String,
    /// Who wins from the position after the hinted move, when solved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_winner: Option<Player>,
}

/// The persisted form: configuration plus transcript.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionDocument {
    pub id: String,
    #[serde(flatten)]
    pub config: SessionConfig,
    pub transcript: Transcript,
}

pub struct Session {
    id: String,
    config: SessionConfig,
    graph: Graph,
    oracle: ResolvingOracle,
    engine: Option<Box<dyn Strategy>>,
    solver: Option<Solver>,
    moves: Vec<Move>,
    state: GameState,
    winner: Option<Player>,
}

impl fmt::Debug for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Session")
            .field("id", &self.id)
            .field("config", &self.config)
            .field("moves", &self.moves)
            .finish()
    }
}

impl Session {
    /// Validates the configuration and lets the engine open if it moves first.
    pub fn new(id: impl Into<String>, config: SessionConfig) -> Result<Session, SessionError> {
        let mut session = Session::blank(id.into(), config)?;
        session.engine_moves()?;
        Ok(session)
    }

    fn blank(id: String, config: SessionConfig) -> Result<Session, SessionError> {
        let graph = parse_graph_expr(&config.graph)?;
        let n = graph.order();
        if n > PLAYABLE_CAP {
            return Err(SessionError::TooLarge {
                n,
                cap: PLAYABLE_CAP,
            });
        }
        if n < 2 {
            return Err(GameError::TooSmall.into());
        }
        if !graph.is_connected() {
            return Err(GameError::Disconnected.into());
        }
        let solver = (n <= SESSION_SOLVER_CAP)
            .then(|| {
                Solver::new(
                    &graph,
                    SolverConfig {
                        cap: SESSION_SOLVER_CAP,
                        heuristic_order: true,
                    },
                )
            })
            .transpose()?;
        let engine_role = config.human.opponent();
        let engine = match &config.engine {
            Engine::Optimal if solver.is_none() => {
                return Err(SessionError::Engine(format!(
                    "the optimal engine needs order ≤ {SESSION_SOLVER_CAP}, got {n}; pick a strategy engine"
                )))
            }
            Engine::Optimal => None,
            Engine::Strategy(name) => {
                let s = build(name, &graph)?;
                if s.role() != engine_role {
                    return Err(SessionError::Engine(format!(
                        "strategy `{name}` plays {}, but the engine plays {engine_role}",
                        s.role()
                    )));
                }
                Some(s)
            }
        };
        let oracle = ResolvingOracle::for_graph(&graph);
        let state = GameState::new(config.first);
        Ok(Session {
            id,
            config,
            graph,
            oracle,
            engine,
            solver,
            moves: Vec::new(),
            state,
            winner: None,
        })
    }

    /// Rebuilds a session by replaying its stored transcript.
    pub fn from_document(doc: SessionDocument) -> Result<Session, SessionError> {
        if doc.transcript.first != doc.config.first {
            return Err(SessionError::Engine(
                "transcript and session disagree on the first player".into(),
            ));
        }
        let mut session = Session::blank(doc.id, doc.config)?;
        let replay = doc.transcript.replay(&session.oracle)?;
        session.moves = doc.transcript.moves;
        session.state = replay.state;
        session.winner = replay.winner;
        Ok(session)
    }

    pub fn document(&self) -> SessionDocument {
        SessionDocument {
            id: self.id.clone(),
            config: self.config.clone(),
            transcript: self.transcript(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn winner(&self) -> Option<Player> {
        self.winner
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            first: self.config.first,
            moves: self.moves.clone(),
        }
    }

    fn claim(&mut self, v: Vertex) {
        let player = self.state.to_move();
        self.state = self.state.with_move(player, v);
        self.moves.push(Move { player, vertex: v });
        self.winner = terminal_status(&self.oracle, &self.state);
    }

    fn engine_moves(&mut self) -> Result<(), SessionError> {
        while self.winner.is_none() && self.state.to_move() != self.config.human {
            let v = self.engine_pick()?;
            self.claim(v);
        }
        Ok(())
    }

    fn engine_pick(&mut self) -> Result<Vertex, SessionError> {
        let to_move = self.state.to_move();
        match (&self.engine, &mut self.solver) {
            (Some(strategy), _) => {
                pick_from_history(strategy.as_ref(), self.config.first, &self.moves)
                    .map(|p| p.vertex)
                    .ok_or_else(|| StrategyError::NoMove(strategy.name().to_string()).into())
            }
            (None, Some(solver)) => solver
                .best_move(self.state.resolver, self.state.spoiler, to_move)
                .map(|(v, _)| v)
                .ok_or_else(|| SessionError::Engine("the solver found no move".into())),
            (None, None) => unreachable!("optimal engines always carry a solver"),
        }
    }

    /// The human claims `v`; the engine replies if the game goes on.
    pub fn play(&mut self, v: Vertex) -> Result<(), SessionError> {
        if self.winner.is_some() {
            return Err(SessionError::GameOver);
        }
        let n = self.graph.order();
        if v >= n {
            return Err(SessionError::OutOfRange { v, n });
        }
        if self.state.to_move() != self.config.human {
            return Err(SessionError::NotYourTurn(self.state.to_move()));
        }
        if self.state.claimed().contains(v) {
            return Err(SessionError::Claimed(v));
        }
        self.claim(v);
        self.engine_moves()
    }

    /// Removes the last human move and every engine move after it.
    pub fn undo(&mut self) -> Result<(), SessionError> {
        let last = self
            .moves
            .iter()
            .rposition(|m| m.player == self.config.human)
            .ok_or(SessionError::NothingToUndo)?;
        self.moves.truncate(last);
        let replay = self.transcript().replay(&self.oracle)?;
        self.state = replay.state;
        self.winner = replay.winner;
        Ok(())
    }

    /// A move for the human. `source` is `optimal` or a strategy name;
    /// by default the solver when the graph is small enough, else the
    /// first catalog strategy for the human's role that applies.
    pub fn hint(&mut self, source: Option<&str>) -> Result<Hint, SessionError> {
        if self.winner.is_some() {
            return Err(SessionError::GameOver);
        }
        let mover = self.state.to_move();
        if mover != self.config.human {
            return Err(SessionError::NotYourTurn(mover));
        }
        let source = match source.map(str::trim) {
            Some("") | None if self.solver.is_some() => Engine::Optimal,
            Some("") | None => {
                let name = catalog()
                    .iter()
                    .filter(|e| e.role == mover)
                    .find(|e| build(e.name, &self.graph).is_ok())
                    .ok_or_else(|| {
                        SessionError::HintUnavailable(format!(
                            "order above {SESSION_SOLVER_CAP} and no {mover} strategy applies"
                        ))
                    })?;
                Engine::Strategy(name.name.to_string())
            }
            Some(s) => s.parse().map_err(SessionError::Engine)?,
        };
        match source {
            Engine::Optimal => {
                let solver = self.solver.as_mut().ok_or_else(|| {
                    SessionError::HintUnavailable(format!(
                        "optimal hints need order ≤ {SESSION_SOLVER_CAP}"
                    ))
                })?;
                let (vertex, value) = solver
                    .best_move(self.state.resolver, self.state.spoiler, mover)
                    .ok_or_else(|| SessionError::HintUnavailable("no move left".into()))?;
                Ok(Hint {
                    vertex,
                    tag: OPTIMAL_TAG.to_string(),
                    predicted_winner: Some(value.winner),
                })
            }
            Engine::Strategy(name) => {
                let strategy = build(&name, &self.graph)?;
                if strategy.role() != mover {
                    return Err(SessionError::HintUnavailable(format!(
                        "strategy `{name}` plays {}",
                        strategy.role()
                    )));
                }
                let pick = pick_from_history(strategy.as_ref(), self.config.first, &self.moves)
                    .ok_or_else(|| {
                        SessionError::HintUnavailable(format!("strategy `{name}` has no move"))
                    })?;
                let tag = if pick.tag == "filler" {
                    name
                } else {
                    pick.tag.to_string()
                };
                let predicted_winner = self.solver.as_mut().map(|s| {
                    let next = self.state.with_move(mover, pick.vertex);
                    s.value(&next).winner
                });
                Ok(Hint {
                    vertex: pick.vertex,
                    tag,
                    predicted_winner,
                })
            }
        }
    }

    pub fn view(&self) -> SessionView {
        let unresolved_pairs = self.oracle.unresolved_pairs(self.state.resolver);
        let complement_resolving = self
            .oracle
            .resolves(self.state.spoiler.complement(self.graph.order()));
        SessionView {
            id: self.id.clone(),
            graph: self.config.graph.clone(),
            order: self.graph.order(),
            edges: self.graph.edges().collect(),
            labels: self.graph.labels().map(<[CoronaLabel]>::to_vec),
            layout: layout(&self.graph),
            human: self.config.human,
            first: self.config.first,
            engine: self.config.engine.clone(),
            to_move: self.winner.is_none().then(|| self.state.to_move()),
            resolver: self.state.resolver.to_vec(),
            spoiler: self.state.spoiler.to_vec(),
            transcript: self.moves.clone(),
            status: if self.winner.is_some() {
                Status::Finished
            } else {
                Status::Ongoing
            },
            winner: self.winner,
            meters: Meters {
                unresolved_pairs,
                complement_resolving,
                spoiler_meter: if complement_resolving {
                    "alive"
                } else {
                    "killed"
                }
                .to_string(),
            },
        }
    }
}
