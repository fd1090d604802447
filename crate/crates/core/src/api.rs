//! Request and response types of the HTTP interface, and the analysis
//! operations behind them. The service and the command line both call
//! these, so local and remote runs print the same documents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{
    GameError, GameNumbers, Outcome, Player, Solver, SolverConfig, DEFAULT_SOLVER_CAP,
};
use crate::graph::{
    metrics, parse_graph_expr, parse_graph_text, to_graph_text, CoronaLabel, Graph, GraphError,
    Vertex,
};
use crate::harness::{self, HarnessConfig, HarnessError, Theorem, VerificationCase};
use crate::resolving::{
    find_pairing_resolving, metric_dimension, MetricBasis, ResolvingError, DEFAULT_DIMENSION_CAP,
    DEFAULT_PAIRING_CAP,
};
use crate::session::SessionError;
use crate::strategy::{
    self, Applicability, StrategyError, ValidationReport, DEFAULT_VALIDATION_CAP,
};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    BadRequest,
    NotFound,
    Conflict,
    Internal,
}

/// The `{code, message}` error document.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{message}")]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(skip, default = "bad_request")]
    pub kind: ErrorKind,
}

fn bad_request() -> ErrorKind {
    ErrorKind::BadRequest
}

impl ApiError {
    pub fn new(kind: ErrorKind, code: impl Into<String>, message: impl Into<String>) -> Self {
        ApiError {
            code: code.into(),
            message: message.into(),
            kind,
        }
    }

    pub fn bad_request(code: &str, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::BadRequest, code, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::NotFound, "not-found", message)
    }
}

impl From<GraphError> for ApiError {
    fn from(e: GraphError) -> Self {
        let code = if matches!(e, GraphError::TooLarge { .. }) {
            "too-large"
        } else {
            "invalid-graph"
        };
        ApiError::bad_request(code, e.to_string())
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        let code = match e {
            GameError::TooLarge { .. } => "too-large",
            GameError::AlreadyClaimed(_) => {
                return ApiError::new(ErrorKind::Conflict, "already-claimed", e.to_string())
            }
            GameError::SecondPlayerWinsBoth => {
                return ApiError::new(ErrorKind::Internal, "internal", e.to_string())
            }
            _ => "invalid-game",
        };
        ApiError::bad_request(code, e.to_string())
    }
}

impl From<ResolvingError> for ApiError {
    fn from(e: ResolvingError) -> Self {
        let code = if matches!(e, ResolvingError::TooLarge { .. }) {
            "too-large"
        } else {
            "invalid-pairing"
        };
        ApiError::bad_request(code, e.to_string())
    }
}

impl From<StrategyError> for ApiError {
    fn from(e: StrategyError) -> Self {
        let code = match e {
            StrategyError::Unknown(_) => "unknown-strategy",
            StrategyError::NotApplicable { .. } => "not-applicable",
            StrategyError::TooLarge { .. } => "too-large",
            StrategyError::Game(g) => return g.into(),
            StrategyError::Graph(g) => return g.into(),
            StrategyError::Resolving(r) => return r.into(),
            StrategyError::IllegalPick { .. } | StrategyError::NoMove(_) => {
                return ApiError::new(ErrorKind::Internal, "strategy-failure", e.to_string())
            }
        };
        ApiError::bad_request(code, e.to_string())
    }
}

impl From<HarnessError> for ApiError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::UnknownTheorem(_) => {
                ApiError::bad_request("unknown-theorem", e.to_string())
            }
            HarnessError::Config(_) => ApiError::bad_request("invalid-config", e.to_string()),
            HarnessError::Graph(g) => g.into(),
            HarnessError::Game(g) => g.into(),
            HarnessError::Resolving(r) => r.into(),
            HarnessError::Strategy(s) => s.into(),
            HarnessError::Case { .. } => ApiError::bad_request("too-large", e.to_string()),
            HarnessError::Io(_) => ApiError::new(ErrorKind::Internal, "internal", e.to_string()),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let kind = if e.is_conflict() {
            ErrorKind::Conflict
        } else {
            ErrorKind::BadRequest
        };
        ApiError::new(kind, e.code(), e.to_string())
    }
}

/// An expression such as `corona(path(2),cycle(4))`, or the edge-list
/// text format when the input starts with a digit.
pub fn load_graph(input: &str) -> Result<Graph, ApiError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with(|c: char| c.is_ascii_digit()) {
        Ok(parse_graph_text(trimmed)?)
    } else {
        Ok(parse_graph_expr(input)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRequest {
    pub graph: String,
}

/// A graph plus an optional override of the operation's order cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappedRequest {
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    /// Canonical expression, absent for edge-list input.
    pub expr: Option<String>,
    pub order: usize,
    pub size: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub diameter: usize,
    pub max_degree: usize,
    pub connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<CoronaLabel>>,
    /// The edge-list text form.
    pub text: String,
}

pub fn graph_info(req: &GraphRequest) -> Result<GraphInfo, ApiError> {
    let g = load_graph(&req.graph)?;
    let m = metrics(&g);
    Ok(GraphInfo {
        expr: g.origin().map(ToString::to_string),
        order: g.order(),
        size: g.edge_count(),
        edges: g.edges().collect(),
        diameter: m.diameter,
        max_degree: m.max_degree,
        connected: m.connected,
        labels: g.labels().map(<[CoronaLabel]>::to_vec),
        text: to_graph_text(&g),
    })
}

pub fn dim(req: &CappedRequest) -> Result<MetricBasis, ApiError> {
    let g = load_graph(&req.graph)?;
    Ok(metric_dimension(
        &g,
        req.cap.unwrap_or(DEFAULT_DIMENSION_CAP),
    )?)
}

fn solver_config(cap: Option<usize>) -> SolverConfig {
    SolverConfig {
        cap: cap.unwrap_or(DEFAULT_SOLVER_CAP),
        heuristic_order: true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeResponse {
    pub outcome: Outcome,
}

pub fn outcome(req: &CappedRequest) -> Result<OutcomeResponse, ApiError> {
    let g = load_graph(&req.graph)?;
    Ok(OutcomeResponse {
        outcome: crate::game::outcome(&g, solver_config(req.cap))?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRequest {
    pub graph: String,
    pub first: Player,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResponse {
    pub first: Player,
    pub winner: Player,
    pub winner_moves: u32,
    /// A best opening move for `first`.
    pub best_move: Option<Vertex>,
}

pub fn solve(req: &SolveRequest) -> Result<SolveResponse, ApiError> {
    let g = load_graph(&req.graph)?;
    let mut solver = Solver::new(&g, solver_config(req.cap))?;
    let value = solver.solve(req.first);
    let best_move = solver
        .best_move(VertexSet::EMPTY, VertexSet::EMPTY, req.first)
        .map(|(v, _)| v);
    Ok(SolveResponse {
        first: req.first,
        winner: value.winner,
        winner_moves: value.winner_moves,
        best_move,
    })
}

pub fn numbers(req: &CappedRequest) -> Result<GameNumbers, ApiError> {
    let g = load_graph(&req.graph)?;
    Ok(crate::game::game_numbers(&g, solver_config(req.cap))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingRequest {
    pub graph: String,
    /// Number of pairs; smallest `k` with a pairing when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingResponse {
    pub pairs: Option<Vec<(Vertex, Vertex)>>,
}

pub fn pairing(req: &PairingRequest) -> Result<PairingResponse, ApiError> {
    let g = load_graph(&req.graph)?;
    let cap = req.cap.unwrap_or(DEFAULT_PAIRING_CAP);
    let ks = match req.k {
        Some(k) => k..=k,
        None => 1..=g.order() / 2,
    };
    for k in ks {
        if let Some(a) = find_pairing_resolving(&g, k, cap)? {
            return Ok(PairingResponse {
                pairs: Some(a.pairs().to_vec()),
            });
        }
    }
    Ok(PairingResponse { pairs: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateRequest {
    pub graph: String,
    pub strategy: String,
    /// Both starts when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first: Option<Player>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

pub fn validate(req: &ValidateRequest) -> Result<Vec<ValidationReport>, ApiError> {
    let g = load_graph(&req.graph)?;
    let s = strategy::build(&req.strategy, &g)?;
    let firsts = match req.first {
        Some(p) => vec![p],
        None => vec![Player::Resolver, Player::Spoiler],
    };
    let cap = req.cap.unwrap_or(DEFAULT_VALIDATION_CAP);
    firsts
        .into_iter()
        .map(|first| strategy::validate(&g, s.as_ref(), first, cap).map_err(ApiError::from))
        .collect()
}

/// A catalog entry as sent over the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyInfo {
    pub name: String,
    pub role: Player,
    pub summary: String,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<Applicability> for StrategyInfo {
    fn from(a: Applicability) -> Self {
        StrategyInfo {
            name: a.entry.name.into(),
            role: a.entry.role,
            summary: a.entry.summary.into(),
            applicable: a.applicable,
            reason: a.reason,
        }
    }
}

/// Catalog entries with applicability for `graph`, or the bare catalog.
pub fn strategies(graph: Option<&str>) -> Result<Vec<StrategyInfo>, ApiError> {
    let entries = match graph {
        Some(expr) => Applicability::for_graph(&load_graph(expr)?),
        None => strategy::catalog()
            .iter()
            .map(|&entry| Applicability {
                entry,
                applicable: true,
                reason: None,
            })
            .collect(),
    };
    Ok(entries.into_iter().map(StrategyInfo::from).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerifyRequest {
    /// The default campaign when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<HarnessConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResponse {
    pub passed: bool,
    pub cases: Vec<VerificationCase>,
}

pub fn verify(req: &VerifyRequest) -> Result<VerifyResponse, ApiError> {
    let config = req.config.clone().unwrap_or_default();
    let cases = match &req.theorem {
        Some(id) => harness::verify(id, &config)?,
        None => harness::verify_default(&config)?,
    };
    Ok(VerifyResponse {
        passed: harness::all_passed(&cases),
        cases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremInfo {
    pub id: String,
    pub claim: String,
    pub default: bool,
}

impl From<&Theorem> for TheoremInfo {
    fn from(t: &Theorem) -> Self {
        TheoremInfo {
            id: t.id.into(),
            claim: t.claim.into(),
            default: t.default,
        }
    }
}

pub fn theorems() -> Vec<TheoremInfo> {
    harness::theorems().iter().map(TheoremInfo::from).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRequest {
    pub vertex: Vertex,
}
