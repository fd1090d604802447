//! Simple undirected graphs, generators, the corona product, the graph
//! expression language and hop distances.

mod corona;
mod distance;
mod expr;
mod generate;
mod text;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corona::{corona, CoronaFactors};
pub use distance::{distances, DistanceMatrix, UNREACHABLE};
pub use expr::{parse_graph_expr, GraphExpr, ParseError};
pub use generate::{generate, Family};
pub use text::{parse_graph_text, to_graph_text};

use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph order {n} exceeds the capacity cap of {cap} vertices")]
    TooLarge { n: usize, cap: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("first corona factor must be connected")]
    Disconnected,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("graph file: {0}")]
    Format(String),
}

/// Role of a vertex inside a corona product `G ⊙ H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoronaLabel {
    /// Vertex `index` of the first factor.
    Base { index: usize },
    /// Vertex `index` of the copy of `H` hanging off base vertex `copy`.
    Copy { copy: usize, index: usize },
}

/// Immutable simple undirected graph on vertex ids `0..n`.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
    labels: Option<Arc<[CoronaLabel]>>,
    factors: Option<Arc<CoronaFactors>>,
    origin: Option<Arc<GraphExpr>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_edges_capped(n, edges, MAX_VERTICES)
    }

    pub fn from_edges_capped(
        n: usize,
        edges: &[(Vertex, Vertex)],
        cap: usize,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let cap = cap.min(MAX_VERTICES);
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
            labels: None,
            factors: None,
            origin: None,
        })
    }

    pub(crate) fn with_origin(mut self, origin: GraphExpr) -> Self {
        self.origin = Some(Arc::new(origin));
        self
    }

    pub(crate) fn with_corona(mut self, labels: Vec<CoronaLabel>, factors: CoronaFactors) -> Self {
        self.labels = Some(labels.into());
        self.factors = Some(Arc::new(factors));
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Open neighbourhood of `v`.
    pub fn neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.adj
            .get(v)
            .copied()
            .ok_or(GraphError::VertexOutOfRange { v, n: self.order() })
    }

    /// Unchecked neighbourhood access for hot loops.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == self.vertices()
    }

    pub fn labels(&self) -> Option<&[CoronaLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> Option<CoronaLabel> {
        self.labels.as_ref().and_then(|l| l.get(v).copied())
    }

    /// Factors `(G, H)` when this graph was built by [`corona`].
    pub fn corona_factors(&self) -> Option<&CoronaFactors> {
        self.factors.as_deref()
    }

    /// The expression this graph was built from, if any.
    pub fn origin(&self) -> Option<&GraphExpr> {
        self.origin.as_deref()
    }

    /// Same vertex count and edge set (labels and provenance ignored).
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// The DSL form when known, otherwise the plain-text edge list.
    pub fn pretty(&self) -> String {
        match &self.origin {
            Some(expr) => expr.to_string(),
            None => to_graph_text(self),
        }
    }

    /// Induced subgraph on `keep`, vertices renumbered in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let ids: Vec<Vertex> = keep.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(ids.len(), &edges).expect("induced subgraph of a valid graph")
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("origin", &self.origin.as_ref().map(|e| e.to_string()))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    /// Largest finite distance.
    pub diameter: usize,
    pub max_degree: usize,
    pub connected: bool,
}

pub fn metrics(g: &Graph) -> Metrics {
    let d = distances(g);
    Metrics {
        diameter: d.diameter(),
        max_degree: g.max_degree(),
        connected: d.is_connected(),
    }
}
