use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, GraphExpr, Vertex};

/// Named graph families understood by [`generate`] and the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `path(k)`: vertices `0..k` along the path.
    Path,
    /// `cycle(k)`, `k >= 3`: the path closed by the edge `(k-1, 0)`.
    Cycle,
    /// `complete(n)`.
    Complete,
    /// `star(n)`: centre `0` with leaves `1..=n`.
    Star,
    /// Triangle `0,1,2` with pendant `3` attached to `0`.
    Paw,
    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `(i, i+5)`.
    Petersen,
    /// The single vertex.
    K1,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::Paw,
        Family::Petersen,
        Family::K1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Paw => "paw",
            Family::Petersen => "petersen",
            Family::K1 => "k1",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Path | Family::Cycle | Family::Complete | Family::Star => 1,
            Family::Paw | Family::Petersen | Family::K1 => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))
    }
}

/// Builds a member of `family`. Paths and cycles are numbered consecutively.
pub fn generate(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    if params.len() != family.arity() {
        return Err(GraphError::InvalidParameter(format!(
            "{family} takes {} parameter(s), got {}",
            family.arity(),
            params.len()
        )));
    }
    let (n, edges): (usize, Vec<(Vertex, Vertex)>) = match family {
        Family::Path => {
            let k = params[0];
            if k < 1 {
                return Err(GraphError::InvalidParameter("path needs k ≥ 1".into()));
            }
            (k, (1..k).map(|i| (i - 1, i)).collect())
        }
        Family::Cycle => {
            let k = params[0];
            if k < 3 {
                return Err(GraphError::InvalidParameter("cycle needs k ≥ 3".into()));
            }
            let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            edges.push((k - 1, 0));
            (k, edges)
        }
        Family::Complete => {
            let n = params[0];
            if n < 1 {
                return Err(GraphError::InvalidParameter("complete needs n ≥ 1".into()));
            }
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            (n, edges)
        }
        Family::Star => {
            let leaves = params[0];
            if leaves < 1 {
                return Err(GraphError::InvalidParameter("star needs n ≥ 1".into()));
            }
            (leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
        }
        Family::Paw => (4, vec![(0, 1), (0, 2), (1, 2), (0, 3)]),
        Family::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            (10, edges)
        }
        Family::K1 => (1, vec![]),
    };
    Ok(
        Graph::from_edges(n, &edges)?.with_origin(GraphExpr::Family {
            family,
            args: params.to_vec(),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_path() {
        let g = generate(Family::Path, &[2]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (2, 1));
    }

    #[test]
    fn paw_is_triangle_plus_pendant() {
        let g = generate(Family::Paw, &[]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 4));
        let mut degrees: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 2, 2, 3]);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = generate(Family::Petersen, &[]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (10, 15));
        // direct count from the edge list, independent of the adjacency sets
        let mut count = [0usize; 10];
        for (u, v) in g.edges() {
            count[u] += 1;
            count[v] += 1;
        }
        assert!(count.iter().all(|&d| d == 3));
        // girth 5: no triangles, no 4-cycles
        for u in 0..10 {
            for v in 0..10 {
                if u != v {
                    let common = g.neighbors(u).intersection(g.neighbors(v)).len();
                    assert!(common <= 1);
                    if g.has_edge(u, v) {
                        assert_eq!(common, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn consecutive_numbering() {
        for k in 1..10 {
            let p = generate(Family::Path, &[k]).unwrap();
            assert_eq!(p.edge_count(), k - 1);
            for i in 1..k {
                assert!(p.has_edge(i - 1, i));
            }
        }
        for k in 3..10 {
            let c = generate(Family::Cycle, &[k]).unwrap();
            assert_eq!(c.edge_count(), k);
            assert!(c.has_edge(k - 1, 0));
            for i in 1..k {
                assert!(c.has_edge(i - 1, i));
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(
            generate(Family::Cycle, &[2]).unwrap_err().to_string(),
            "cycle needs k ≥ 3"
        );
        assert!(generate(Family::Path, &[0]).is_err());
        assert!(generate(Family::Paw, &[3]).is_err());
        assert!(generate(Family::Path, &[]).is_err());
        assert!(matches!(
            "wheel".parse::<Family>(),
            Err(GraphError::UnknownFamily(_))
        ));
        assert_eq!(generate(Family::Star, &[3]).unwrap().order(), 4);
        assert_eq!(generate(Family::K1, &[]).unwrap().order(), 1);
    }
}
