use super::{Graph, Vertex};
use crate::vertex_set::VertexSet;

/// Marker for pairs in different components.
pub const UNREACHABLE: u8 = u8::MAX;

/// All-pairs hop distances, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u8 {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: Vertex) -> &[u8] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.d
            .iter()
            .filter(|&&x| x != UNREACHABLE)
            .max()
            .copied()
            .unwrap_or(0) as usize
    }

    /// Restriction to `keep` with the ambient distances, renumbered.
    pub fn restricted(&self, keep: VertexSet) -> DistanceMatrix {
        let ids = keep.to_vec();
        let mut d = Vec::with_capacity(ids.len() * ids.len());
        for &u in &ids {
            d.extend(ids.iter().map(|&v| self.get(u, v)));
        }
        DistanceMatrix { n: ids.len(), d }
    }
}

/// BFS from every source.
pub fn distances(g: &Graph) -> DistanceMatrix {
    let n = g.order();
    let mut d = vec![UNREACHABLE; n * n];
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        let mut depth = 0u8;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(g.neighbors(v));
            }
            next = next.difference(seen);
            for v in next {
                row[v] = depth;
            }
            seen = seen.union(next);
            frontier = next;
        }
    }
    DistanceMatrix { n, d }
}
