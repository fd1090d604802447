//! Resolving, locating and pairing-resolving sets.
//!
//! All predicates are evaluated against a distance matrix. For disconnected
//! graphs the [`UNREACHABLE`](crate::graph::UNREACHABLE) sentinel is compared
//! like any other distance value; resolving sets are only meaningful for
//! connected graphs.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{distances, DistanceMatrix, Graph, Vertex};
use crate::vertex_set::VertexSet;

/// Default order limit for the exhaustive metric dimension sweep.
pub const DEFAULT_DIMENSION_CAP: usize = 16;
/// Default order limit for the pairing search.
pub const DEFAULT_PAIRING_CAP: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolvingError {
    #[error("graph order {n} exceeds the search cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("pairs overlap at vertex {0}")]
    OverlappingPairs(Vertex),
    #[error("pair endpoint {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
}

/// For every unordered vertex pair, the set of vertices that tell the two
/// apart. `W` is resolving iff it meets every one of these sets.
#[derive(Debug, Clone)]
pub struct ResolvingOracle {
    n: usize,
    separators: Vec<VertexSet>,
    /// Distinct inclusion-minimal separators; enough to decide `resolves`.
    minimal: Vec<VertexSet>,
    /// `minimal` entries containing each vertex.
    by_vertex: Vec<Vec<VertexSet>>,
}

impl ResolvingOracle {
    pub fn new(d: &DistanceMatrix) -> Self {
        Self::within(d, VertexSet::full(d.order()))
    }

    /// Only pairs inside `universe` need to be separated; any vertex may
    /// separate them.
    pub fn within(d: &DistanceMatrix, universe: VertexSet) -> Self {
        let n = d.order();
        let ids = universe.to_vec();
        let mut separators = Vec::with_capacity(ids.len() * ids.len().saturating_sub(1) / 2);
        for (i, &x) in ids.iter().enumerate() {
            let rx = d.row(x);
            for &y in &ids[i + 1..] {
                let ry = d.row(y);
                let sep: VertexSet = (0..n).filter(|&z| rx[z] != ry[z]).collect();
                separators.push(sep);
            }
        }
        let mut distinct = separators.clone();
        distinct.sort_by_key(|s| (s.len(), s.bits()));
        distinct.dedup();
        let mut minimal: Vec<VertexSet> = Vec::new();
        for s in distinct {
            if !minimal.iter().any(|m| m.is_subset(s)) {
                minimal.push(s);
            }
        }
        let mut by_vertex = vec![Vec::new(); n];
        for s in &minimal {
            for v in s.iter() {
                by_vertex[v].push(*s);
            }
        }
        ResolvingOracle {
            n,
            separators,
            minimal,
            by_vertex,
        }
    }

    pub fn for_graph(g: &Graph) -> Self {
        Self::new(&distances(g))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn resolves(&self, w: VertexSet) -> bool {
        self.minimal.iter().all(|s| s.intersects(w))
    }

    /// With `v ∈ spoiler`: does `spoiler` contain a separator through `v`,
    /// so that the vertices outside it no longer resolve? Checking only the
    /// separators through the newest claim is enough when the position
    /// before it was still alive.
    #[inline]
    pub fn kills(&self, spoiler: VertexSet, v: Vertex) -> bool {
        self.by_vertex[v].iter().any(|s| s.is_subset(spoiler))
    }

    /// Number of vertex pairs `w` leaves unresolved.
    pub fn unresolved_pairs(&self, w: VertexSet) -> usize {
        self.separators.iter().filter(|s| !s.intersects(w)).count()
    }

    /// How many currently unresolved pairs adding `v` would resolve.
    pub fn gain(&self, w: VertexSet, v: Vertex) -> usize {
        self.separators
            .iter()
            .filter(|s| !s.intersects(w) && s.contains(v))
            .count()
    }

    pub fn separators(&self) -> &[VertexSet] {
        &self.separators
    }
}

pub fn is_resolving(g: &Graph, w: VertexSet) -> bool {
    is_resolving_with(&distances(g), w)
}

pub fn is_resolving_with(d: &DistanceMatrix, w: VertexSet) -> bool {
    let n = d.order();
    (0..n).all(|x| (x + 1..n).all(|y| w.iter().any(|z| d.get(x, z) != d.get(y, z))))
}

/// `w` separates every pair of `universe` using the distances in `d`.
pub fn resolves_within(d: &DistanceMatrix, universe: VertexSet, w: VertexSet) -> bool {
    let ids = universe.to_vec();
    ids.iter().enumerate().all(|(i, &x)| {
        ids[i + 1..]
            .iter()
            .all(|&y| w.iter().any(|z| d.get(x, z) != d.get(y, z)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricBasis {
    pub dimension: usize,
    pub basis: VertexSet,
}

/// Exhaustive sweep by increasing cardinality; the first resolving set in
/// lexicographic order wins ties.
pub fn metric_dimension(g: &Graph, cap: usize) -> Result<MetricBasis, ResolvingError> {
    let n = g.order();
    if n > cap {
        return Err(ResolvingError::TooLarge { n, cap });
    }
    let oracle = ResolvingOracle::for_graph(g);
    // twins are separated only by themselves, so every resolving set
    // contains one of the two
    let twins: Vec<VertexSet> = oracle
        .separators()
        .iter()
        .copied()
        .filter(|s| s.len() == 2)
        .collect();
    for size in 0..=n {
        let mut found = None;
        for_each_combination(n, size, |set| {
            if twins.iter().all(|t| t.intersects(set)) && oracle.resolves(set) {
                found = Some(set);
                return false;
            }
            true
        });
        if let Some(basis) = found {
            return Ok(MetricBasis {
                dimension: size,
                basis,
            });
        }
    }
    unreachable!("V(G) always resolves G")
}

/// Visits the `size`-subsets of `0..n` in lexicographic order until `visit`
/// returns false.
fn for_each_combination(n: usize, size: usize, mut visit: impl FnMut(VertexSet) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !visit(idx.iter().copied().collect()) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `N(u) ∩ S` differs for every two vertices outside `S`.
pub fn is_locating(g: &Graph, s: VertexSet) -> bool {
    let outside = g.vertices().difference(s).to_vec();
    let traces: Vec<VertexSet> = outside
        .iter()
        .map(|&u| g.neighbors(u).intersection(s))
        .collect();
    traces
        .iter()
        .enumerate()
        .all(|(i, t)| traces[i + 1..].iter().all(|o| o != t))
}

/// Locating, and no vertex outside `S` is adjacent to all of `S`.
pub fn is_strictly_locating(g: &Graph, s: VertexSet) -> bool {
    is_locating(g, s)
        && g.vertices()
            .difference(s)
            .iter()
            .all(|u| g.neighbors(u).intersection(s) != s)
}

/// Disjoint vertex pairs `{u_i, v_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Vertex, Vertex)>", into = "Vec<(Vertex, Vertex)>")]
pub struct PairingSystem {
    pairs: Vec<(Vertex, Vertex)>,
}

impl PairingSystem {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self, ResolvingError> {
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &pairs {
            for x in [u, v] {
                if x >= crate::vertex_set::MAX_VERTICES {
                    return Err(ResolvingError::VertexOutOfRange {
                        v: x,
                        n: crate::vertex_set::MAX_VERTICES,
                    });
                }
                if seen.contains(x) {
                    return Err(ResolvingError::OverlappingPairs(x));
                }
                seen.insert(x);
            }
        }
        Ok(PairingSystem { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn endpoints(&self) -> VertexSet {
        self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// The other endpoint of the pair containing `v`.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// All `2^k` sets choosing one endpoint per pair.
    pub fn transversals(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let k = self.pairs.len();
        (0u64..1 << k).map(move |mask| {
            self.pairs
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if mask >> i & 1 == 0 { u } else { v })
                .collect()
        })
    }
}

impl TryFrom<Vec<(Vertex, Vertex)>> for PairingSystem {
    type Error = ResolvingError;

    fn try_from(pairs: Vec<(Vertex, Vertex)>) -> Result<Self, Self::Error> {
        PairingSystem::new(pairs)
    }
}

impl From<PairingSystem> for Vec<(Vertex, Vertex)> {
    fn from(p: PairingSystem) -> Self {
        p.pairs
    }
}

/// Every transversal of `a` resolves `g`.
pub fn is_pairing_resolving(g: &Graph, a: &PairingSystem) -> Result<bool, ResolvingError> {
    let n = g.order();
    if let Some(v) = a.endpoints().iter().find(|&v| v >= n) {
        return Err(ResolvingError::VertexOutOfRange { v, n });
    }
    let oracle = ResolvingOracle::for_graph(g);
    Ok(a.transversals().all(|t| oracle.resolves(t)))
}

/// Searches for `k` disjoint pairs forming a pairing resolving set. Pairs are
/// tried in lexicographic order and the first hit is returned.
pub fn find_pairing_resolving(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<Option<PairingSystem>, ResolvingError> {
    let n = g.order();
    if n > cap {
        return Err(ResolvingError::TooLarge { n, cap });
    }
    if 2 * k > n {
        return Ok(None);
    }
    let mut search = PairingSearch {
        n,
        k,
        oracle: ResolvingOracle::for_graph(g),
        cache: FxHashMap::default(),
        pairs: Vec::with_capacity(k),
    };
    Ok(search
        .extend(VertexSet::EMPTY, 0)
        .then(|| PairingSystem::new(search.pairs).expect("disjoint by construction")))
}

struct PairingSearch {
    n: usize,
    k: usize,
    oracle: ResolvingOracle,
    cache: FxHashMap<VertexSet, bool>,
    pairs: Vec<(Vertex, Vertex)>,
}

impl PairingSearch {
    fn resolves(&mut self, w: VertexSet) -> bool {
        let oracle = &self.oracle;
        *self.cache.entry(w).or_insert_with(|| oracle.resolves(w))
    }

    fn transversals(&self) -> Vec<VertexSet> {
        PairingSystem {
            pairs: self.pairs.clone(),
        }
        .transversals()
        .collect()
    }

    /// `used`: endpoints so far; later pairs have first endpoint `>= min_first`.
    fn extend(&mut self, used: VertexSet, min_first: Vertex) -> bool {
        let partial = self.transversals();
        if self.pairs.len() == self.k {
            return partial.into_iter().all(|t| self.resolves(t));
        }
        // every completion is a subset of partial ∪ avail; resolving is
        // monotone, so a failing superset rules the branch out
        let avail = VertexSet::full(self.n)
            .difference(used)
            .difference(VertexSet::full(min_first));
        if avail.len() < 2 * (self.k - self.pairs.len()) {
            return false;
        }
        if !partial.iter().all(|&t| self.resolves(t.union(avail))) {
            return false;
        }
        for u in avail {
            for v in avail.iter().filter(|&v| v > u) {
                self.pairs.push((u, v));
                if self.extend(used.with(u).with(v), u + 1) {
                    return true;
                }
                self.pairs.pop();
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{corona, generate, parse_graph_expr, Family};

    fn g(expr: &str) -> Graph {
        parse_graph_expr(expr).unwrap()
    }

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn resolving_examples() {
        assert!(is_resolving(&g("path(3)"), set(&[0])));
        assert!(!is_resolving(&g("cycle(4)"), set(&[0, 2])));
        assert!(!is_resolving(&g("path(5)"), VertexSet::EMPTY));
        assert!(is_resolving(&g("k1"), VertexSet::EMPTY));
        let oracle = ResolvingOracle::for_graph(&g("cycle(4)"));
        assert!(!oracle.resolves(set(&[0, 2])));
        assert!(oracle.resolves(set(&[0, 1])));
        assert_eq!(oracle.unresolved_pairs(VertexSet::EMPTY), 6);
    }

    #[test]
    fn oracle_agrees_with_direct_check() {
        for expr in ["petersen", "corona(path(2),cycle(4))", "paw", "star(3)"] {
            let graph = g(expr);
            let d = distances(&graph);
            let oracle = ResolvingOracle::new(&d);
            for bits in (0u64..1 << graph.order()).step_by(7) {
                let w = VertexSet::from_bits(bits);
                assert_eq!(oracle.resolves(w), is_resolving_with(&d, w), "{expr} {w}");
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(metric_dimension(&g("path(7)"), 16).unwrap().dimension, 1);
        assert_eq!(
            metric_dimension(&g("path(7)"), 16).unwrap().basis,
            set(&[0])
        );
        assert_eq!(
            metric_dimension(&g("complete(4)"), 16).unwrap().dimension,
            3
        );
        assert_eq!(metric_dimension(&g("petersen"), 16).unwrap().dimension, 3);
        assert_eq!(metric_dimension(&g("k1"), 16).unwrap().dimension, 0);
        assert_eq!(
            metric_dimension(&g("path(17)"), 16).unwrap_err(),
            ResolvingError::TooLarge { n: 17, cap: 16 }
        );
    }

    #[test]
    fn dimension_matches_plain_enumeration() {
        // no twin pruning, no early exit: the minimum over all 2^n subsets
        for expr in [
            "cycle(6)",
            "paw",
            "corona(path(2),path(3))",
            "star(4)",
            "complete(5)",
        ] {
            let graph = g(expr);
            let d = distances(&graph);
            let brute = (0u64..1 << graph.order())
                .map(VertexSet::from_bits)
                .filter(|&w| is_resolving_with(&d, w))
                .map(|w| w.len())
                .min()
                .unwrap();
            assert_eq!(
                metric_dimension(&graph, 16).unwrap().dimension,
                brute,
                "{expr}"
            );
        }
    }

    #[test]
    fn locating_examples() {
        let p6 = g("path(6)");
        assert!(is_locating(&p6, p6.vertices()));
        assert!(!is_locating(&p6, set(&[1, 2])));
        assert!(!is_locating(&g("complete(3)"), set(&[0])));
        assert!(is_strictly_locating(&p6, set(&[0, 2, 4])));
        assert!(!is_strictly_locating(&g("path(4)"), set(&[0, 2])));
        assert!(is_strictly_locating(&g("cycle(6)"), set(&[1, 3, 5])));
    }

    #[test]
    fn pairing_examples() {
        // K2 ⊙ P1 ≅ P4: base vertices 0,1, pendants 2,3
        let k2p1 = corona(
            &generate(Family::Complete, &[2]).unwrap(),
            &generate(Family::Path, &[1]).unwrap(),
        )
        .unwrap();
        let a = PairingSystem::new(vec![(0, 2), (1, 3)]).unwrap();
        assert!(is_pairing_resolving(&k2p1, &a).unwrap());

        let c4 = g("cycle(4)");
        let bad = PairingSystem::new(vec![(0, 1), (2, 3)]).unwrap();
        assert!(!is_pairing_resolving(&c4, &bad).unwrap());

        let single = PairingSystem::new(vec![(0, 1)]).unwrap();
        assert!(is_pairing_resolving(&g("path(2)"), &single).unwrap());

        assert_eq!(
            PairingSystem::new(vec![(0, 1), (1, 2)]).unwrap_err(),
            ResolvingError::OverlappingPairs(1)
        );
        let far = PairingSystem::new(vec![(0, 9)]).unwrap();
        assert!(is_pairing_resolving(&c4, &far).is_err());
        assert_eq!(single.partner(1), Some(0));
        assert_eq!(single.partner(2), None);
    }

    #[test]
    fn pairing_search() {
        let k2p2 = g("corona(path(2),path(2))");
        let per_copy = PairingSystem::new(vec![(2, 3), (4, 5)]).unwrap();
        assert!(is_pairing_resolving(&k2p2, &per_copy).unwrap());
        let found = find_pairing_resolving(&k2p2, 2, 14).unwrap().unwrap();
        assert!(is_pairing_resolving(&k2p2, &found).unwrap());

        assert_eq!(
            find_pairing_resolving(&g("complete(3)"), 2, 14).unwrap(),
            None
        );

        let c4 = g("cycle(4)");
        let found = find_pairing_resolving(&c4, 2, 14).unwrap().unwrap();
        assert!(is_pairing_resolving(&c4, &found).unwrap());
        // exhaustive count of valid pairings of C4 into 2 pairs
        let all = [
            vec![(0, 1), (2, 3)],
            vec![(0, 2), (1, 3)],
            vec![(0, 3), (1, 2)],
        ];
        let valid = all
            .into_iter()
            .filter(|p| is_pairing_resolving(&c4, &PairingSystem::new(p.clone()).unwrap()).unwrap())
            .count();
        assert_eq!(valid, 1);

        assert!(find_pairing_resolving(&g("path(15)"), 1, 14).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = vec![];
        for_each_combination(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_combination(3, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
