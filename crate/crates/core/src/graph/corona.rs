use super::{CoronaLabel, Graph, GraphError, GraphExpr, Vertex};

/// The two factors of `G ⊙ H`, kept so that strategies can address
/// individual copies.
///
/// Vertex layout of the product: ids `0..n(G)` are the base vertices, and
/// copy `i` occupies the block `n(G) + i·n(H) .. n(G) + (i+1)·n(H)`.
#[derive(Debug, Clone)]
pub struct CoronaFactors {
    pub base: Graph,
    pub fiber: Graph,
}

impl CoronaFactors {
    #[inline]
    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    #[inline]
    pub fn fiber_order(&self) -> usize {
        self.fiber.order()
    }

    #[inline]
    pub fn copy_vertex(&self, copy: usize, index: usize) -> Vertex {
        self.base_order() + copy * self.fiber_order() + index
    }

    /// `(copy, index)` for copy vertices, `None` for base vertices.
    #[inline]
    pub fn locate(&self, v: Vertex) -> Option<(usize, usize)> {
        let nb = self.base_order();
        (v >= nb).then(|| ((v - nb) / self.fiber_order(), (v - nb) % self.fiber_order()))
    }

    /// Index of the copy `Ĥ_i` (copy plus its base vertex) containing `v`.
    #[inline]
    pub fn cluster_of(&self, v: Vertex) -> usize {
        self.locate(v).map_or(v, |(c, _)| c)
    }
}

/// The corona product `g ⊙ h`.
pub fn corona(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let ng = g.order();
    let nh = h.order();
    let n = ng * (1 + nh);
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    for i in 0..ng {
        let offset = ng + i * nh;
        edges.extend(h.edges().map(|(u, v)| (offset + u, offset + v)));
        edges.extend((0..nh).map(|j| (i, offset + j)));
    }
    let mut labels: Vec<CoronaLabel> = (0..ng).map(|index| CoronaLabel::Base { index }).collect();
    for copy in 0..ng {
        labels.extend((0..nh).map(|index| CoronaLabel::Copy { copy, index }));
    }
    let mut product = Graph::from_edges(n, &edges)?.with_corona(
        labels,
        CoronaFactors {
            base: g.clone(),
            fiber: h.clone(),
        },
    );
    if let (Some(a), Some(b)) = (g.origin(), h.origin()) {
        product = product.with_origin(GraphExpr::Corona(Box::new(a.clone()), Box::new(b.clone())));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::super::{generate, Family};
    use super::*;

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in permutations(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        assert!(a.order() <= 8);
        a.order() == b.order()
            && a.edge_count() == b.edge_count()
            && permutations(a.order())
                .iter()
                .any(|p| a.edges().all(|(u, v)| b.has_edge(p[u], p[v])))
    }

    #[test]
    fn k1_corona_p1_is_p2() {
        let k1 = generate(Family::K1, &[]).unwrap();
        let p1 = generate(Family::Path, &[1]).unwrap();
        let g = corona(&k1, &p1).unwrap();
        assert_eq!((g.order(), g.edge_count()), (2, 1));
        assert!(brute_isomorphic(&g, &generate(Family::Path, &[2]).unwrap()));
    }

    #[test]
    fn k2_corona_p3_counts() {
        let g = corona(
            &generate(Family::Complete, &[2]).unwrap(),
            &generate(Family::Path, &[3]).unwrap(),
        )
        .unwrap();
        // E(G) + n(G)(E(H) + n(H)) = 1 + 2(2 + 3)
        assert_eq!((g.order(), g.edge_count()), (8, 11));
    }

    #[test]
    fn k1_corona_c3_is_k4() {
        let g = corona(
            &generate(Family::K1, &[]).unwrap(),
            &generate(Family::Cycle, &[3]).unwrap(),
        )
        .unwrap();
        assert!(brute_isomorphic(
            &g,
            &generate(Family::Complete, &[4]).unwrap()
        ));
    }

    #[test]
    fn layout_and_labels() {
        let g = corona(
            &generate(Family::Path, &[3]).unwrap(),
            &generate(Family::Cycle, &[4]).unwrap(),
        )
        .unwrap();
        let f = g.corona_factors().unwrap();
        let labels = g.labels().unwrap();
        assert_eq!(
            labels
                .iter()
                .filter(|l| matches!(l, CoronaLabel::Base { .. }))
                .count(),
            3
        );
        assert_eq!(
            labels
                .iter()
                .filter(|l| matches!(l, CoronaLabel::Copy { .. }))
                .count(),
            12
        );
        for copy in 0..3 {
            for index in 0..4 {
                let v = f.copy_vertex(copy, index);
                assert_eq!(v, 3 + copy * 4 + index);
                assert_eq!(g.label(v), Some(CoronaLabel::Copy { copy, index }));
                assert_eq!(f.locate(v), Some((copy, index)));
                assert!(g.has_edge(copy, v));
                assert_eq!(f.cluster_of(v), copy);
            }
        }
        assert_eq!(f.locate(2), None);
        assert_eq!(g.origin().unwrap().to_string(), "corona(path(3),cycle(4))");
    }

    #[test]
    fn disconnected_base_rejected() {
        let two = Graph::from_edges(2, &[]).unwrap();
        let p2 = generate(Family::Path, &[2]).unwrap();
        assert_eq!(corona(&two, &p2).unwrap_err(), GraphError::Disconnected);
        // a disconnected second factor is fine
        assert_eq!(corona(&p2, &two).unwrap().order(), 6);
    }
}
