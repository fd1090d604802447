//! Vertex coordinates in the unit square for rendering.

use std::f64::consts::TAU;

use crate::graph::{CoronaLabel, Family, Graph};

const CENTRE: (f64, f64) = (0.5, 0.5);
const MARGIN: f64 = 0.05;

fn round(v: f64) -> f64 {
    // four decimals keep documents byte-stable across platforms
    (v * 1e4).round() / 1e4
}

fn on_circle(centre: (f64, f64), radius: f64, angle: f64) -> [f64; 2] {
    [
        centre.0 + radius * angle.cos(),
        centre.1 + radius * angle.sin(),
    ]
}

fn ring(n: usize, centre: (f64, f64), radius: f64, offset: f64) -> Vec<[f64; 2]> {
    if n == 1 {
        return vec![[centre.0, centre.1]];
    }
    (0..n)
        .map(|i| on_circle(centre, radius, offset + TAU * i as f64 / n as f64))
        .collect()
}

fn line(n: usize) -> Vec<[f64; 2]> {
    if n == 1 {
        return vec![[CENTRE.0, CENTRE.1]];
    }
    (0..n)
        .map(|i| {
            [
                MARGIN + (1.0 - 2.0 * MARGIN) * i as f64 / (n - 1) as f64,
                CENTRE.1,
            ]
        })
        .collect()
}

/// Paths on a horizontal line, coronas as one cluster per base vertex
/// placed radially outside it, everything else on a circle.
pub fn layout(g: &Graph) -> Vec<[f64; 2]> {
    let points = match (g.corona_factors(), g.labels()) {
        (Some(f), Some(labels)) => {
            let (nb, nh) = (f.base_order(), f.fiber_order());
            let angle = |i: usize| -TAU / 4.0 + TAU * i as f64 / nb as f64;
            let (base_r, cluster_r, spread) = if nb == 1 {
                (0.0, 0.0, 0.42)
            } else {
                let spread = (0.12f64).min(0.9 * (TAU / nb as f64 / 2.0).sin() * 0.34);
                (0.18, 0.45 - spread, spread)
            };
            labels
                .iter()
                .map(|&label| match label {
                    CoronaLabel::Base { index } => on_circle(CENTRE, base_r, angle(index)),
                    CoronaLabel::Copy { copy, index } => {
                        let c = on_circle(CENTRE, cluster_r, angle(copy));
                        ring(nh, (c[0], c[1]), spread, angle(copy))[index]
                    }
                })
                .collect()
        }
        _ => match g.origin().and_then(|e| e.family()) {
            Some((Family::Path, _)) => line(g.order()),
            _ => ring(g.order(), CENTRE, 0.45, -TAU / 4.0),
        },
    };
    points
        .into_iter()
        .map(|[x, y]| [round(x), round(y)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph_expr;

    fn inside(points: &[[f64; 2]]) -> bool {
        points.iter().flatten().all(|c| (0.0..=1.0).contains(c))
    }

    #[test]
    fn shapes() {
        for expr in [
            "path(7)",
            "cycle(9)",
            "petersen",
            "corona(path(2),cycle(4))",
            "corona(k1,paw)",
            "corona(cycle(6),path(3))",
            "k1",
        ] {
            let g = parse_graph_expr(expr).unwrap();
            let p = layout(&g);
            assert_eq!(p.len(), g.order(), "{expr}");
            assert!(inside(&p), "{expr}: {p:?}");
        }
        let p = layout(&parse_graph_expr("path(3)").unwrap());
        assert!(p.iter().all(|q| q[1] == 0.5));
    }

    #[test]
    fn corona_clusters_sit_outside_their_base() {
        let g = parse_graph_expr("corona(path(2),cycle(4))").unwrap();
        let p = layout(&g);
        let dist =
            |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
        let f = g.corona_factors().unwrap();
        for copy in 0..2 {
            for j in 0..4 {
                let v = p[f.copy_vertex(copy, j)];
                assert!(dist(v, p[copy]) < dist(v, p[1 - copy]));
            }
        }
    }
}
