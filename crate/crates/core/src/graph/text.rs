use super::{Graph, GraphError};

/// Reads the plain edge-list format: a header `n m`, then `m` lines `u v`
/// with 0-based ids. Blank lines and `#` comments are skipped.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Format("missing header".into()))?;
    let [n, m] = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let [u, v] = parse_pair(line)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Format(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(line: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<_> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Format(format!(
            "expected two integers, got `{line}`"
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| GraphError::Format(format!("not a vertex id: `{s}`")))
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}

pub fn to_graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
