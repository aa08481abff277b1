//! Undirected graphs in compressed adjacency form, plus the plain-text
//! edge-list format used by every command.
//!
//! A [`Graph`] is simple unless it was built through
//! [`Graph::from_multi_edges`]; multigraphs arise only when a configuration is
//! projected without collapsing loops and parallel pairs. A loop at `v` lists
//! `v` twice in its own neighbor list, so it adds two to the degree.

use std::fmt::Write as _;
use std::io::{self, BufRead};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("self-loop at vertex {0} in a simple graph")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1} in a simple graph")]
    DuplicateEdge(u32, u32),
    #[error("edge list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge list declares {declared} edges but contains {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<io::Error> for GraphError {
    fn from(e: io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Normalized `(u, v)` with `u <= v`, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    simple: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::build(n, Vec::new(), true)
    }

    /// Builds a simple graph; loops and repeated pairs are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let edges = normalize(n, edges)?;
        for &(u, v) in &edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::build(n, edges, true))
    }

    /// Builds a multigraph; loops and parallel edges are kept.
    pub fn from_multi_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let edges = normalize(n, edges)?;
        let simple = edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
        Ok(Self::build(n, edges, simple))
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::build(n, edges, true)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges = (0..n as u32).map(|i| (i, (i + 1) % n as u32));
        Self::from_edges(n, edges).expect("cycle edges are simple")
    }

    fn build(n: usize, edges: Vec<(u32, u32)>, simple: bool) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Edges are sorted, so each row comes out sorted as long as the
        // smaller endpoint's entries are placed in edge order too.
        for &(u, v) in &edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { n, edges, offsets, targets, simple }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Neighbors of `v`, sorted, with multiplicity.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.degree(v) as u32).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabeled in
    /// ascending order. Returns the subgraph and the map from new ids to old.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<u32>) {
        assert_eq!(keep.len(), self.n);
        let mut new_id = vec![u32::MAX; self.n];
        let mut map = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = map.len() as u32;
                map.push(v as u32);
            }
        }
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]))
            .collect();
        // Relabeling is monotone, so the filtered list stays sorted.
        let simple = self.simple
            || (edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]));
        (Graph::build(map.len(), edges, simple), map)
    }

    /// Edge-list text: `n m` then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Endpoints may come in either order and
    /// in any line order; loops or repeated pairs yield a multigraph.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        Self::read_edge_list(text.as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut it = trimmed.split_whitespace();
            let a = parse_field(it.next(), idx + 1)?;
            let b = parse_field(it.next(), idx + 1)?;
            if it.next().is_some() {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    message: "expected two fields".into(),
                });
            }
            match header {
                None => header = Some((a as usize, b as usize)),
                Some((n, _)) => {
                    for x in [a, b] {
                        if x >= n as u64 {
                            return Err(GraphError::VertexOutOfRange { vertex: x, n });
                        }
                    }
                    edges.push((a as u32, b as u32));
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::EdgeCount { declared: m, found: edges.len() });
        }
        Graph::from_multi_edges(n, edges)
    }
}

fn parse_field(field: Option<&str>, line: usize) -> Result<u64, GraphError> {
    let field = field.ok_or(GraphError::Parse { line, message: "expected two fields".into() })?;
    field.parse::<u64>().map_err(|e| GraphError::Parse { line, message: format!("{field:?}: {e}") })
}

fn normalize<I>(n: usize, edges: I) -> Result<Vec<(u32, u32)>, GraphError>
where
    I: IntoIterator<Item = (u32, u32)>,
{
    let mut out: Vec<(u32, u32)> = Vec::new();
    for (u, v) in edges {
        for x in [u, v] {
            if x as usize >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x as u64, n });
            }
        }
        out.push(if u <= v { (u, v) } else { (v, u) });
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let sum: usize = (0..5).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
        assert_eq!(g.neighbors(0), &[1, 2, 4]);
        assert!(g.is_simple());
    }

    #[test]
    fn simple_constructor_rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn loop_counts_twice() {
        let g = Graph::from_multi_edges(2, [(0, 0), (0, 1), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.neighbors(0), &[0, 0, 1, 1]);
        assert!(!g.is_simple());
        assert_eq!(g.loop_count(), 1);
    }

    #[test]
    fn edge_list_is_sorted_and_round_trips() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "4 3\n0 1\n0 2\n2 3\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse_edge_list(""), Err(GraphError::Parse { .. })));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(GraphError::EdgeCount { declared: 2, found: 1 })
        ));
        assert!(matches!(
            Graph::parse_edge_list("2 1\n0 5\n"),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 2 })
        ));
        assert!(matches!(Graph::parse_edge_list("2 1\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn induced_relabels_monotonically() {
        let g = Graph::complete(5);
        let (h, map) = g.induced(&[true, false, true, false, true]);
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(h, Graph::complete(3));
    }
}
