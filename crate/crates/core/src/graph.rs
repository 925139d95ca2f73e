//! Simple undirected graphs, degree classification of edges and the
//! M-polynomial `sum_{i <= j} m_{i,j} x^i y^j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::bipoly::{rat, MPoly};

pub type VertexId = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Immutable simple graph. Build one with [`GraphBuilder`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a vertex; a no-op if it already exists.
    pub fn add_vertex(&mut self, v: VertexId) -> &mut Self {
        self.graph.adj.entry(v).or_default();
        self
    }

    /// Adds the edge `uv`, declaring both endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<&mut Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.graph.adj.get(&u).is_some_and(|n| n.contains(&v)) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.graph.adj.entry(u).or_default().insert(v);
        self.graph.adj.entry(v).or_default().insert(u);
        self.graph.edge_count += 1;
        Ok(self)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn build(self) -> Graph {
        self.graph
    }
}

impl Graph {
    /// Convenience constructor from an edge list.
    pub fn from_edges<I>(edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut b = GraphBuilder::new();
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Cycle on vertices `0..n` (`n >= 3`).
    pub fn cycle(n: u64) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are distinct")
    }

    /// Path on vertices `0..n`.
    pub fn path(n: u64) -> Graph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i);
        }
        for i in 1..n {
            b.add_edge(i - 1, i).expect("path edges are distinct");
        }
        b.build()
    }

    /// Complete graph on vertices `0..n`.
    pub fn complete(n: u64) -> Graph {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_vertex(i);
            for j in 0..i {
                b.add_edge(j, i).expect("complete graph edges are distinct");
            }
        }
        b.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn neighbors(&self, v: VertexId) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        self.adj
            .get(&v)
            .map(|n| n.iter().copied())
            .ok_or(GraphError::UnknownVertex(v))
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.adj.get(&v).map(BTreeSet::len).ok_or(GraphError::UnknownVertex(v))
    }

    fn deg(&self, v: VertexId) -> usize {
        self.adj[&v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Number of vertices of each degree, including degree 0.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for n in self.adj.values() {
            *h.entry(n.len()).or_insert(0) += 1;
        }
        h
    }

    /// The table `m_{i,j}`: edges whose endpoint degrees are `{i, j}`.
    pub fn edge_type_counts(&self) -> EdgeTypeCounts {
        let mut counts = BTreeMap::new();
        for (u, v) in self.edges() {
            let (a, b) = (self.deg(u), self.deg(v));
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        EdgeTypeCounts { counts }
    }

    pub fn m_polynomial(&self) -> MPoly {
        self.edge_type_counts().to_mpoly()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.adj.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[&u] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    /// Copy of the graph with every vertex id passed through `f`, which must be injective.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Graph {
        let mut b = GraphBuilder::new();
        for v in self.vertices() {
            b.add_vertex(f(v));
        }
        for (u, v) in self.edges() {
            b.add_edge(f(u), f(v)).expect("relabeling must be injective");
        }
        b.build()
    }
}

/// The `m_{i,j}` table of a graph, keyed by `(i, j)` with `i <= j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeTypeCounts {
    counts: BTreeMap<(usize, usize), u64>,
}

impl EdgeTypeCounts {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(
            self.counts
                .iter()
                .map(|(&(i, j), &c)| (i as i64, j as i64, rat(c as i64))),
        )
        .expect("degrees are nonnegative")
    }
}

impl FromIterator<((usize, usize), u64)> for EdgeTypeCounts {
    fn from_iter<T: IntoIterator<Item = ((usize, usize), u64)>>(iter: T) -> Self {
        let mut counts = BTreeMap::new();
        for ((i, j), c) in iter {
            if c > 0 {
                *counts.entry((i.min(j), i.max(j))).or_insert(0) += c;
            }
        }
        EdgeTypeCounts { counts }
    }
}

/// Parses the edge-list format.
///
/// One record per line: `u v` declares an edge, a lone `v` declares a
/// vertex (isolated unless it also appears in an edge). `#` starts a comment
/// running to end of line; blank lines are ignored. Ids are nonnegative
/// decimal integers. Self-loops and repeated edges are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut b = GraphBuilder::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if !content.is_ascii() {
            return Err(GraphError::Parse { line, msg: "non-ASCII input".into() });
        }
        let ids = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<VertexId>().map_err(|_| GraphError::Parse {
                    line,
                    msg: format!("invalid vertex id {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let wrap = |e: GraphError| GraphError::Parse { line, msg: e.to_string() };
        match ids.as_slice() {
            [] => {}
            [v] => {
                b.add_vertex(*v);
            }
            [u, v] => {
                b.add_edge(*u, *v).map_err(wrap)?;
            }
            _ => {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected 1 or 2 ids, found {}", ids.len()),
                })
            }
        }
    }
    Ok(b.build())
}

/// Writes a graph in the edge-list format: isolated vertices first, then
/// edges `u v` with `u < v` in ascending order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.deg(v) == 0) {
        let _ = writeln!(out, "{v}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::rat;

    #[test]
    fn degrees() {
        let c4 = Graph::cycle(4);
        assert!(c4.vertices().all(|v| c4.degree(v).unwrap() == 2));
        let mut b = GraphBuilder::new();
        b.add_vertex(7);
        b.add_edge(1, 2).unwrap();
        let g = b.build();
        assert_eq!(g.degree(7).unwrap(), 0);
        assert_eq!(g.degree(9), Err(GraphError::UnknownVertex(9)));
    }

    #[test]
    fn builder_rejects_loops_and_duplicates() {
        let mut b = GraphBuilder::new();
        assert_eq!(b.add_edge(3, 3).unwrap_err(), GraphError::SelfLoop(3));
        b.add_edge(1, 2).unwrap();
        assert_eq!(b.add_edge(2, 1).unwrap_err(), GraphError::DuplicateEdge(1, 2));
    }

    #[test]
    fn edge_types_of_small_graphs() {
        let c4 = Graph::cycle(4).edge_type_counts();
        assert_eq!(c4.iter().collect::<Vec<_>>(), vec![((2, 2), 4)]);
        let k2 = Graph::path(2).edge_type_counts();
        assert_eq!(k2.iter().collect::<Vec<_>>(), vec![((1, 1), 1)]);
        assert_eq!(Graph::path(2).m_polynomial().to_string(), "x y");
        assert_eq!(Graph::path(3).m_polynomial().to_string(), "2 x y^2");
    }

    #[test]
    fn histogram_includes_isolated() {
        let mut b = GraphBuilder::new();
        b.add_vertex(10).add_vertex(11);
        b.add_edge(0, 1).unwrap();
        let h = b.build().degree_histogram();
        assert_eq!(h, BTreeMap::from([(0, 2), (1, 2)]));
        assert_eq!(Graph::cycle(4).degree_histogram(), BTreeMap::from([(2, 4)]));
    }

    #[test]
    fn disconnected_graph_has_m11() {
        let g = Graph::from_edges([(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(!g.is_connected());
        let m = g.edge_type_counts();
        assert_eq!(m.get(1, 1), 1);
        assert_eq!(m.get(2, 1), 2);
        assert_eq!(m.total(), 3);
    }

    #[test]
    fn parse_edge_list_grammar() {
        let text = "# a triangle with a pendant\n0 1\n1 2  # trailing comment\n2 0\n\n2 3\n   9\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(9).unwrap(), 0);
        assert_eq!(write_edge_list(&g), "9\n0 1\n0 2\n1 2\n2 3\n");
    }

    #[test]
    fn parse_edge_list_errors() {
        let dup = parse_edge_list("0 1\n1 0\n").unwrap_err();
        assert!(matches!(dup, GraphError::Parse { line: 2, .. }));
        assert!(matches!(parse_edge_list("4 4"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\n1 x"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("1 2 3"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("-1 2"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn regular_graphs() {
        for n in 3..9 {
            let c = Graph::cycle(n);
            assert_eq!(c.m_polynomial(), MPoly::monomial(2, 2, rat(n as i64)));
        }
        let k4 = Graph::complete(4);
        assert_eq!(k4.m_polynomial(), MPoly::monomial(3, 3, rat(6)));
    }
}
