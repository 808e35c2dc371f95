//! Undirected simple graphs with dense vertex ids, BFS with exact
//! shortest-path counts, and the edge-list / DOT text formats.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Vertex = usize;

/// Canonical unordered edge, always stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// Builds the canonical form of `{a, b}`. Panics on a self-loop.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "self-loop is not an edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    OutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(Vertex),
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Immutable undirected simple graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(vertex_count: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::OutOfRange(a, b, vertex_count));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        for e in &edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.vertex_count() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<usize, GraphError> {
        self.edge_index(e).ok_or(GraphError::NotAnEdge(e.u, e.v))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Plain BFS distances; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        self.bfs_distances(source, None)
    }

    /// BFS from `source` with per-vertex shortest-path counts.
    pub fn bfs_with_counts(&self, source: Vertex) -> BfsResult {
        let n = self.vertex_count();
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut count = vec![BigUint::zero(); n];
        dist[source] = Some(0);
        count[source] = BigUint::one();
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices are reached");
            for &w in &self.adjacency[u] {
                match dist[w] {
                    None => {
                        dist[w] = Some(du + 1);
                        count[w] = count[u].clone();
                        queue.push_back(w);
                    }
                    Some(dw) if dw == du + 1 => {
                        let c = count[u].clone();
                        count[w] += c;
                    }
                    _ => {}
                }
            }
        }
        BfsResult { source, dist, count }
    }

    /// Hop distance from `x` to `y` in the graph with edge `e` deleted.
    pub fn distance_without_edge(
        &self,
        x: Vertex,
        y: Vertex,
        e: Edge,
    ) -> Result<Option<usize>, GraphError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.check_edge(e)?;
        Ok(self.bfs_distances(x, Some(e))[y])
    }

    fn bfs_distances(&self, source: Vertex, skip: Option<Edge>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() && skip != Some(Edge::new(u, w)) {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Parses the edge-list format: header `n m`, then `m` lines `u v`.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edge_list = Vec::with_capacity(m);
        for (line, l) in lines {
            edge_list.push(parse_pair(line, l).map(|[a, b]| (a, b))?);
        }
        if edge_list.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edge_list.len()),
            });
        }
        Graph::new(n, &edge_list)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for e in &self.edges {
            let _ = writeln!(out, "{e}");
        }
        out
    }

    /// DOT rendering; `label` may supply per-vertex display names.
    pub fn to_dot(&self, label: Option<&dyn Fn(Vertex) -> String>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            match label {
                Some(f) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", f(v).replace('"', "'"));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            msg: format!("expected two integers, got `{text}`"),
        });
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| GraphError::Parse {
            line,
            msg: format!("`{f}` is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

/// Distances and shortest-path counts from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsResult {
    pub source: Vertex,
    /// `None` is the unreachable sentinel.
    pub dist: Vec<Option<usize>>,
    /// Number of distinct shortest paths; zero for unreachable vertices.
    pub count: Vec<BigUint>,
}
