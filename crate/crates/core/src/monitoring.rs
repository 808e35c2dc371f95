//! The monitoring predicate and MEG-set verification.
//!
//! A pair `{x, y}` monitors edge `e` when `e` lies on every shortest
//! `x`–`y` path. With BFS distances `d` and shortest-path counts `σ` this
//! holds iff, for one orientation `(a, b)` of `e`,
//! `d(x,a) + 1 + d(b,y) = d(x,y)` and `σ(x,a)·σ(b,y) = σ(x,y)`.
//! The edge-deletion test in [`pair_monitors_edge_oracle`] is an
//! independent route to the same answer.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{BfsResult, Edge, Graph, GraphError, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonitorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("a monitoring pair needs two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error("MEG-set is empty")]
    EmptySet,
    #[error("cannot parse MEG-set: `{0}` is not a vertex id")]
    Parse(String),
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct MegSet {
    vertices: Vec<Vertex>,
}

impl MegSet {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        MegSet { vertices }
    }

    pub fn all(g: &Graph) -> Self {
        MegSet {
            vertices: (0..g.vertex_count()).collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn without(&self, v: Vertex) -> Self {
        MegSet {
            vertices: self.vertices.iter().copied().filter(|&w| w != v).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &MegSet) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }

    /// Parses one line of whitespace-separated vertex ids.
    pub fn parse(text: &str) -> Result<Self, MonitorError> {
        let ids = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace)
            .map(|t| t.parse().map_err(|_| MonitorError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MegSet::new(ids))
    }

    fn check(&self, g: &Graph) -> Result<(), MonitorError> {
        if self.is_empty() {
            return Err(MonitorError::EmptySet);
        }
        for &v in &self.vertices {
            g.check_vertex(v)?;
        }
        Ok(())
    }
}

impl fmt::Display for MegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromIterator<Vertex> for MegSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        MegSet::new(iter.into_iter().collect())
    }
}

/// A pair `x < y` certified to monitor `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MonitorWitness {
    pub x: Vertex,
    pub y: Vertex,
    pub edge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Every unmonitored edge, in canonical order.
    Invalid { unmonitored: Vec<Edge> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => writeln!(f, "VALID"),
            Verdict::Invalid { unmonitored } => {
                writeln!(f, "INVALID")?;
                for e in unmonitored {
                    writeln!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

fn check_pair(g: &Graph, x: Vertex, y: Vertex) -> Result<(), MonitorError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(MonitorError::SameVertex(x));
    }
    g.ensure_connected()?;
    Ok(())
}

/// Predicate evaluation on precomputed BFS runs from `x` and `y`.
pub(crate) fn monitors_with(from_x: &BfsResult, from_y: &BfsResult, e: Edge) -> bool {
    let (dx, dy) = (&from_x.dist, &from_y.dist);
    let Some(total) = dx[from_y.source] else {
        return false;
    };
    let total_count = &from_x.count[from_y.source];
    [(e.u, e.v), (e.v, e.u)].into_iter().any(|(a, b)| {
        match (dx[a], dy[b]) {
            (Some(da), Some(db)) if da + 1 + db == total => {
                &from_x.count[a] * &from_y.count[b] == *total_count
            }
            _ => false,
        }
    })
}

pub fn pair_monitors_edge(g: &Graph, x: Vertex, y: Vertex, e: Edge) -> Result<bool, MonitorError> {
    check_pair(g, x, y)?;
    g.check_edge(e)?;
    Ok(monitors_with(&g.bfs_with_counts(x), &g.bfs_with_counts(y), e))
}

/// `{x, y}` monitors `e` iff deleting `e` strictly increases `d(x, y)`.
pub fn pair_monitors_edge_oracle(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    e: Edge,
) -> Result<bool, MonitorError> {
    check_pair(g, x, y)?;
    let before = g.distances_from(x)[y];
    let after = g.distance_without_edge(x, y, e)?;
    Ok(match (before, after) {
        (Some(b), Some(a)) => a > b,
        (Some(_), None) => true,
        (None, _) => false,
    })
}

/// All edges monitored by `{x, y}`, canonical order.
pub fn monitored_edges_of_pair(g: &Graph, x: Vertex, y: Vertex) -> Result<Vec<Edge>, MonitorError> {
    check_pair(g, x, y)?;
    let (bx, by) = (g.bfs_with_counts(x), g.bfs_with_counts(y));
    Ok(g.edges()
        .iter()
        .copied()
        .filter(|&e| monitors_with(&bx, &by, e))
        .collect())
}

pub fn verify_meg_set(g: &Graph, m: &MegSet) -> Result<Verdict, MonitorError> {
    m.check(g)?;
    g.ensure_connected()?;
    let runs: Vec<BfsResult> = m.vertices().iter().map(|&v| g.bfs_with_counts(v)).collect();
    let mut monitored = FixedBitSet::with_capacity(g.edge_count());
    for i in 0..runs.len() {
        for j in i + 1..runs.len() {
            for (idx, &e) in g.edges().iter().enumerate() {
                if !monitored[idx] && monitors_with(&runs[i], &runs[j], e) {
                    monitored.insert(idx);
                }
            }
        }
    }
    let unmonitored: Vec<Edge> = monitored
        .zeroes()
        .map(|idx| g.edges()[idx])
        .collect();
    Ok(if unmonitored.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid { unmonitored }
    })
}

/// Lexicographically least pair of `m` monitoring `e`, if any.
pub fn witness_for_edge(
    g: &Graph,
    m: &MegSet,
    e: Edge,
) -> Result<Option<MonitorWitness>, MonitorError> {
    m.check(g)?;
    g.ensure_connected()?;
    g.check_edge(e)?;
    let runs: Vec<BfsResult> = m.vertices().iter().map(|&v| g.bfs_with_counts(v)).collect();
    for i in 0..runs.len() {
        for j in i + 1..runs.len() {
            if monitors_with(&runs[i], &runs[j], e) {
                return Ok(Some(MonitorWitness {
                    x: m.vertices()[i],
                    y: m.vertices()[j],
                    edge: e,
                }));
            }
        }
    }
    Ok(None)
}

/// Monitored-edge bitsets for every vertex pair of a connected graph.
///
/// Built once from one BFS per vertex; the solvers evaluate candidate
/// sets as unions of these rows.
#[derive(Debug, Clone)]
pub struct MonitorTable {
    n: usize,
    m: usize,
    rows: Vec<FixedBitSet>,
}

impl MonitorTable {
    pub fn new(g: &Graph) -> Result<Self, MonitorError> {
        g.ensure_connected()?;
        let n = g.vertex_count();
        let runs: Vec<BfsResult> = (0..n).map(|v| g.bfs_with_counts(v)).collect();
        let mut rows = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for x in 0..n {
            for y in x + 1..n {
                let mut row = FixedBitSet::with_capacity(g.edge_count());
                for (idx, &e) in g.edges().iter().enumerate() {
                    if monitors_with(&runs[x], &runs[y], e) {
                        row.insert(idx);
                    }
                }
                rows.push(row);
            }
        }
        Ok(MonitorTable {
            n,
            m: g.edge_count(),
            rows,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges monitored by `{x, y}`, `x != y`.
    pub fn pair(&self, x: Vertex, y: Vertex) -> &FixedBitSet {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        debug_assert!(a != b && b < self.n);
        &self.rows[a * self.n - a * (a + 1) / 2 + (b - a - 1)]
    }

    /// Union of the rows of all pairs inside `vertices`.
    pub fn monitored_by(&self, vertices: &[Vertex]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.m);
        for (i, &x) in vertices.iter().enumerate() {
            for &y in &vertices[i + 1..] {
                acc.union_with(self.pair(x, y));
            }
        }
        acc
    }

    /// Edges monitored by pairs `{v, w}` with `w` in `others`.
    pub fn monitored_with(&self, v: Vertex, others: &[Vertex]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.m);
        for &w in others.iter().filter(|&&w| w != v) {
            acc.union_with(self.pair(v, w));
        }
        acc
    }

    pub fn is_meg_set(&self, vertices: &[Vertex]) -> bool {
        self.monitored_by(vertices).is_full()
    }
}
