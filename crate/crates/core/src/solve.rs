//! Minimum and minimal MEG-sets.
//!
//! Every degree-1 vertex belongs to every MEG-set, and (for `n >= 3`) the
//! sole neighbor of a degree-1 vertex can always be dropped from a MEG-set.
//! The exact search seeds with the former and never tries the latter.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::monitoring::{MegSet, MonitorError, MonitorTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Monitor(#[from] MonitorError),
    #[error("graph has {0} vertices, need at least {1}")]
    TooSmall(usize, usize),
    #[error("input is not a MEG-set of the graph")]
    NotMegSet,
}

impl From<GraphError> for SolveError {
    fn from(e: GraphError) -> Self {
        SolveError::Monitor(e.into())
    }
}

fn require(g: &Graph, min_n: usize) -> Result<(), SolveError> {
    g.ensure_connected()?;
    if g.vertex_count() < min_n {
        return Err(SolveError::TooSmall(g.vertex_count(), min_n));
    }
    Ok(())
}

/// Degree-1 vertices, ascending.
pub fn forced_vertices(g: &Graph) -> Result<Vec<Vertex>, SolveError> {
    require(g, 2)?;
    Ok((0..g.vertex_count()).filter(|&v| g.degree(v) == 1).collect())
}

/// Sole neighbors of degree-1 vertices, ascending.
pub fn removable_vertices(g: &Graph) -> Result<Vec<Vertex>, SolveError> {
    require(g, 3)?;
    let mut out: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 1)
        .map(|v| g.neighbors(v)[0])
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Minimum-cardinality MEG-set, lexicographically least among the
/// minimum ones the search visits. With `budget = Some(b)` the search
/// gives up (returning `None`) once every set of size `<= b` has failed.
pub fn exact_min_meg(g: &Graph, budget: Option<usize>) -> Result<Option<MegSet>, SolveError> {
    require(g, 2)?;
    let n = g.vertex_count();
    if n == 2 {
        return Ok((budget.unwrap_or(2) >= 2).then(|| MegSet::new(vec![0, 1])));
    }
    let table = MonitorTable::new(g)?;
    let forced = forced_vertices(g)?;
    let removable = removable_vertices(g)?;
    let candidates: Vec<Vertex> = (0..n)
        .filter(|v| forced.binary_search(v).is_err() && removable.binary_search(v).is_err())
        .collect();

    let base = table.monitored_by(&forced);
    // Edges monitored by a candidate together with any forced vertex.
    let with_forced: Vec<FixedBitSet> = candidates
        .iter()
        .map(|&c| table.monitored_with(c, &forced))
        .collect();

    let search = Search {
        table: &table,
        candidates: &candidates,
        with_forced: &with_forced,
    };
    for extra in 0..=candidates.len() {
        if budget.is_some_and(|b| forced.len() + extra > b) {
            return Ok(None);
        }
        let mut chosen = Vec::with_capacity(extra);
        if search.descend(&base, 0, extra, &mut chosen) {
            let picked = chosen.iter().map(|&i| candidates[i]);
            return Ok(Some(forced.iter().copied().chain(picked).collect()));
        }
    }
    unreachable!("the full vertex set of a connected graph is a MEG-set")
}

struct Search<'a> {
    table: &'a MonitorTable,
    candidates: &'a [Vertex],
    with_forced: &'a [FixedBitSet],
}

impl Search<'_> {
    /// Depth-first walk over candidate combinations in lexicographic order.
    /// `chosen` holds candidate indices; on success it holds the solution.
    fn descend(
        &self,
        acc: &FixedBitSet,
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return acc.is_full();
        }
        let last = self.candidates.len() - remaining;
        for idx in start..=last {
            let v = self.candidates[idx];
            let mut next = acc.clone();
            next.union_with(&self.with_forced[idx]);
            for &c in chosen.iter() {
                next.union_with(self.table.pair(self.candidates[c], v));
            }
            chosen.push(idx);
            if self.descend(&next, idx + 1, remaining - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Greedy heuristic: start from the forced vertices, then repeatedly add the
/// vertex that newly monitors the most edges (lowest id on ties).
pub fn greedy_meg(g: &Graph) -> Result<MegSet, SolveError> {
    require(g, 2)?;
    let table = MonitorTable::new(g)?;
    let mut members = forced_vertices(g)?;
    let mut covered = table.monitored_by(&members);
    while !covered.is_full() {
        let mut best: Option<(usize, Vertex, FixedBitSet)> = None;
        for v in (0..g.vertex_count()).filter(|v| !members.contains(v)) {
            let mut gained = table.monitored_with(v, &members);
            gained.difference_with(&covered);
            let gain = gained.count_ones(..);
            if best.as_ref().is_none_or(|(b, _, _)| gain > *b) {
                best = Some((gain, v, gained));
            }
        }
        let (_, v, gained) = best.expect("an unmonitored edge implies a vertex outside the set");
        covered.union_with(&gained);
        members.push(v);
    }
    Ok(MegSet::new(members))
}

/// Drops vertices of `m` in ascending order whenever the rest still
/// verifies. The result is minimal.
pub fn minimalize(g: &Graph, m: &MegSet) -> Result<MegSet, SolveError> {
    g.ensure_connected()?;
    for &v in m.vertices() {
        g.check_vertex(v)?;
    }
    let table = MonitorTable::new(g)?;
    minimalize_with(&table, m)
}

/// [`minimalize`] against a prebuilt table.
pub fn minimalize_with(table: &MonitorTable, m: &MegSet) -> Result<MegSet, SolveError> {
    if m.is_empty() {
        return Err(MonitorError::EmptySet.into());
    }
    let mut kept = m.vertices().to_vec();
    if !table.is_meg_set(&kept) {
        return Err(SolveError::NotMegSet);
    }
    let mut i = 0;
    while i < kept.len() {
        let v = kept.remove(i);
        if !table.is_meg_set(&kept) {
            kept.insert(i, v);
            i += 1;
        }
    }
    Ok(MegSet::new(kept))
}
