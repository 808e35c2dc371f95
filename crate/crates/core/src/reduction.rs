//! Gadget graph built from a Set Cover instance, conversion between set
//! covers and MEG-sets, and the end-to-end approximation pipeline.
//!
//! For an instance with `eta` items and `h` sets (`N = eta + h`) and a
//! copy count `k >= 2`, the graph holds `k` disjoint copies of the
//! item/set incidence graph. Item `i` gets a hub `y_i` joined to every copy
//! of `x_i` plus a pendant `y'_i`; the hubs form a clique. Set `j` gets a
//! hub `z_j` joined to every copy of `S_j` plus a pendant `z'_j`.
//!
//! Vertex ids are laid out copy-major (items before sets inside a copy),
//! followed by the `Y`, `Y'`, `Z` and `Z'` blocks.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::monitoring::{MegSet, MonitorTable};
use crate::setcover::{exact_min_cover, normalize, validate_cover, CoverError, SetCoverInstance};
use crate::solve::{exact_min_meg, greedy_meg, minimalize_with, SolveError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("copy count k = {0}; at least 2 copies are required")]
    TooFewCopies(usize),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("expected {expected} covers (one per copy), got {got}")]
    CoverCount { expected: usize, got: usize },
    #[error("collection #{0} is not a set cover")]
    NotACover(usize),
    #[error("input is not a MEG-set of the reduction graph")]
    NotMegSet,
    #[error("copy {0} of the extracted MEG-set does not induce a set cover")]
    ExtractedNotCover(usize),
    #[error("exact MEG search exceeded the budget of {0} vertices")]
    BudgetExceeded(usize),
}

/// What a vertex of the reduction graph stands for. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Role {
    Item { i: usize, l: usize },
    Set { j: usize, l: usize },
    Y { i: usize },
    YPrime { i: usize },
    Z { j: usize },
    ZPrime { j: usize },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Item { i, l } => write!(f, "item i={i} l={l}"),
            Role::Set { j, l } => write!(f, "set j={j} l={l}"),
            Role::Y { i } => write!(f, "y i={i}"),
            Role::YPrime { i } => write!(f, "y_prime i={i}"),
            Role::Z { j } => write!(f, "z j={j}"),
            Role::ZPrime { j } => write!(f, "z_prime j={j}"),
        }
    }
}

/// Item/set incidence graph: items are vertices `0..eta`, set `j` is
/// vertex `eta + j`.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub eta: usize,
}

impl IncidenceGraph {
    pub fn is_item(&self, v: Vertex) -> bool {
        v < self.eta
    }
}

pub fn build_incidence_graph(inst: &SetCoverInstance) -> IncidenceGraph {
    let edges: Vec<(Vertex, Vertex)> = inst
        .sets()
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |&i| (i, inst.eta() + j)))
        .collect();
    IncidenceGraph {
        graph: Graph::new(inst.size(), &edges).expect("incidence edges are simple"),
        eta: inst.eta(),
    }
}

/// `(k + 2)(eta + h)`.
pub fn expected_vertex_count(inst: &SetCoverInstance, k: usize) -> usize {
    (k + 2) * inst.size()
}

/// `k·Σ|S_j| + k·eta + k·h + eta + h + eta(eta-1)/2`.
pub fn expected_edge_count(inst: &SetCoverInstance, k: usize) -> usize {
    let (eta, h) = (inst.eta(), inst.h());
    let incidences: usize = inst.sets().iter().map(Vec::len).sum();
    k * incidences + k * eta + k * h + eta + h + eta * eta.saturating_sub(1) / 2
}

/// The reduction graph together with its role bookkeeping.
#[derive(Debug, Clone)]
pub struct ReductionLayout {
    instance: SetCoverInstance,
    k: usize,
    graph: Graph,
}

pub fn build_reduction(inst: &SetCoverInstance, k: usize) -> Result<ReductionLayout, ReductionError> {
    if k < 2 {
        return Err(ReductionError::TooFewCopies(k));
    }
    let mut layout = ReductionLayout {
        instance: inst.clone(),
        k,
        graph: Graph::new(0, &[]).unwrap(),
    };
    let (eta, h) = (inst.eta(), inst.h());
    let mut edges = Vec::with_capacity(expected_edge_count(inst, k));
    for l in 0..k {
        for (j, s) in inst.sets().iter().enumerate() {
            for &i in s {
                edges.push((layout.item(i, l), layout.set(j, l)));
            }
            edges.push((layout.set(j, l), layout.z(j)));
        }
        for i in 0..eta {
            edges.push((layout.item(i, l), layout.y(i)));
        }
    }
    for i in 0..eta {
        edges.push((layout.y(i), layout.y_prime(i)));
        for i2 in i + 1..eta {
            edges.push((layout.y(i), layout.y(i2)));
        }
    }
    for j in 0..h {
        edges.push((layout.z(j), layout.z_prime(j)));
    }
    layout.graph = Graph::new(expected_vertex_count(inst, k), &edges)
        .expect("gadget edges are simple and in range");
    Ok(layout)
}

impl ReductionLayout {
    pub fn instance(&self) -> &SetCoverInstance {
        &self.instance
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eta(&self) -> usize {
        self.instance.eta()
    }

    pub fn h(&self) -> usize {
        self.instance.h()
    }

    fn hubs(&self) -> usize {
        self.k * self.instance.size()
    }

    pub fn item(&self, i: usize, l: usize) -> Vertex {
        l * self.instance.size() + i
    }

    pub fn set(&self, j: usize, l: usize) -> Vertex {
        l * self.instance.size() + self.eta() + j
    }

    pub fn y(&self, i: usize) -> Vertex {
        self.hubs() + i
    }

    pub fn y_prime(&self, i: usize) -> Vertex {
        self.hubs() + self.eta() + i
    }

    pub fn z(&self, j: usize) -> Vertex {
        self.hubs() + 2 * self.eta() + j
    }

    pub fn z_prime(&self, j: usize) -> Vertex {
        self.hubs() + 2 * self.eta() + self.h() + j
    }

    pub fn vertex_of(&self, role: Role) -> Vertex {
        match role {
            Role::Item { i, l } => self.item(i, l),
            Role::Set { j, l } => self.set(j, l),
            Role::Y { i } => self.y(i),
            Role::YPrime { i } => self.y_prime(i),
            Role::Z { j } => self.z(j),
            Role::ZPrime { j } => self.z_prime(j),
        }
    }

    pub fn role_of(&self, v: Vertex) -> Role {
        let (eta, h, size) = (self.eta(), self.h(), self.instance.size());
        if v < self.hubs() {
            let (l, r) = (v / size, v % size);
            return if r < eta {
                Role::Item { i: r, l }
            } else {
                Role::Set { j: r - eta, l }
            };
        }
        let r = v - self.hubs();
        match r {
            _ if r < eta => Role::Y { i: r },
            _ if r < 2 * eta => Role::YPrime { i: r - eta },
            _ if r < 2 * eta + h => Role::Z { j: r - 2 * eta },
            _ => {
                assert!(r < 2 * eta + 2 * h, "vertex {v} outside the layout");
                Role::ZPrime { j: r - 2 * eta - h }
            }
        }
    }

    /// The pendant vertices `Y' ∪ Z'`, ascending.
    pub fn pendants(&self) -> Vec<Vertex> {
        (0..self.eta())
            .map(|i| self.y_prime(i))
            .chain((0..self.h()).map(|j| self.z_prime(j)))
            .collect()
    }

    /// Vertices of `Y ∪ Y' ∪ Z ∪ Z'`, ascending.
    pub fn outer_vertices(&self) -> std::ops::Range<Vertex> {
        self.hubs()..self.graph.vertex_count()
    }

    /// `x_{i,l}` together with every `S_{j,l}` whose set contains item `i`.
    pub fn guard(&self, i: usize, l: usize) -> Vec<Vertex> {
        std::iter::once(self.item(i, l))
            .chain(self.instance.sets_containing(i).into_iter().map(|j| self.set(j, l)))
            .collect()
    }

    /// Sets `j` with `S_{j,l}` in `m`, ascending.
    pub fn collection_in_copy(&self, m: &MegSet, l: usize) -> Vec<usize> {
        (0..self.h()).filter(|&j| m.contains(self.set(j, l))).collect()
    }

    /// `vertex_id role` per line.
    pub fn layout_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.graph.vertex_count() {
            let _ = writeln!(out, "{v} {}", self.role_of(v));
        }
        out
    }

    /// DOT rendering labelled with gadget roles.
    pub fn to_dot(&self) -> String {
        let label = |v: Vertex| -> String {
            match self.role_of(v) {
                Role::Item { i, l } => format!("x{},{}", i + 1, l + 1),
                Role::Set { j, l } => format!("S{},{}", j + 1, l + 1),
                Role::Y { i } => format!("y{}", i + 1),
                Role::YPrime { i } => format!("y'{}", i + 1),
                Role::Z { j } => format!("z{}", j + 1),
                Role::ZPrime { j } => format!("z'{}", j + 1),
            }
        };
        self.graph.to_dot(Some(&label))
    }
}

/// `L` plus `S_{j,l}` for every set `j` chosen in the `l`-th cover.
pub fn meg_from_covers(layout: &ReductionLayout, covers: &[Vec<usize>]) -> Result<MegSet, ReductionError> {
    if covers.len() != layout.k() {
        return Err(ReductionError::CoverCount {
            expected: layout.k(),
            got: covers.len(),
        });
    }
    let mut vertices = layout.pendants();
    for (l, cover) in covers.iter().enumerate() {
        if !validate_cover(layout.instance(), cover)? {
            return Err(ReductionError::NotACover(l));
        }
        vertices.extend(cover.iter().map(|&j| layout.set(j, l)));
    }
    Ok(MegSet::new(vertices))
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Extraction {
    /// Minimal MEG-set contained in the input.
    pub minimal: MegSet,
    /// `minimal` with every item vertex swapped for a set vertex.
    pub meg: MegSet,
    /// Set cover induced by each copy.
    pub covers: Vec<Vec<usize>>,
    /// Index of the smallest cover (lowest copy on ties).
    pub best_copy: usize,
    /// Whether `meg` verifies as a MEG-set. The cover-to-MEG-set
    /// construction can miss an edge `(x_i, S_j)` when every chosen set
    /// containing `x_i` shares two or more items with `S_j`, so this is
    /// checked rather than assumed.
    pub meg_valid: bool,
}

impl Extraction {
    pub fn best(&self) -> &[usize] {
        &self.covers[self.best_copy]
    }
}

/// Turns any MEG-set of the reduction graph into one of no larger size
/// whose copies each induce a set cover.
pub fn extract_covers(layout: &ReductionLayout, m_prime: &MegSet) -> Result<Extraction, ReductionError> {
    let table = MonitorTable::new(layout.graph()).map_err(SolveError::from)?;
    extract_covers_with(layout, &table, m_prime)
}

pub fn extract_covers_with(
    layout: &ReductionLayout,
    table: &MonitorTable,
    m_prime: &MegSet,
) -> Result<Extraction, ReductionError> {
    for &v in m_prime.vertices() {
        layout.graph().check_vertex(v).map_err(SolveError::from)?;
    }
    let minimal = match minimalize_with(table, m_prime) {
        Err(SolveError::NotMegSet) => return Err(ReductionError::NotMegSet),
        other => other?,
    };
    let inst = layout.instance();
    let meg: MegSet = minimal
        .vertices()
        .iter()
        .map(|&v| match layout.role_of(v) {
            Role::Item { i, l } => layout.set(inst.sets_containing(i)[0], l),
            _ => v,
        })
        .collect();
    let covers: Vec<Vec<usize>> = (0..layout.k()).map(|l| layout.collection_in_copy(&meg, l)).collect();
    for (l, cover) in covers.iter().enumerate() {
        if !validate_cover(inst, cover)? {
            return Err(ReductionError::ExtractedNotCover(l));
        }
    }
    let meg_valid = table.is_meg_set(meg.vertices());
    let best_copy = (0..covers.len())
        .min_by_key(|&l| covers[l].len())
        .expect("k >= 2 copies");
    Ok(Extraction {
        minimal,
        meg,
        covers,
        best_copy,
        meg_valid,
    })
}

/// MEG solver driving the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MegSolver {
    /// Optional cap on the MEG-set size; the run fails when exceeded.
    Exact { budget: Option<usize> },
    Greedy,
}

impl fmt::Display for MegSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MegSolver::Exact { .. } => "exact",
            MegSolver::Greedy => "greedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Copy count; `None` selects `N - 2` (or 2 when `N < 4`).
    pub k: Option<usize>,
    pub solver: MegSolver,
    /// Kernelize first and reduce only the residual instance.
    pub normalize_first: bool,
    /// Largest `h` for which the exact cover optimum is computed.
    pub exact_cover_max_sets: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            k: None,
            solver: MegSolver::Greedy,
            normalize_first: false,
            exact_cover_max_sets: 20,
        }
    }
}

/// Copy count used by the pipeline for an instance of size `big_n`.
pub fn default_copies(big_n: usize) -> usize {
    if big_n >= 4 {
        (big_n - 2).max(2)
    } else {
        2
    }
}

/// Numbers from one pipeline run. Sizes refer to the reduced instance;
/// `best_cover` is given in original set indices and includes `forced`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PipelineReport {
    pub eta: usize,
    pub h: usize,
    pub big_n: usize,
    pub normalized_input: bool,
    pub solved_by_normalization: bool,
    pub forced: Vec<usize>,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub solver: String,
    /// Size of the MEG-set returned by the solver.
    pub solver_meg_size: usize,
    /// Size of the MEG-set after extraction.
    pub meg_size: usize,
    /// Whether the extracted set verifies as a MEG-set.
    pub meg_valid: bool,
    pub copy_cover_sizes: Vec<usize>,
    pub best_copy: usize,
    pub best_cover: Vec<usize>,
    pub best_cover_valid: bool,
    /// `k·|best| <= |M|`.
    pub ratio_holds: bool,
    pub h_star: Option<usize>,
    /// `N + k·h*`.
    pub upper_bound: Option<usize>,
    /// `solver_meg_size <= upper_bound`; only meaningful for the exact solver.
    pub bound_holds: Option<bool>,
}

impl PipelineReport {
    /// `key=value` lines.
    pub fn to_text(&self) -> String {
        fn list(v: &[usize]) -> String {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
        }
        let mut out = String::new();
        let rows: [(&str, String); 22] = [
            ("eta", self.eta.to_string()),
            ("h", self.h.to_string()),
            ("N", self.big_n.to_string()),
            ("normalized_input", self.normalized_input.to_string()),
            ("solved_by_normalization", self.solved_by_normalization.to_string()),
            ("forced", list(&self.forced)),
            ("k", self.k.to_string()),
            ("n", self.n.to_string()),
            ("m", self.m.to_string()),
            ("solver", self.solver.clone()),
            ("solver_meg_size", self.solver_meg_size.to_string()),
            ("meg_size", self.meg_size.to_string()),
            ("meg_valid", self.meg_valid.to_string()),
            ("copy_cover_sizes", list(&self.copy_cover_sizes)),
            ("best_copy", self.best_copy.to_string()),
            ("best_cover", list(&self.best_cover)),
            ("best_cover_size", self.best_cover.len().to_string()),
            ("best_cover_valid", self.best_cover_valid.to_string()),
            ("ratio_holds", self.ratio_holds.to_string()),
            ("h_star", opt(&self.h_star)),
            ("upper_bound", opt(&self.upper_bound)),
            ("bound_holds", opt(&self.bound_holds)),
        ];
        for (key, value) in rows {
            let _ = writeln!(out, "{key}={value}");
        }
        out
    }
}

pub fn pipeline(inst: &SetCoverInstance, config: &PipelineConfig) -> Result<PipelineReport, ReductionError> {
    let normalized_input = inst.is_normalized();
    let (work, forced, set_map) = if config.normalize_first {
        let norm = normalize(inst);
        match norm.residual {
            Some(ref r) => (r.clone(), norm.forced.clone(), norm.set_map.clone()),
            None => {
                return Ok(PipelineReport {
                    eta: 0,
                    h: 0,
                    big_n: 0,
                    normalized_input,
                    solved_by_normalization: true,
                    best_cover_valid: validate_cover(inst, &norm.forced)?,
                    best_cover: norm.forced.clone(),
                    forced: norm.forced,
                    k: 0,
                    n: 0,
                    m: 0,
                    solver: config.solver.to_string(),
                    solver_meg_size: 0,
                    meg_size: 0,
                    meg_valid: true,
                    copy_cover_sizes: Vec::new(),
                    best_copy: 0,
                    ratio_holds: true,
                    h_star: Some(0),
                    upper_bound: None,
                    bound_holds: None,
                });
            }
        }
    } else {
        (inst.clone(), Vec::new(), (0..inst.h()).collect())
    };

    let big_n = work.size();
    let k = config.k.unwrap_or_else(|| default_copies(big_n)).max(2);
    let layout = build_reduction(&work, k)?;
    let h_star = (work.h() <= config.exact_cover_max_sets).then(|| exact_min_cover(&work).len());
    let upper_bound = h_star.map(|hs| big_n + k * hs);

    let solver_meg = match config.solver {
        MegSolver::Greedy => greedy_meg(layout.graph())?,
        MegSolver::Exact { budget } => exact_min_meg(layout.graph(), budget)?
            .ok_or(ReductionError::BudgetExceeded(budget.unwrap_or(0)))?,
    };
    let extraction = extract_covers(&layout, &solver_meg)?;
    let best_cover: Vec<usize> = {
        let mut v: Vec<usize> = forced
            .iter()
            .copied()
            .chain(extraction.best().iter().map(|&j| set_map[j]))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let bound_holds = match config.solver {
        MegSolver::Exact { .. } => upper_bound.map(|ub| solver_meg.len() <= ub),
        MegSolver::Greedy => None,
    };
    Ok(PipelineReport {
        eta: work.eta(),
        h: work.h(),
        big_n,
        normalized_input,
        solved_by_normalization: false,
        best_cover_valid: validate_cover(inst, &best_cover)?,
        forced,
        k,
        n: layout.graph().vertex_count(),
        m: layout.graph().edge_count(),
        solver: config.solver.to_string(),
        solver_meg_size: solver_meg.len(),
        meg_size: extraction.meg.len(),
        meg_valid: extraction.meg_valid,
        copy_cover_sizes: extraction.covers.iter().map(Vec::len).collect(),
        best_copy: extraction.best_copy,
        ratio_holds: k * extraction.best().len() <= extraction.meg.len(),
        best_cover,
        h_star,
        upper_bound,
        bound_holds,
    })
}
