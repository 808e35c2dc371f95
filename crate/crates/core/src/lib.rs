//! Monitoring edge-geodetic sets (MEG-sets).
//!
//! A set `M` of vertices is a MEG-set when every edge lies on all shortest
//! paths between some pair of vertices of `M`. This crate verifies MEG-sets,
//! computes minimum and minimal ones, and implements the gadget reduction
//! from Set Cover together with the cover-extraction pipeline.

pub mod gen;
pub mod graph;
pub mod monitoring;
pub mod reduction;
pub mod setcover;
pub mod solve;

pub use graph::{BfsResult, Edge, Graph, GraphError, Vertex};
pub use monitoring::{
    monitored_edges_of_pair, pair_monitors_edge, pair_monitors_edge_oracle, verify_meg_set,
    witness_for_edge, MegSet, MonitorError, MonitorTable, MonitorWitness, Verdict,
};
pub use reduction::{
    build_incidence_graph, build_reduction, extract_covers, meg_from_covers, pipeline, Extraction,
    MegSolver, PipelineConfig, PipelineReport, ReductionError, ReductionLayout, Role,
};
pub use setcover::{
    exact_min_cover, greedy_cover, normalize, validate_cover, CoverError, NormalizedInstance,
    SetCoverInstance,
};
pub use solve::{exact_min_meg, forced_vertices, greedy_meg, minimalize, removable_vertices, SolveError};
