//! Certified topological containment for small and medium undirected graphs.
//!
//! The crate detects subdivisions of small pattern graphs (W4, K5, K5 minus an
//! edge, or any simple pattern) and, for K5 minus an edge, runs a constructive
//! extractor that turns any input graph into either a verified subdivision or a
//! verified witness that the graph is not 4-connected.
//!
//! Every positive answer is an [`Embedding`] that [`verify_embedding`] can check
//! without rerunning the search, and every negative connectivity answer is a
//! [`Separator`] that can be re-checked by removing its cut.

pub mod bridges;
pub mod connectivity;
pub mod extractor;
pub mod generator;
pub mod graph;
pub mod io;
pub mod subdiv;
pub mod wheel;

pub use bridges::{bridge_path, compute_bridges, Bridge, BridgeKind};
pub use connectivity::{
    fan, find_separator, max_disjoint_paths, vertex_connectivity, FanOutcome, PathSystem, Separator,
};
pub use extractor::{
    audit_tables, extract, Action, AuditReport, CaseLabel, Extraction, ExtractionOutcome, NotFourConnected, TraceStep,
};
pub use generator::{generate, generate_4connected, generate_k_connected, FamilySpec, GenError, Lcg};
pub use graph::{Graph, GraphError, Path, Vertex};
pub use subdiv::{
    find_subdivision, oracle_contains, verify_embedding, Embedding, Pattern, SearchBudget, SearchOptions,
    SearchOutcome, Violation,
};
pub use wheel::{find_w4, improve_once, make_short, Improvement, Shortened, ShorterWitness, WheelW4};
