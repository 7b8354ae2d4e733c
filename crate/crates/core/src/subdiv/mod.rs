//! Pattern graphs, subdivision certificates and the search engine that finds
//! them.
//!
//! An [`Embedding`] maps each branch vertex of a [`Pattern`] to a host vertex
//! and each pattern edge to a host path. [`verify_embedding`] checks one from
//! scratch; [`find_subdivision`] searches for one; [`oracle_contains`] answers
//! the same question by brute force over edge subsets and shares no code with
//! the finder.

mod finder;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Path, Vertex};

pub use finder::find_subdivision;
pub use oracle::{oracle_contains, OracleError, ORACLE_EDGE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern edge ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
    #[error("pattern self-loop at {0}")]
    SelfLoop(usize),
    #[error("pattern edge ({0}, {1}) repeated")]
    Repeated(usize, usize),
    #[error("unknown pattern name {0:?}")]
    UnknownName(String),
}

/// A simple pattern graph on branch vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub name: String,
    pub k: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(name: &str, k: usize, edges: &[(usize, usize)]) -> Result<Self, PatternError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in edges {
            if a >= k || b >= k {
                return Err(PatternError::OutOfRange(a, b));
            }
            if a == b {
                return Err(PatternError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(PatternError::Repeated(a, b));
            }
        }
        Ok(Pattern {
            name: name.to_string(),
            k,
            edges: edges.to_vec(),
        })
    }

    /// Wheel with four spokes: hub 0, rim cycle 1-2-3-4-1. Spoke edges come
    /// first, then rim edges `(1,2) (2,3) (3,4) (4,1)`.
    pub fn w4() -> Self {
        Pattern::new(
            "w4",
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        )
        .unwrap()
    }

    pub fn k5() -> Self {
        Pattern::new("k5", 5, &complete_edges(5)).unwrap()
    }

    /// K5 without the edge 3-4: branch vertices 0, 1, 2 are the degree-4
    /// tetravertices, 3 and 4 the degree-3 trivertices.
    pub fn k5_minus() -> Self {
        let edges: Vec<_> = complete_edges(5).into_iter().filter(|&e| e != (3, 4)).collect();
        Pattern::new("k5minus", 5, &edges).unwrap()
    }

    /// Cycle `0-1-...-(k-1)-0`.
    pub fn cycle(k: usize) -> Self {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Pattern::new(&format!("c{k}"), k, &edges).unwrap()
    }

    pub fn by_name(name: &str) -> Result<Self, PatternError> {
        match name.to_ascii_lowercase().as_str() {
            "w4" => Ok(Pattern::w4()),
            "k5" => Ok(Pattern::k5()),
            "k5minus" | "k5-" | "k5_minus" => Ok(Pattern::k5_minus()),
            _ => Err(PatternError::UnknownName(name.to_string())),
        }
    }

    pub fn degree(&self, b: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == b || y == b).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.k).map(|b| self.degree(b)).collect()
    }
}

fn complete_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

/// A subdivision certificate: `paths[i]` realizes `pattern.edges[i]` and runs
/// from the image of its first branch vertex to the image of its second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: Pattern,
    pub branch_map: Vec<Vertex>,
    pub paths: Vec<Path>,
}

impl Embedding {
    /// Builds an embedding, orienting each path to start at the image of the
    /// first branch vertex of its pattern edge.
    pub fn new(pattern: Pattern, branch_map: Vec<Vertex>, mut paths: Vec<Path>) -> Self {
        for (path, &(a, _)) in paths.iter_mut().zip(&pattern.edges) {
            if let (Some(&first), Some(&img)) = (path.first(), branch_map.get(a)) {
                if first != img {
                    path.reverse();
                }
            }
        }
        Embedding {
            pattern,
            branch_map,
            paths,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .branch_map
            .iter()
            .chain(self.paths.iter().flatten())
            .copied()
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut es: Vec<_> = self.paths.iter().flat_map(|p| crate::graph::path_edges(p)).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Relabels host vertices through `map` (new id -> old id).
    pub fn relabel(&self, map: &[Vertex]) -> Embedding {
        Embedding {
            pattern: self.pattern.clone(),
            branch_map: self.branch_map.iter().map(|&v| map[v]).collect(),
            paths: self.paths.iter().map(|p| p.iter().map(|&v| map[v]).collect()).collect(),
        }
    }
}

/// One broken clause of the embedding contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    BranchCount { expected: usize, found: usize },
    BranchOutOfRange { branch: usize, vertex: Vertex },
    BranchNotInjective { vertex: Vertex },
    PathCount { expected: usize, found: usize },
    Endpoints { edge: usize },
    RepeatedVertex { edge: usize, vertex: Vertex },
    MissingHostEdge { edge: usize, u: Vertex, v: Vertex },
    ThroughBranch { edge: usize, vertex: Vertex },
    InternalDisjointness { edges: (usize, usize), vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BranchCount { expected, found } => {
                write!(f, "branch map has {found} entries, pattern has {expected}")
            }
            Violation::BranchOutOfRange { branch, vertex } => {
                write!(f, "branch {branch} maps to nonexistent vertex {vertex}")
            }
            Violation::BranchNotInjective { vertex } => {
                write!(f, "branch map not injective at host vertex {vertex}")
            }
            Violation::PathCount { expected, found } => {
                write!(f, "{found} paths for {expected} pattern edges")
            }
            Violation::Endpoints { edge } => write!(f, "path {edge} has wrong endpoints"),
            Violation::RepeatedVertex { edge, vertex } => {
                write!(f, "path {edge} repeats vertex {vertex}")
            }
            Violation::MissingHostEdge { edge, u, v } => {
                write!(f, "path {edge} uses {u}-{v}, which is not a host edge")
            }
            Violation::ThroughBranch { edge, vertex } => {
                write!(f, "path {edge} passes through branch vertex {vertex}")
            }
            Violation::InternalDisjointness { edges, vertex } => write!(
                f,
                "internal disjointness: paths {} and {} share vertex {vertex}",
                edges.0, edges.1
            ),
        }
    }
}

/// Checks every clause of the embedding contract against `g`. Returns all
/// violations found (empty means valid).
pub fn verify_embedding(g: &Graph, e: &Embedding) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let p = &e.pattern;
    if e.branch_map.len() != p.k {
        out.push(Violation::BranchCount {
            expected: p.k,
            found: e.branch_map.len(),
        });
        return Err(out);
    }
    let mut branch_of = std::collections::HashMap::new();
    for (b, &v) in e.branch_map.iter().enumerate() {
        if v >= g.n() {
            out.push(Violation::BranchOutOfRange { branch: b, vertex: v });
        } else if branch_of.insert(v, b).is_some() {
            out.push(Violation::BranchNotInjective { vertex: v });
        }
    }
    if e.paths.len() != p.edges.len() {
        out.push(Violation::PathCount {
            expected: p.edges.len(),
            found: e.paths.len(),
        });
        return Err(out);
    }
    if !out.is_empty() {
        return Err(out);
    }
    let mut owner: std::collections::HashMap<Vertex, usize> = Default::default();
    for (i, (path, &(a, b))) in e.paths.iter().zip(&p.edges).enumerate() {
        let (ia, ib) = (e.branch_map[a], e.branch_map[b]);
        let ends_ok = path.len() >= 2
            && ((path[0] == ia && path[path.len() - 1] == ib) || (path[0] == ib && path[path.len() - 1] == ia));
        if !ends_ok {
            out.push(Violation::Endpoints { edge: i });
        }
        let mut seen = std::collections::HashSet::new();
        for &v in path {
            if !seen.insert(v) {
                out.push(Violation::RepeatedVertex { edge: i, vertex: v });
            }
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                out.push(Violation::MissingHostEdge {
                    edge: i,
                    u: w[0],
                    v: w[1],
                });
            }
        }
        if path.len() > 2 {
            for &v in &path[1..path.len() - 1] {
                if branch_of.contains_key(&v) {
                    out.push(Violation::ThroughBranch { edge: i, vertex: v });
                }
                if let Some(&j) = owner.get(&v) {
                    if j != i {
                        out.push(Violation::InternalDisjointness {
                            edges: (j, i),
                            vertex: v,
                        });
                    }
                } else {
                    owner.insert(v, i);
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Node budget for backtracking searches. One budget may be shared by many
/// searches; each search draws from what is left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub used: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 20_000_000;

    pub fn new(node_limit: u64) -> Self {
        assert!(node_limit > 0, "node limit must be positive");
        SearchBudget { node_limit, used: 0 }
    }

    /// Takes one node; `false` once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.node_limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn remaining(&self) -> u64 {
        self.node_limit.saturating_sub(self.used)
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.node_limit
    }

    /// A fresh budget limited to `min(cap, remaining)` nodes, for a bounded
    /// sub-search whose cost is later charged back with [`Self::charge`].
    pub fn slice(&self, cap: u64) -> SearchBudget {
        SearchBudget {
            node_limit: cap.min(self.remaining()).max(1),
            used: 0,
        }
    }

    pub fn charge(&mut self, sub: &SearchBudget) {
        self.used = (self.used + sub.used).min(self.node_limit);
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_NODES)
    }
}

/// Optional constraints on a subdivision search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Fixed images for some branch vertices, as `(branch, host vertex)`.
    pub anchors: Vec<(usize, Vertex)>,
    /// When set, the embedding must stay inside these host vertices.
    pub restrict: Option<Vec<Vertex>>,
}

impl SearchOptions {
    pub fn anchored(anchors: &[(usize, Vertex)]) -> Self {
        SearchOptions {
            anchors: anchors.to_vec(),
            restrict: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted.
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        let edges = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| u / 2 != v / 2);
        Graph::new(6, edges).unwrap()
    }

    fn direct(p: &Pattern, map: &[Vertex]) -> Embedding {
        let paths = p.edges.iter().map(|&(a, b)| vec![map[a], map[b]]).collect();
        Embedding::new(p.clone(), map.to_vec(), paths)
    }

    #[test]
    fn pattern_degrees() {
        assert_eq!(Pattern::k5_minus().degrees(), vec![4, 4, 4, 3, 3]);
        assert_eq!(Pattern::w4().degrees(), vec![4, 3, 3, 3, 3]);
        assert_eq!(Pattern::k5().edges.len(), 10);
        assert!(Pattern::new("bad", 2, &[(0, 1), (1, 0)]).is_err());
        assert!(Pattern::by_name("K5minus").is_ok());
        assert!(Pattern::by_name("k7").is_err());
    }

    #[test]
    fn k5_minus_in_k5_by_direct_edges() {
        let g = Graph::complete(5);
        let e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        assert_eq!(verify_embedding(&g, &e), Ok(()));
    }

    #[test]
    fn shared_internal_vertex_is_reported() {
        // K5 minus edge plus a subdivided copy: route two paths through vertex 5
        let g = Graph::complete(6);
        let mut e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        e.paths[0] = vec![0, 5, 1];
        e.paths[1] = vec![0, 5, 2];
        let errs = verify_embedding(&g, &e).unwrap_err();
        assert!(errs.iter().any(|v| v.to_string().starts_with("internal disjointness")));
    }

    #[test]
    fn octahedron_certificate() {
        // antipodal pairs (u, u+3); 1-based tetravertices {2,3,5} and
        // trivertices {1,4}, with the 2-5 connection routed 2-6-5
        let g = Graph::new(
            6,
            (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| v != u + 3),
        )
        .unwrap();
        let p = Pattern::k5_minus();
        let map = [1, 2, 4, 0, 3];
        let paths = p
            .edges
            .iter()
            .map(|&(a, b)| match (map[a], map[b]) {
                (1, 4) => vec![1, 5, 4],
                (x, y) => vec![x, y],
            })
            .collect();
        let e = Embedding::new(p, map.to_vec(), paths);
        assert_eq!(verify_embedding(&g, &e), Ok(()));
        assert!(verify_embedding(&octahedron(), &e).is_err());
    }

    #[test]
    fn structural_violations() {
        let g = Graph::complete(5);
        let mut e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        e.branch_map[1] = 0;
        assert!(verify_embedding(&g, &e)
            .unwrap_err()
            .contains(&Violation::BranchNotInjective { vertex: 0 }));

        let c = Graph::cycle(5);
        let e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        let errs = verify_embedding(&c, &e).unwrap_err();
        assert!(errs.iter().any(|v| matches!(v, Violation::MissingHostEdge { .. })));

        let mut e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        e.paths[0] = vec![0, 2, 1];
        let errs = verify_embedding(&g, &e).unwrap_err();
        assert!(errs.contains(&Violation::ThroughBranch { edge: 0, vertex: 2 }));

        let mut e = direct(&Pattern::k5_minus(), &[0, 1, 2, 3, 4]);
        e.paths.pop();
        assert!(verify_embedding(&g, &e).is_err());
    }

    #[test]
    fn embedding_json_shape() {
        let e = direct(&Pattern::w4(), &[0, 1, 2, 3, 4]);
        let v: serde_json::Value = serde_json::to_value(&e).unwrap();
        assert!(v.get("pattern").is_some());
        assert_eq!(v["branch_map"], serde_json::json!([0, 1, 2, 3, 4]));
        assert_eq!(v["paths"][0], serde_json::json!([0, 1]));
        let back: Embedding = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
