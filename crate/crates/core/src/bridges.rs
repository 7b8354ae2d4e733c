//! Bridges of a subgraph `H`: the chords of `H` and the components of
//! `G - V(H)` with their attaching edges.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{norm, Graph, Path, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),
    #[error("no path from {from} to {to} inside the bridge")]
    NoSuchPath { from: Vertex, to: Vertex },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeKind {
    Inner,
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub kind: BridgeKind,
    /// Sorted; empty for an inner bridge.
    pub core: Vec<Vertex>,
    /// Sorted vertices of `H` that the bridge touches.
    pub attachments: Vec<Vertex>,
    /// Normalized edges with one end in `H` (both ends for an inner bridge).
    pub feet: Vec<(Vertex, Vertex)>,
}

impl Bridge {
    pub fn touches(&self, v: Vertex) -> bool {
        self.attachments.binary_search(&v).is_ok()
    }
}

/// Splits the edges of `g` outside `h_edges` into bridges. Inner bridges come
/// first in edge order, then outer bridges by smallest core vertex.
pub fn compute_bridges(
    g: &Graph,
    h_vertices: &[Vertex],
    h_edges: &[(Vertex, Vertex)],
) -> Result<Vec<Bridge>, BridgeError> {
    let n = g.n();
    let mut in_h = vec![false; n];
    for &v in h_vertices {
        if v >= n {
            return Err(BridgeError::InvalidSubgraph(format!("vertex {v} not in graph")));
        }
        in_h[v] = true;
    }
    let mut h_set = BTreeSet::new();
    for &(u, v) in h_edges {
        if u >= n || v >= n || !g.has_edge(u, v) {
            return Err(BridgeError::InvalidSubgraph(format!("edge {u}-{v} not in graph")));
        }
        if !in_h[u] || !in_h[v] {
            return Err(BridgeError::InvalidSubgraph(format!(
                "edge {u}-{v} has an end outside the vertex set"
            )));
        }
        h_set.insert(norm(u, v));
    }

    let mut bridges: Vec<Bridge> = g
        .edges()
        .filter(|&(u, v)| in_h[u] && in_h[v] && !h_set.contains(&(u, v)))
        .map(|(u, v)| Bridge {
            kind: BridgeKind::Inner,
            core: Vec::new(),
            attachments: vec![u, v],
            feet: vec![(u, v)],
        })
        .collect();

    let mut seen = in_h.clone();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut core = vec![s];
        let mut feet = BTreeSet::new();
        let mut i = 0;
        while i < core.len() {
            let x = core[i];
            i += 1;
            for &w in g.neighbors(x) {
                if in_h[w] {
                    feet.insert(norm(x, w));
                } else if !seen[w] {
                    seen[w] = true;
                    core.push(w);
                }
            }
        }
        core.sort_unstable();
        let attachments: BTreeSet<Vertex> = feet.iter().map(|&(a, b)| if in_h[a] { a } else { b }).collect();
        bridges.push(Bridge {
            kind: BridgeKind::Outer,
            core,
            attachments: attachments.into_iter().collect(),
            feet: feet.into_iter().collect(),
        });
    }
    Ok(bridges)
}

/// Shortest path from `from` to `to` whose interior lies in the core of `b`.
pub fn bridge_path(g: &Graph, b: &Bridge, from: Vertex, to: Vertex) -> Result<Path, BridgeError> {
    let none = BridgeError::NoSuchPath { from, to };
    if from == to || !b.touches(from) || !b.touches(to) {
        return Err(none);
    }
    if b.kind == BridgeKind::Inner {
        return Ok(vec![from, to]);
    }
    let n = g.n();
    let mut in_core = vec![false; n];
    for &c in &b.core {
        in_core[c] = true;
    }
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x != from && g.has_edge(x, to) {
            let mut path = vec![to, x];
            let mut y = x;
            while y != from {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            debug_assert!(path[1..path.len() - 1].iter().all(|&v| in_core[v]));
            return Ok(path);
        }
        for &w in g.neighbors(x) {
            if in_core[w] && parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    Err(none)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w4() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn triangle_in_k4() {
        let g = Graph::complete(4);
        let b = compute_bridges(&g, &[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BridgeKind::Outer);
        assert_eq!(b[0].core, vec![3]);
        assert_eq!(b[0].attachments, vec![0, 1, 2]);
        assert_eq!(b[0].feet.len(), 3);
    }

    #[test]
    fn four_cycle_in_k4() {
        let g = Graph::complete(4);
        let b = compute_bridges(&g, &[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let inner: Vec<_> = b.iter().map(|x| (x.kind, x.feet[0])).collect();
        assert_eq!(inner, vec![(BridgeKind::Inner, (0, 2)), (BridgeKind::Inner, (1, 3))]);
        assert_eq!(bridge_path(&g, &b[0], 0, 2), Ok(vec![0, 2]));
    }

    #[test]
    fn wheel_rim() {
        let g = w4();
        let b = compute_bridges(&g, &[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].core, vec![0]);
        assert_eq!(b[0].attachments, vec![1, 2, 3, 4]);
        assert_eq!(bridge_path(&g, &b[0], 1, 3), Ok(vec![1, 0, 3]));
        assert!(bridge_path(&g, &b[0], 1, 0).is_err());
    }

    #[test]
    fn path_core() {
        // H = {0, 4}; core is the path 1-2-3
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let b = compute_bridges(&g, &[0, 4], &[]).unwrap();
        assert_eq!(bridge_path(&g, &b[0], 0, 4), Ok(vec![0, 1, 2, 3, 4]));
        assert_eq!(bridge_path(&g, &b[0], 4, 0), Ok(vec![4, 3, 2, 1, 0]));
    }

    #[test]
    fn rejects_bad_subgraph() {
        let g = Graph::cycle(4);
        assert!(compute_bridges(&g, &[0, 1], &[(0, 2)]).is_err());
        assert!(compute_bridges(&g, &[0], &[(0, 1)]).is_err());
    }

    #[test]
    fn edges_are_partitioned() {
        let g = Graph::complete(7);
        let h_edges = [(0, 1), (1, 2), (2, 3)];
        let b = compute_bridges(&g, &[0, 1, 2, 3, 4], &h_edges).unwrap();
        let core_edges: usize = b.iter().map(|x| g.induced_subgraph(&x.core).unwrap().0.m()).sum();
        let feet: usize = b.iter().map(|x| x.feet.len()).sum();
        assert_eq!(h_edges.len() + feet + core_edges, g.m());
    }
}
