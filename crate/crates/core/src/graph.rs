//! Immutable simple undirected graphs over dense vertex identifiers.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

/// A path as a vertex sequence. Consecutive vertices must be adjacent in the
/// host graph and no vertex may repeat.
pub type Path = Vec<Vertex>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
}

/// Simple undirected graph. Adjacency lists are sorted and symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate pairs (in either orientation)
    /// collapse to one edge; self-loops and out-of-range endpoints are errors.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let adj: Vec<Vec<Vertex>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph edges are in range")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n == 0 || self.adj.iter().all(|ns| ns.len() == n - 1)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Checks that `path` is a nonempty simple path of this graph.
    pub fn is_path(&self, path: &[Vertex]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let distinct: BTreeSet<_> = path.iter().collect();
        distinct.len() == path.len() && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Subgraph induced by `keep`. Returns the graph and the map from new
    /// identifiers to old ones (`keep` sorted and deduplicated).
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let mut old: Vec<Vertex> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        if let Some(&bad) = old.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::OutOfRange {
                vertex: bad,
                n: self.n(),
            });
        }
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = old.iter().flat_map(|&u| {
            let new_id = &new_id;
            self.adj[u]
                .iter()
                .filter(move |&&w| w > u && new_id[w] != usize::MAX)
                .map(move |&w| (new_id[u], new_id[w]))
        });
        let g = Graph::new(old.len(), edges.collect::<Vec<_>>())?;
        Ok((g, old))
    }

    /// Subgraph formed by the given host edges. Vertices are the edge endpoints
    /// plus `extra`; returns the graph and the new-to-old identifier map.
    pub fn edge_subgraph<I>(&self, edges: I, extra: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut old: Vec<Vertex> = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(extra.iter().copied())
            .collect();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            if v >= self.n() {
                return Err(GraphError::OutOfRange { vertex: v, n: self.n() });
            }
            new_id[v] = i;
        }
        for &(u, v) in &edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::OutOfRange { vertex: v, n: self.n() });
            }
        }
        let g = Graph::new(old.len(), edges.iter().map(|&(u, v)| (new_id[u], new_id[v])))?;
        Ok((g, old))
    }

    /// Returns a copy with the extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Graph::new(self.n(), self.edges().chain(extra))
    }

    /// Connected components of the graph with `removed` vertices deleted,
    /// each sorted, ordered by smallest vertex.
    pub fn components_without(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            if v < self.n() {
                gone[v] = true;
            }
        }
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if gone[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !gone[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// The vertex subsequence `x..=y` of `path` (in either direction), the `xPy`
/// of path notation. `None` if either vertex is missing.
pub fn subpath(path: &[Vertex], x: Vertex, y: Vertex) -> Option<Path> {
    let i = path.iter().position(|&v| v == x)?;
    let j = path.iter().position(|&v| v == y)?;
    if i <= j {
        Some(path[i..=j].to_vec())
    } else {
        let mut p = path[j..=i].to_vec();
        p.reverse();
        Some(p)
    }
}

/// Internal vertices of a path (all but the two ends).
pub fn interior(path: &[Vertex]) -> &[Vertex] {
    if path.len() <= 2 {
        &[]
    } else {
        &path[1..path.len() - 1]
    }
}

/// Concatenates paths that share their junction vertices.
pub fn join(parts: &[&[Vertex]]) -> Path {
    let mut out: Path = Vec::new();
    for part in parts {
        if part.is_empty() {
            continue;
        }
        match out.last() {
            Some(&last) if last == part[0] => out.extend_from_slice(&part[1..]),
            Some(_) => panic!("path parts do not meet: {out:?} then {part:?}"),
            None => out.extend_from_slice(part),
        }
    }
    out
}

pub fn path_edges(path: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    path.windows(2).map(|w| norm(w[0], w[1]))
}

/// Orders an edge as `(min, max)`.
pub fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        // antipodal pairs 0-1, 2-3, 4-5 are the nonedges
        let edges = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .filter(|&(u, v)| !(u / 2 == v / 2));
        Graph::new(6, edges).unwrap()
    }

    #[test]
    fn triangle_and_k5() {
        let t = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!((0..3).map(|v| t.degree(v)).collect::<Vec<_>>(), vec![2, 2, 2]);
        let k5 = Graph::complete(5);
        assert_eq!(k5.m(), 10);
        assert!(k5.vertices().all(|v| k5.degree(v) == 4));
    }

    #[test]
    fn rejects_self_loop_and_out_of_range() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::OutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn induced_subgraphs() {
        let (k4, map) = Graph::complete(5).induced_subgraph(&[4, 1, 2, 0]).unwrap();
        assert_eq!(k4, Graph::complete(4));
        assert_eq!(map, vec![0, 1, 2, 4]);

        let (p, _) = Graph::cycle(5).induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let oct = octahedron();
        assert_eq!(oct.m(), 12);
        let (sub, _) = oct.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        // brute-force count of octahedron edges inside the five kept vertices
        let brute = oct.edges().filter(|&(u, v)| u < 5 && v < 5).count();
        assert_eq!(brute, 8);
        assert_eq!(sub.m(), 8);

        assert!(oct.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn subpath_and_join() {
        let p = vec![4, 7, 1, 9];
        assert_eq!(subpath(&p, 7, 9), Some(vec![7, 1, 9]));
        assert_eq!(subpath(&p, 9, 7), Some(vec![9, 1, 7]));
        assert_eq!(subpath(&p, 3, 7), None);
        assert_eq!(join(&[&[1, 2, 3], &[3, 4], &[4]]), vec![1, 2, 3, 4]);
        assert_eq!(interior(&[1, 2, 3, 4]), &[2, 3]);
        assert!(interior(&[1, 2]).is_empty());
    }

    #[test]
    fn components() {
        let g = Graph::cycle(6);
        assert_eq!(g.components_without(&[0, 3]), vec![vec![1, 2], vec![4, 5]]);
        assert!(g.is_connected());
    }
}
