//! Backtracking subdivision search.
//!
//! Branch images are chosen first, in decreasing pattern-degree order, with
//! host candidates in decreasing degree order. Pattern edges are then routed
//! one at a time with shortest-first path enumeration (lexicographic among
//! equal lengths), backtracking on conflicts. Two prunes keep it tractable:
//! every branch image must keep enough usable neighbours for its unrouted
//! edges, and every unrouted edge must still have its ends joined through
//! free vertices.

use std::collections::VecDeque;

use super::{Embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome};
use crate::graph::{Graph, Path, Vertex};

const FREE: u8 = 0;
const BRANCH: u8 = 1;
const INTERIOR: u8 = 2;
const OUTSIDE: u8 = 3;

enum Ctl {
    Found,
    Continue,
    Abort,
}

struct Search<'a> {
    g: &'a Graph,
    p: &'a Pattern,
    budget: &'a mut SearchBudget,
    state: Vec<u8>,
    branch_at: Vec<usize>,
    image: Vec<Option<Vertex>>,
    anchor: Vec<Option<Vertex>>,
    order: Vec<usize>,
    edge_order: Vec<usize>,
    routed: Vec<Option<Path>>,
    pdeg: Vec<usize>,
    /// `padj[a][b]` is true when branch vertices `a` and `b` are adjacent.
    padj: Vec<Vec<bool>>,
    /// Degree of each host vertex inside the allowed region.
    hdeg: Vec<usize>,
}

/// Searches `g` for a subdivision of `p`.
///
/// Honors `opts.anchors` (fixed branch images) and `opts.restrict` (the
/// embedding must stay inside those vertices). Every node visited is charged
/// to `budget`; `NotFound` is only returned after the whole space has been
/// explored.
pub fn find_subdivision(
    g: &Graph,
    p: &Pattern,
    budget: &mut SearchBudget,
    opts: &SearchOptions,
) -> SearchOutcome<Embedding> {
    let n = g.n();
    let mut state = vec![FREE; n];
    if let Some(keep) = &opts.restrict {
        state.iter_mut().for_each(|s| *s = OUTSIDE);
        for &v in keep {
            if v < n {
                state[v] = FREE;
            }
        }
    }
    let mut anchor = vec![None; p.k];
    let mut taken = std::collections::HashSet::new();
    for &(b, v) in &opts.anchors {
        if b >= p.k || v >= n || state[v] == OUTSIDE || !taken.insert(v) {
            return SearchOutcome::NotFound;
        }
        if anchor[b].replace(v).is_some_and(|old| old != v) {
            return SearchOutcome::NotFound;
        }
    }
    if p.k > n {
        return SearchOutcome::NotFound;
    }
    let pdeg = p.degrees();
    let mut padj = vec![vec![false; p.k]; p.k];
    for &(a, b) in &p.edges {
        padj[a][b] = true;
        padj[b][a] = true;
    }
    let hdeg: Vec<usize> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().filter(|&&w| state[w] != OUTSIDE).count())
        .collect();

    // anchored branches first, then by pattern degree
    let mut order: Vec<usize> = (0..p.k).collect();
    order.sort_by_key(|&b| (anchor[b].is_none(), std::cmp::Reverse(pdeg[b]), b));

    // route edges touching early branches first; ties by pattern order
    let rank: Vec<usize> = {
        let mut r = vec![0; p.k];
        for (i, &b) in order.iter().enumerate() {
            r[b] = i;
        }
        r
    };
    let mut edge_order: Vec<usize> = (0..p.edges.len()).collect();
    edge_order.sort_by_key(|&i| {
        let (a, b) = p.edges[i];
        (rank[a].max(rank[b]), rank[a].min(rank[b]), i)
    });

    let mut s = Search {
        g,
        p,
        budget,
        state,
        branch_at: vec![usize::MAX; n],
        image: vec![None; p.k],
        anchor,
        order,
        edge_order,
        routed: vec![None; p.edges.len()],
        pdeg,
        padj,
        hdeg,
    };
    match s.assign(0) {
        Ctl::Found => {
            let branch_map: Vec<Vertex> = s.image.iter().map(|v| v.unwrap()).collect();
            let paths = s.routed.into_iter().map(Option::unwrap).collect();
            SearchOutcome::Found(Embedding::new(p.clone(), branch_map, paths))
        }
        Ctl::Continue => SearchOutcome::NotFound,
        Ctl::Abort => SearchOutcome::BudgetExceeded,
    }
}

impl Search<'_> {
    fn assign(&mut self, idx: usize) -> Ctl {
        if idx == self.p.k {
            return self.route(0);
        }
        let b = self.order[idx];
        let candidates: Vec<Vertex> = match self.anchor[b] {
            Some(v) => vec![v],
            None => {
                let mut c: Vec<Vertex> = self
                    .g
                    .vertices()
                    .filter(|&v| self.state[v] == FREE && self.hdeg[v] >= self.pdeg[b])
                    .collect();
                c.sort_by_key(|&v| (std::cmp::Reverse(self.hdeg[v]), v));
                c
            }
        };
        for v in candidates {
            if !self.budget.tick() {
                return Ctl::Abort;
            }
            if self.state[v] != FREE || self.hdeg[v] < self.pdeg[b] {
                continue;
            }
            self.state[v] = BRANCH;
            self.branch_at[v] = b;
            self.image[b] = Some(v);
            if self.capacity_ok() && self.remaining_connected(0) {
                match self.assign(idx + 1) {
                    Ctl::Continue => {}
                    done => return done,
                }
            }
            self.image[b] = None;
            self.branch_at[v] = usize::MAX;
            self.state[v] = FREE;
        }
        Ctl::Continue
    }

    /// Every placed branch still has enough usable neighbours for its
    /// unrouted pattern edges.
    fn capacity_ok(&self) -> bool {
        for b in 0..self.p.k {
            let Some(v) = self.image[b] else { continue };
            let need = self
                .p
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, &(x, y))| (x == b || y == b) && self.routed[i].is_none())
                .count();
            if need == 0 {
                continue;
            }
            let mut have = 0;
            for &w in self.g.neighbors(v) {
                let usable = match self.state[w] {
                    FREE => true,
                    BRANCH => {
                        let c = self.branch_at[w];
                        self.padj[b][c] && !self.edge_done(b, c)
                    }
                    _ => false,
                };
                if usable {
                    have += 1;
                    if have >= need {
                        break;
                    }
                }
            }
            if have < need {
                return false;
            }
        }
        true
    }

    fn edge_done(&self, a: usize, b: usize) -> bool {
        self.p
            .edges
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .is_some_and(|i| self.routed[i].is_some())
    }

    fn route(&mut self, ei: usize) -> Ctl {
        if ei == self.edge_order.len() {
            return Ctl::Found;
        }
        let e = self.edge_order[ei];
        let (a, b) = self.p.edges[e];
        let (s, t) = (self.image[a].unwrap(), self.image[b].unwrap());
        let dist = self.free_distances(t);
        if dist[s] == usize::MAX {
            return Ctl::Continue;
        }
        let free_count = self.state.iter().filter(|&&x| x == FREE).count();
        let mut path = vec![s];
        for len in dist[s]..=free_count + 1 {
            match self.extend(ei, e, t, len, &dist, &mut path) {
                Ctl::Continue => {}
                done => return done,
            }
        }
        Ctl::Continue
    }

    /// Enumerates paths from the end of `path` to `t` using exactly `left`
    /// more edges, in lexicographic order, recursing into the next edge for
    /// each completed path.
    fn extend(&mut self, ei: usize, e: usize, t: Vertex, left: usize, dist: &[usize], path: &mut Path) -> Ctl {
        if !self.budget.tick() {
            return Ctl::Abort;
        }
        let x = *path.last().unwrap();
        if left == 1 {
            if !self.g.has_edge(x, t) {
                return Ctl::Continue;
            }
            path.push(t);
            let ctl = self.commit(ei, e, path);
            path.pop();
            return ctl;
        }
        let g = self.g;
        for &w in g.neighbors(x) {
            if self.state[w] != FREE || dist[w] == usize::MAX || dist[w] > left - 1 {
                continue;
            }
            self.state[w] = INTERIOR;
            path.push(w);
            let ctl = self.extend(ei, e, t, left - 1, dist, path);
            path.pop();
            self.state[w] = FREE;
            match ctl {
                Ctl::Continue => {}
                done => return done,
            }
        }
        Ctl::Continue
    }

    fn commit(&mut self, ei: usize, e: usize, path: &Path) -> Ctl {
        self.routed[e] = Some(path.clone());
        let ctl = if self.capacity_ok() && self.remaining_connected(ei + 1) {
            self.route(ei + 1)
        } else {
            Ctl::Continue
        };
        if matches!(ctl, Ctl::Found) {
            return ctl;
        }
        self.routed[e] = None;
        ctl
    }

    /// BFS distances to `t` through free vertices (`t` itself counts).
    fn free_distances(&self, t: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[t] = 0;
        let mut q = VecDeque::from([t]);
        while let Some(x) = q.pop_front() {
            if x != t && self.state[x] != FREE {
                continue;
            }
            for &w in self.g.neighbors(x) {
                if dist[w] == usize::MAX && (self.state[w] == FREE || self.state[w] == BRANCH) {
                    dist[w] = dist[x] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Each unrouted edge still has its two images adjacent or linked through
    /// one component of free vertices.
    fn remaining_connected(&self, from: usize) -> bool {
        if from >= self.edge_order.len() {
            return true;
        }
        let n = self.g.n();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if self.state[s] != FREE || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &w in self.g.neighbors(x) {
                    if self.state[w] == FREE && comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        let mut mark = vec![usize::MAX; next];
        for (k, &e) in self.edge_order[from..].iter().enumerate() {
            let (a, b) = self.p.edges[e];
            let (Some(s), Some(t)) = (self.image[a], self.image[b]) else {
                continue;
            };
            if self.g.has_edge(s, t) {
                continue;
            }
            for &w in self.g.neighbors(s) {
                if comp[w] != usize::MAX {
                    mark[comp[w]] = k;
                }
            }
            let linked = self
                .g
                .neighbors(t)
                .iter()
                .any(|&w| comp[w] != usize::MAX && mark[comp[w]] == k);
            if !linked {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdiv::verify_embedding;

    fn k33() -> Graph {
        Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    fn wheel(spokes: usize) -> Graph {
        let mut e: Vec<_> = (1..=spokes).map(|i| (0, i)).collect();
        e.extend((1..=spokes).map(|i| (i, i % spokes + 1)));
        Graph::new(spokes + 1, e).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::new(10, e).unwrap()
    }

    fn find(g: &Graph, p: &Pattern) -> SearchOutcome<Embedding> {
        find_subdivision(g, p, &mut SearchBudget::default(), &SearchOptions::default())
    }

    #[test]
    fn known_answers() {
        let k5 = Graph::complete(5);
        let e = find(&k5, &Pattern::k5_minus()).found().unwrap();
        assert_eq!(verify_embedding(&k5, &e), Ok(()));
        assert_eq!(find(&k33(), &Pattern::k5_minus()), SearchOutcome::NotFound);
        assert_eq!(find(&petersen(), &Pattern::k5_minus()), SearchOutcome::NotFound);
        assert_eq!(find(&wheel(5), &Pattern::k5_minus()), SearchOutcome::NotFound);
        assert_eq!(find(&k33(), &Pattern::w4()), SearchOutcome::NotFound);

        let w4 = wheel(4);
        let e = find(&w4, &Pattern::w4()).found().unwrap();
        assert_eq!(e.branch_map[0], 0);
        assert!(e.paths.iter().all(|p| p.len() == 2));
        assert_eq!(verify_embedding(&w4, &e), Ok(()));
    }

    #[test]
    fn subdivided_k5_is_found() {
        // K5 on 0..5 with every edge subdivided once
        let mut edges = Vec::new();
        let mut next = 5;
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, next));
                edges.push((next, b));
                next += 1;
            }
        }
        let g = Graph::new(next, edges).unwrap();
        let e = find(&g, &Pattern::k5()).found().unwrap();
        assert_eq!(verify_embedding(&g, &e), Ok(()));
        assert!(e.paths.iter().all(|p| p.len() == 3));
    }

    #[test]
    fn anchors_and_restrict() {
        let k6 = Graph::complete(6);
        let opts = SearchOptions {
            anchors: vec![(0, 5), (3, 1)],
            restrict: Some(vec![1, 2, 3, 4, 5]),
        };
        let e = find_subdivision(&k6, &Pattern::k5_minus(), &mut SearchBudget::default(), &opts)
            .found()
            .unwrap();
        assert_eq!(e.branch_map[0], 5);
        assert_eq!(e.branch_map[3], 1);
        assert!(!e.vertices().contains(&0));

        // restricting away a needed vertex makes K5 impossible
        let opts = SearchOptions {
            anchors: vec![],
            restrict: Some(vec![0, 1, 2, 3]),
        };
        assert_eq!(
            find_subdivision(&k6, &Pattern::k5(), &mut SearchBudget::default(), &opts),
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let g = petersen();
        let mut b = SearchBudget::new(5);
        assert_eq!(
            find_subdivision(&g, &Pattern::cycle(9), &mut b, &SearchOptions::default()),
            SearchOutcome::BudgetExceeded
        );
        let mut b = SearchBudget::default();
        let e = find_subdivision(&g, &Pattern::cycle(9), &mut b, &SearchOptions::default())
            .found()
            .unwrap();
        assert_eq!(verify_embedding(&g, &e), Ok(()));
    }
}
