//! Vertex connectivity, minimum separators and internally disjoint path
//! systems, all computed from unit vertex-capacity maximum flow.
//!
//! Each vertex `v` is split into `2v` (in) and `2v + 1` (out) joined by a
//! unit-capacity arc, so augmenting paths are internally vertex disjoint and
//! the saturated in/out arcs on the residual frontier form a minimum cut.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Path, Vertex};

/// A vertex cut together with two nonempty sides it separates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub cut: Vec<Vertex>,
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
}

impl Separator {
    /// Builds a separator from a candidate cut if removing it really
    /// disconnects the rest of the graph. `side_a` is the component of
    /// `G - cut` holding the smallest vertex; `side_b` is everything else.
    pub fn from_cut(g: &Graph, cut: &[Vertex]) -> Option<Separator> {
        let mut cut = cut.to_vec();
        cut.sort_unstable();
        cut.dedup();
        if cut.iter().any(|&v| v >= g.n()) {
            return None;
        }
        let comps = g.components_without(&cut);
        if comps.len() < 2 {
            return None;
        }
        let side_a = comps[0].clone();
        let mut side_b: Vec<Vertex> = comps[1..].iter().flatten().copied().collect();
        side_b.sort_unstable();
        Some(Separator { cut, side_a, side_b })
    }

    /// Re-checks the separator against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.side_a.is_empty() || self.side_b.is_empty() {
            return false;
        }
        let mut role = vec![0u8; g.n()];
        for (set, tag) in [(&self.cut, 1u8), (&self.side_a, 2), (&self.side_b, 3)] {
            for &v in set.iter() {
                if v >= g.n() || role[v] != 0 {
                    return false;
                }
                role[v] = tag;
            }
        }
        let comps = g.components_without(&self.cut);
        comps.iter().all(|c| {
            let a = c.iter().any(|&v| role[v] == 2);
            let b = c.iter().any(|&v| role[v] == 3);
            !(a && b)
        })
    }
}

/// How the paths of a [`PathSystem`] may share vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sharing {
    /// All paths run between the same two ends and share nothing else.
    Endpoints,
    /// All paths start at the apex and are otherwise vertex disjoint.
    Apex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Path>,
    pub sharing: Sharing,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Re-checks every path edge by edge and the declared disjointness.
    pub fn verify(&self, g: &Graph) -> bool {
        if !self.paths.iter().all(|p| p.len() >= 2 && g.is_path(p)) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        match self.sharing {
            Sharing::Endpoints => {
                let Some(first) = self.paths.first() else {
                    return true;
                };
                let (s, t) = (first[0], *first.last().unwrap());
                let mut direct = 0;
                for p in &self.paths {
                    if p[0] != s || *p.last().unwrap() != t {
                        return false;
                    }
                    if p.len() == 2 {
                        direct += 1;
                    }
                    for &v in &p[1..p.len() - 1] {
                        if std::mem::replace(&mut seen[v], true) {
                            return false;
                        }
                    }
                }
                direct <= 1
            }
            Sharing::Apex(apex) => {
                for p in &self.paths {
                    if p[0] != apex {
                        return false;
                    }
                    for &v in &p[1..] {
                        if std::mem::replace(&mut seen[v], true) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }
}

/// Result of a fan search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanOutcome {
    Paths(PathSystem),
    /// Fewer than `k` vertices (not counting the apex) block every route;
    /// `reached` is what the apex still reaches once they are removed.
    Blocked {
        cut: Vec<Vertex>,
        reached: Vec<Vertex>,
    },
}

/// Capacity of edge arcs; only vertex arcs may appear in a cut.
const UNBOUNDED: u32 = u32::MAX / 2;

struct Arc {
    to: usize,
    cap: u32,
    orig: u32,
    rev: usize,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        let rf = self.arcs[to].len();
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            orig: cap,
            rev: rf,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            orig: 0,
            rev: rt,
        });
    }

    /// Augments shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        while flow < limit {
            prev.iter_mut().for_each(|p| *p = None);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.arcs.len()];
            seen[s] = true;
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for (i, a) in self.arcs[x].iter().enumerate() {
                    if a.cap > 0 && !seen[a.to] {
                        seen[a.to] = true;
                        prev[a.to] = Some((x, i));
                        queue.push_back(a.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while let Some((x, i)) = prev[y] {
                self.arcs[x][i].cap -= 1;
                let rev = self.arcs[x][i].rev;
                self.arcs[y][rev].cap += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for a in &self.arcs[x] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

/// Sink side of a vertex-disjoint flow problem.
enum Sinks<'a> {
    Single(Vertex),
    /// Distinct endpoints among these targets; targets are never passed through.
    Distinct(&'a [Vertex]),
}

struct FlowResult {
    paths: Vec<Path>,
    cut: Vec<Vertex>,
    reached: Vec<Vertex>,
}

/// Core routine: up to `limit` paths from `source` to the sinks, internally
/// vertex disjoint, avoiding `blocked` vertices and the optional skipped edge.
/// When fewer than `limit` paths exist, `cut` is a minimum blocking set.
fn disjoint_flow(
    g: &Graph,
    source: Vertex,
    sinks: Sinks<'_>,
    blocked: &[bool],
    skip_edge: Option<(Vertex, Vertex)>,
    limit: usize,
) -> FlowResult {
    let n = g.n();
    let super_sink = 2 * n;
    let mut net = Network::new(2 * n + 1);
    let mut is_target = vec![false; n];
    let sink_node = match sinks {
        Sinks::Single(t) => {
            is_target[t] = true;
            2 * t
        }
        Sinks::Distinct(ts) => {
            for &t in ts {
                if !blocked[t] && t != source && !is_target[t] {
                    is_target[t] = true;
                    net.add(2 * t, super_sink, 1);
                }
            }
            super_sink
        }
    };
    for v in g.vertices() {
        if blocked[v] || v == source || is_target[v] {
            continue;
        }
        net.add(2 * v, 2 * v + 1, 1);
    }
    for v in g.vertices() {
        if blocked[v] || is_target[v] {
            continue;
        }
        for &w in g.neighbors(v) {
            if blocked[w] || w == source {
                continue;
            }
            if let Some((a, b)) = skip_edge {
                if (v, w) == (a, b) || (v, w) == (b, a) {
                    continue;
                }
            }
            net.add(2 * v + 1, 2 * w, UNBOUNDED);
        }
    }
    let src = 2 * source + 1;
    let flow = net.max_flow(src, sink_node, limit);

    // reachability must be read before the decomposition consumes the flow
    let seen = net.reachable(src);
    let mut paths = Vec::with_capacity(flow);
    for _ in 0..flow {
        let mut path = vec![source];
        let mut x = src;
        while x != sink_node {
            let i = net.arcs[x]
                .iter()
                .position(|a| a.orig > a.cap)
                .expect("flow conservation");
            net.arcs[x][i].cap += 1;
            x = net.arcs[x][i].to;
            if x < 2 * n && x % 2 == 0 {
                path.push(x / 2);
            }
        }
        paths.push(path);
    }

    let (cut, reached) = if flow < limit {
        let mut cut = Vec::new();
        let mut reached = Vec::new();
        for v in g.vertices() {
            if blocked[v] || v == source {
                continue;
            }
            if seen[2 * v] {
                let saturated = if is_target[v] {
                    !seen[super_sink] && matches!(sinks, Sinks::Distinct(_))
                } else {
                    !seen[2 * v + 1]
                };
                if saturated {
                    cut.push(v);
                } else {
                    reached.push(v);
                }
            }
        }
        (cut, reached)
    } else {
        (Vec::new(), Vec::new())
    };
    FlowResult { paths, cut, reached }
}

fn sort_paths(paths: &mut [Path]) {
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Maximum number (capped at `limit`) of internally disjoint `u`-`v` paths.
/// A direct edge counts as one path.
pub fn max_disjoint_paths(g: &Graph, u: Vertex, v: Vertex, limit: usize) -> PathSystem {
    disjoint_paths_within(g, u, v, limit, &vec![false; g.n()])
}

/// [`max_disjoint_paths`] in `g` with the `blocked` vertices deleted.
pub fn disjoint_paths_within(g: &Graph, u: Vertex, v: Vertex, limit: usize, blocked: &[bool]) -> PathSystem {
    assert_ne!(u, v, "disjoint paths need distinct ends");
    let mut paths = Vec::new();
    if limit == 0 || blocked[u] || blocked[v] {
        return PathSystem {
            paths,
            sharing: Sharing::Endpoints,
        };
    }
    let direct = g.has_edge(u, v);
    if direct {
        paths.push(vec![u, v]);
    }
    let rest = limit - usize::from(direct);
    if rest > 0 {
        let r = disjoint_flow(g, u, Sinks::Single(v), blocked, Some((u, v)), rest);
        paths.extend(r.paths);
    }
    sort_paths(&mut paths);
    PathSystem {
        paths,
        sharing: Sharing::Endpoints,
    }
}

/// Size of a minimum `u`-`v` vertex cut for nonadjacent `u`, `v`, with the cut
/// itself (capped: returns `None` when at least `limit` disjoint paths exist).
fn local_cut(g: &Graph, u: Vertex, v: Vertex, limit: usize) -> Option<Vec<Vertex>> {
    let blocked = vec![false; g.n()];
    let r = disjoint_flow(g, u, Sinks::Single(v), &blocked, None, limit);
    (r.paths.len() < limit).then(|| {
        let mut c = r.cut;
        c.sort_unstable();
        c
    })
}

/// Minimum separator of size below `bound` (or of any size when `bound` is
/// `None`). Complete graphs and graphs with at most one vertex have none.
///
/// Even's scheme: a minimum cut `S` misses one of the first `|S| + 1`
/// vertices, so pairs whose smaller index is at most the best size so far
/// cover it. Among equal-size cuts found by the flows the lexicographically
/// smallest wins.
fn min_separator(g: &Graph, bound: Option<usize>) -> Option<Vec<Vertex>> {
    let n = g.n();
    if n <= 1 || g.is_complete() {
        return None;
    }
    // N(v) of a minimum-degree vertex separates v from the rest
    let vmin = g.vertices().min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut best: Option<Vec<Vertex>> =
        Some(g.neighbors(vmin).to_vec()).filter(|c| bound.map_or(true, |b| c.len() < b));
    let limit_of = |best: &Option<Vec<Vertex>>| match best {
        Some(c) => c.len() + 1,
        None => bound.expect("unbounded search starts with a cut"),
    };
    let mut i = 0;
    while i < n && i < limit_of(&best) {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let limit = limit_of(&best);
            if let Some(cut) = local_cut(g, i, j, limit) {
                let better = match &best {
                    None => true,
                    Some(b) => (cut.len(), &cut) < (b.len(), b),
                };
                if better {
                    best = Some(cut);
                }
            }
        }
        i += 1;
    }
    best
}

/// The vertex connectivity κ(G). Complete graphs give `n - 1`; graphs with at
/// most one vertex give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    if g.n() <= 1 {
        return 0;
    }
    if g.is_complete() {
        return g.n() - 1;
    }
    min_separator(g, None).map_or(0, |c| c.len())
}

/// A minimum separator when κ(G) < `k` and G is not complete; `None` means no
/// separator below `k` exists.
pub fn find_separator(g: &Graph, k: usize) -> Option<Separator> {
    let cut = min_separator(g, Some(k))?;
    let sep = Separator::from_cut(g, &cut);
    debug_assert!(sep.is_some(), "flow cut {cut:?} does not separate");
    sep
}

/// `k` paths from `u` to distinct vertices of `target`, disjoint except at `u`,
/// whose internal vertices avoid `target` and `forbidden`; otherwise a set of
/// fewer than `k` vertices blocking all such routes.
pub fn fan(g: &Graph, u: Vertex, target: &[Vertex], k: usize, forbidden: &[Vertex]) -> FanOutcome {
    let mut blocked = vec![false; g.n()];
    for &f in forbidden {
        blocked[f] = true;
    }
    let r = disjoint_flow(g, u, Sinks::Distinct(target), &blocked, None, k);
    if r.paths.len() >= k {
        let mut paths = r.paths;
        sort_paths(&mut paths);
        FanOutcome::Paths(PathSystem {
            paths,
            sharing: Sharing::Apex(u),
        })
    } else {
        FanOutcome::Blocked {
            cut: r.cut,
            reached: r.reached,
        }
    }
}
