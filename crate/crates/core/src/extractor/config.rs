//! The working configuration: a short wheel `H`, the path `P` from `v1`,
//! and whatever auxiliary paths a case has built so far.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::graph::{interior, norm, path_edges, Graph, Path, Vertex};
use crate::wheel::WheelW4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    A,
    B,
    C,
    CI,
    CII1,
    CII2,
    D,
    DI,
    DII1,
    DII2,
    E,
    E1,
    E2,
}

impl CaseLabel {
    /// The top-level letter of a sub-label.
    pub fn top(self) -> CaseLabel {
        use CaseLabel::*;
        match self {
            C | CI | CII1 | CII2 => C,
            D | DI | DII1 | DII2 => D,
            E | E1 | E2 => E,
            other => other,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CaseLabel::*;
        let s = match self {
            A => "a",
            B => "b",
            C => "c",
            CI => "c(i)",
            CII1 => "c(ii)1",
            CII2 => "c(ii)2",
            D => "d",
            DI => "d(i)",
            DII1 => "d(ii)1",
            DII2 => "d(ii)2",
            E => "e",
            E1 => "e1",
            E2 => "e2",
        };
        f.write_str(s)
    }
}

/// `H` plus named auxiliary paths. `aux["P"]` runs from `v1` to `p1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub h: WheelW4,
    pub aux: BTreeMap<String, Path>,
}

impl Configuration {
    pub fn new(h: WheelW4, p: Path) -> Configuration {
        let mut aux = BTreeMap::new();
        aux.insert("P".to_string(), p);
        Configuration { h, aux }
    }

    pub fn hub(&self) -> Vertex {
        self.h.hub
    }

    /// `v_i`, 1-based.
    pub fn v(&self, i: usize) -> Vertex {
        self.h.smr[(i + 3) % 4]
    }

    /// Spoke `P_i`, from the hub to `v_i`.
    pub fn sp(&self, i: usize) -> &Path {
        &self.h.spokes[(i + 3) % 4]
    }

    /// Rim segment `R_i`, from `v_i` to `v_{i+1}`.
    pub fn rim(&self, i: usize) -> &Path {
        &self.h.rim[(i + 3) % 4]
    }

    pub fn p(&self) -> &Path {
        &self.aux["P"]
    }

    pub fn p1(&self) -> Vertex {
        *self.p().last().unwrap()
    }

    pub fn path(&self, name: &str) -> Option<&Path> {
        self.aux.get(name)
    }

    pub fn with(&self, name: &str, path: Path) -> Configuration {
        let mut c = self.clone();
        c.aux.insert(name.to_string(), path);
        c
    }

    pub fn composite_edges(&self, extra: &[&Path]) -> Vec<(Vertex, Vertex)> {
        let mut set: BTreeSet<(Vertex, Vertex)> = self.h.edges().into_iter().collect();
        for p in self.aux.values().chain(extra.iter().copied()) {
            set.extend(path_edges(p));
        }
        set.into_iter().collect()
    }

    pub fn composite_vertices(&self, extra: &[&Path]) -> Vec<Vertex> {
        let mut set: BTreeSet<Vertex> = self.h.vertices().into_iter().collect();
        for p in self.aux.values().chain(extra.iter().copied()) {
            set.extend(p.iter().copied());
        }
        set.into_iter().collect()
    }

    /// Rotates the wheel by two and swaps the roles of `P` and `Q`, so the
    /// picture seen from `v3` becomes the picture seen from `v1`.
    pub fn half_turn(&self) -> Option<Configuration> {
        let q = self.aux.get("Q")?;
        let mut c = Configuration::new(self.h.rotated(2), q.clone());
        c.aux.insert("Q".to_string(), self.p().clone());
        Some(c)
    }
}

/// Where `p1` sits on `H`, with a rank used to pick among candidate paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Landing {
    pub label: CaseLabel,
    /// Relabel by [`WheelW4::mirrored`] to reach the canonical side.
    pub mirror: bool,
    pub(crate) rank: (u8, usize, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vertex {0} is not on the wheel")]
pub struct Unclassifiable(pub Vertex);

fn pos(path: &[Vertex], x: Vertex) -> Option<usize> {
    path.iter().position(|&y| y == x)
}

fn is_internal(path: &[Vertex], x: Vertex) -> bool {
    interior(path).contains(&x)
}

/// Classifies a landing vertex. Endpoint ties resolve B, A, C, D, E in that
/// order; inside (e) a rim landing on `R1` beats `R4`, which beats `P1`.
pub fn classify_p1(h: &WheelW4, p1: Vertex) -> Result<Landing, Unclassifiable> {
    use CaseLabel::*;
    let v3 = h.smr[2];
    let l = |label, mirror, rank| Ok(Landing { label, mirror, rank });
    let [s1, s2, s3, s4] = &h.spokes;
    let [r1, r2, r3, r4] = &h.rim;
    if p1 == v3 {
        return l(B, false, (0, 0, 0));
    }
    if is_internal(s2, p1) {
        return l(A, false, (1, 0, 0));
    }
    if is_internal(s4, p1) {
        return l(A, true, (1, 0, 0));
    }
    if is_internal(r2, p1) {
        return l(C, false, (2, r2.len() - 1 - pos(r2, p1).unwrap(), 0));
    }
    if is_internal(r3, p1) {
        return l(C, true, (2, pos(r3, p1).unwrap(), 0));
    }
    if is_internal(s3, p1) {
        return l(D, false, (3, s3.len() - 1 - pos(s3, p1).unwrap(), 0));
    }
    if r1.contains(&p1) {
        return l(E, false, (4, 0, 0));
    }
    if r4.contains(&p1) {
        return l(E, false, (4, 0, 1));
    }
    if s1.contains(&p1) {
        return l(E, false, (4, 0, 2));
    }
    Err(Unclassifiable(p1))
}

/// No path `P` exists: every neighbour of `v1` off `H` leads back only to `v1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoPath {
    /// `v1` has no neighbour outside its three wheel neighbours.
    DegreeThree,
    /// The pieces hanging off `v1` attach nowhere else.
    CutVertex,
}

/// Picks `P`: a path from `v1` through a neighbour `u1` outside `N_H(v1)`,
/// meeting `H` again only at its far end. Among all such paths the best
/// landing wins; ties go to shorter paths, then smaller `u1`, then smaller
/// landing vertex. Returns the configuration already mirrored if needed.
pub fn choose_p(g: &Graph, h: &WheelW4) -> Result<(Configuration, Landing), NoPath> {
    let n = g.n();
    let mut in_h = vec![false; n];
    for v in h.vertices() {
        in_h[v] = true;
    }
    let v1 = h.smr[0];
    let h_edges: BTreeSet<(Vertex, Vertex)> = h.edges().into_iter().collect();
    let mut best: Option<((u8, usize, u8), usize, Vertex, Vertex, Path, Landing)> = None;
    let mut any_neighbour = false;
    let mut consider = |path: Path, u: Vertex| {
        let w = *path.last().unwrap();
        let land = classify_p1(h, w).expect("landing lies on the wheel");
        let key = (land.rank, path.len(), u, w);
        let better = match &best {
            None => true,
            Some((r, len, bu, bw, _, _)) => key < (*r, *len, *bu, *bw),
        };
        if better {
            best = Some((land.rank, path.len(), u, w, path, land));
        }
    };
    for &u in g.neighbors(v1) {
        if h_edges.contains(&norm(v1, u)) {
            continue;
        }
        any_neighbour = true;
        if in_h[u] {
            consider(vec![v1, u], u);
            continue;
        }
        // BFS through vertices off H, recording every H vertex reached
        let mut parent = vec![usize::MAX; n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        let mut landed = BTreeMap::new();
        while let Some(x) = queue.pop_front() {
            for &w in g.neighbors(x) {
                if in_h[w] {
                    if w != v1 {
                        landed.entry(w).or_insert(x);
                    }
                } else if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        for (w, x) in landed {
            let mut rev = vec![w, x];
            let mut y = x;
            while y != u {
                y = parent[y];
                rev.push(y);
            }
            rev.push(v1);
            rev.reverse();
            consider(rev, u);
        }
    }
    let Some((_, _, _, _, path, land)) = best else {
        return Err(if any_neighbour {
            NoPath::CutVertex
        } else {
            NoPath::DegreeThree
        });
    };
    let wheel = if land.mirror { h.mirrored() } else { h.clone() };
    Ok((Configuration::new(wheel, path), land))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel_k5() -> WheelW4 {
        WheelW4::new(
            0,
            [vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]],
            [vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
        )
    }

    /// Spokes of length 2 and rim segments of length 2: hub 0, smr 1..=4,
    /// spoke interiors 5..=8, rim interiors 9..=12.
    fn long_wheel() -> WheelW4 {
        WheelW4::new(
            0,
            [vec![0, 5, 1], vec![0, 6, 2], vec![0, 7, 3], vec![0, 8, 4]],
            [vec![1, 9, 2], vec![2, 10, 3], vec![3, 11, 4], vec![4, 12, 1]],
        )
    }

    #[test]
    fn labels() {
        let h = long_wheel();
        let lab = |x| classify_p1(&h, x).unwrap();
        assert_eq!(lab(3).label, CaseLabel::B);
        assert_eq!(lab(6).label, CaseLabel::A);
        assert!(!lab(6).mirror);
        assert!(lab(8).mirror);
        assert_eq!(lab(10).label, CaseLabel::C);
        assert_eq!(lab(11).label, CaseLabel::C);
        assert!(lab(11).mirror);
        assert_eq!(lab(7).label, CaseLabel::D);
        for x in [9, 12, 5, 0, 2, 4] {
            assert_eq!(lab(x).label, CaseLabel::E, "{x}");
        }
        assert!(classify_p1(&h, 99).is_err());
    }

    #[test]
    fn k5_picks_the_chord_to_v3() {
        let g = Graph::complete(5);
        let (c, land) = choose_p(&g, &wheel_k5()).unwrap();
        assert_eq!(land.label, CaseLabel::B);
        assert_eq!(c.p(), &vec![1, 3]);
    }

    #[test]
    fn mirrored_landing() {
        // P from v1 = 1 through 13 to the interior of P4
        let h = long_wheel();
        let mut edges = h.edges();
        edges.extend([(1, 13), (13, 8)]);
        let g = Graph::new(14, edges).unwrap();
        let (c, land) = choose_p(&g, &h).unwrap();
        assert_eq!(land.label, CaseLabel::A);
        assert!(land.mirror);
        assert_eq!(c.v(1), 1);
        assert_eq!(c.v(2), 4);
        assert!(c.sp(2).contains(&8));
        assert_eq!(c.p(), &vec![1, 13, 8]);
    }

    #[test]
    fn half_turn_swaps_roles() {
        let c = Configuration::new(long_wheel(), vec![1, 13, 10]).with("Q", vec![3, 14, 12]);
        let d = c.half_turn().unwrap();
        assert_eq!(d.v(1), 3);
        assert_eq!(d.p(), &vec![3, 14, 12]);
        assert_eq!(d.path("Q"), Some(&vec![1, 13, 10]));
        assert!(d.rim(2).contains(&12));
    }
}
