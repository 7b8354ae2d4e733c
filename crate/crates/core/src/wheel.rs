//! Four-spoke wheel subdivisions and the spoke-shortening loop.

use serde::{Serialize, Serializer};

use crate::graph::{interior, Graph, Path, Vertex};
use crate::subdiv::{
    find_subdivision, verify_embedding, Embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome, Violation,
};

/// A W4-subdivision with hub `hub`, spokes `spokes[i]` from the hub to
/// `smr[i]`, and rim segments `rim[i]` from `smr[i]` to `smr[(i + 1) % 4]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WheelW4 {
    pub hub: Vertex,
    pub smr: [Vertex; 4],
    pub spokes: [Path; 4],
    pub rim: [Path; 4],
}

impl WheelW4 {
    /// Builds a wheel from spokes and rim segments, reading the smr vertices
    /// off the spoke ends. Paths are reoriented where needed.
    pub fn new(hub: Vertex, spokes: [Path; 4], rim: [Path; 4]) -> WheelW4 {
        let mut spokes = spokes;
        for s in &mut spokes {
            if s.first() != Some(&hub) {
                s.reverse();
            }
        }
        let smr = [0, 1, 2, 3].map(|i| *spokes[i].last().expect("empty spoke"));
        let mut rim = rim;
        for (i, r) in rim.iter_mut().enumerate() {
            if r.first() != Some(&smr[i]) {
                r.reverse();
            }
        }
        WheelW4 { hub, smr, spokes, rim }
    }

    pub fn from_embedding(e: &Embedding) -> Option<WheelW4> {
        if e.pattern != Pattern::w4() || e.paths.len() != 8 {
            return None;
        }
        let p = &e.paths;
        let spokes = [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
        let rim = [p[4].clone(), p[5].clone(), p[6].clone(), p[7].clone()];
        Some(WheelW4::new(e.branch_map[0], spokes, rim))
    }

    pub fn embedding(&self) -> Embedding {
        let mut branch_map = vec![self.hub];
        branch_map.extend(self.smr);
        let paths = self.spokes.iter().chain(self.rim.iter()).cloned().collect();
        Embedding::new(Pattern::w4(), branch_map, paths)
    }

    pub fn verify(&self, g: &Graph) -> Result<(), Vec<Violation>> {
        verify_embedding(g, &self.embedding())
    }

    pub fn total_spoke_length(&self) -> usize {
        self.spokes.iter().map(|s| s.len() - 1).sum()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.embedding().vertices()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.embedding().edges()
    }

    /// Rotates so `smr[k]` becomes `smr[0]`.
    pub fn rotated(&self, k: usize) -> WheelW4 {
        let at = |i: usize| (i + k) % 4;
        WheelW4 {
            hub: self.hub,
            smr: [0, 1, 2, 3].map(|i| self.smr[at(i)]),
            spokes: [0, 1, 2, 3].map(|i| self.spokes[at(i)].clone()),
            rim: [0, 1, 2, 3].map(|i| self.rim[at(i)].clone()),
        }
    }

    /// Keeps `smr[0]`, swaps `smr[1]` with `smr[3]` and reverses the rim.
    pub fn mirrored(&self) -> WheelW4 {
        let rev = |p: &Path| p.iter().rev().copied().collect::<Path>();
        WheelW4 {
            hub: self.hub,
            smr: [self.smr[0], self.smr[3], self.smr[2], self.smr[1]],
            spokes: [0, 3, 2, 1].map(|i| self.spokes[i].clone()),
            rim: [3, 2, 1, 0].map(|i| rev(&self.rim[i])),
        }
    }

    /// `smr[0]` is the smallest smr vertex and `smr[1] < smr[3]`.
    pub fn canonical(&self) -> WheelW4 {
        let k = (0..4).min_by_key(|&i| self.smr[i]).unwrap();
        let r = self.rotated(k);
        if r.smr[1] < r.smr[3] {
            r
        } else {
            r.mirrored()
        }
    }
}

#[derive(Serialize)]
struct WheelJson<'a> {
    #[serde(flatten)]
    embedding: Embedding,
    hub: Vertex,
    spokes: &'a [Path; 4],
    rim: &'a [Path; 4],
}

impl Serialize for WheelW4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WheelJson {
            embedding: self.embedding(),
            hub: self.hub,
            spokes: &self.spokes,
            rim: &self.rim,
        }
        .serialize(s)
    }
}

/// A wheel `wheel` with the same hub whose spokes are initial segments of
/// the old spokes: old spoke `i` was cut at `prefix_ends[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShorterWitness {
    pub wheel: WheelW4,
    pub prefix_ends: [Vertex; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Improvement {
    Shorter(ShorterWitness),
    AlreadyMinimalHere,
    BudgetExceeded,
}

pub fn find_w4(g: &Graph, budget: &mut SearchBudget) -> SearchOutcome<WheelW4> {
    find_subdivision(g, &Pattern::w4(), budget, &SearchOptions::default())
        .map(|e| WheelW4::from_embedding(&e).expect("w4 embedding").canonical())
}

/// Cap on nodes for one anchored rim search.
const RIM_SEARCH_CAP: u64 = 200_000;

/// Looks for a wheel with the same hub whose spokes are initial segments of
/// `h`'s spokes, at least one proper. Cut points are tried in increasing
/// total spoke length, so the first hit is the largest available saving.
pub fn improve_once(g: &Graph, h: &WheelW4, budget: &mut SearchBudget) -> Improvement {
    let lens: Vec<usize> = h.spokes.iter().map(|s| s.len() - 1).collect();
    let full: usize = lens.iter().sum();
    let mut cuts: Vec<[usize; 4]> = Vec::new();
    for a in 1..=lens[0] {
        for b in 1..=lens[1] {
            for c in 1..=lens[2] {
                for d in 1..=lens[3] {
                    if a + b + c + d < full {
                        cuts.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    cuts.sort_by_key(|c| (c.iter().sum::<usize>(), *c));
    let mut truncated = false;
    for cut in cuts {
        let spokes = [0, 1, 2, 3].map(|i| h.spokes[i][..=cut[i]].to_vec());
        let ends = [0, 1, 2, 3].map(|i| *spokes[i].last().unwrap());
        let mut banned = vec![false; g.n()];
        banned[h.hub] = true;
        for s in &spokes {
            for &v in interior(s) {
                banned[v] = true;
            }
        }
        let restrict: Vec<Vertex> = g.vertices().filter(|&v| !banned[v]).collect();
        // the three cyclic orders of four rim vertices with spoke 0 first
        for order in [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]] {
            let opts = SearchOptions {
                anchors: (0..4).map(|j| (j, ends[order[j]])).collect(),
                restrict: Some(restrict.clone()),
            };
            let mut sub = budget.slice(RIM_SEARCH_CAP);
            let found = find_subdivision(g, &Pattern::cycle(4), &mut sub, &opts);
            budget.charge(&sub);
            match found {
                SearchOutcome::Found(e) => {
                    let wheel = WheelW4::new(
                        h.hub,
                        order.map(|i| spokes[i].clone()),
                        [0, 1, 2, 3].map(|j| e.paths[j].clone()),
                    );
                    debug_assert!(wheel.verify(g).is_ok());
                    return Improvement::Shorter(ShorterWitness {
                        wheel: wheel.canonical(),
                        prefix_ends: ends,
                    });
                }
                SearchOutcome::BudgetExceeded => truncated = true,
                SearchOutcome::NotFound => {}
            }
            if budget.exhausted() {
                return Improvement::BudgetExceeded;
            }
        }
    }
    if truncated {
        Improvement::BudgetExceeded
    } else {
        Improvement::AlreadyMinimalHere
    }
}

/// Result of iterating [`improve_once`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortened {
    pub wheel: WheelW4,
    /// Total spoke length after each improvement step.
    pub lengths: Vec<usize>,
    /// The fixpoint was not confirmed because the budget ran out.
    pub truncated: bool,
}

pub fn make_short(g: &Graph, h: &WheelW4, budget: &mut SearchBudget) -> Shortened {
    let mut wheel = h.canonical();
    let mut lengths = Vec::new();
    loop {
        match improve_once(g, &wheel, budget) {
            Improvement::Shorter(w) => {
                debug_assert!(w.wheel.total_spoke_length() < wheel.total_spoke_length());
                wheel = w.wheel;
                lengths.push(wheel.total_spoke_length());
            }
            Improvement::AlreadyMinimalHere => {
                return Shortened {
                    wheel,
                    lengths,
                    truncated: false,
                };
            }
            Improvement::BudgetExceeded => {
                return Shortened {
                    wheel,
                    lengths,
                    truncated: true,
                };
            }
        }
    }
}
