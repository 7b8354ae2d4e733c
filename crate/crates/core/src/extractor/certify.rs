//! Certifying a claim about a configuration by search inside its composite.

use serde::Serialize;
use thiserror::Error;

use super::config::Configuration;
use crate::graph::{Graph, Path, Vertex};
use crate::subdiv::{
    find_subdivision, verify_embedding, Embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome,
};
use crate::wheel::{improve_once, Improvement, ShorterWitness, WheelW4};

/// Node cap for one certification search.
pub const CERT_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Claim {
    K5Minus,
    ShorterW4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certified {
    K5Minus(Embedding),
    ShorterW4(ShorterWitness),
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("claim {claim:?} failed for {context}")]
pub struct TableClaimFalsified {
    pub claim: Claim,
    pub context: String,
    pub configuration: Configuration,
    pub composite: Vec<(Vertex, Vertex)>,
}

fn local(map: &[Vertex], v: Vertex) -> Vertex {
    map.binary_search(&v).expect("vertex in composite")
}

/// A K5⁻-subdivision using only the given edges of `g`.
pub fn k5_within(g: &Graph, edges: &[(Vertex, Vertex)], budget: &mut SearchBudget) -> SearchOutcome<Embedding> {
    let (sub, map) = g
        .edge_subgraph(edges.iter().copied(), &[])
        .expect("composite edges lie in g");
    let mut slice = budget.slice(CERT_CAP);
    let out = find_subdivision(&sub, &Pattern::k5_minus(), &mut slice, &SearchOptions::default());
    budget.charge(&slice);
    out.map(|e| {
        let e = e.relabel(&map);
        debug_assert!(verify_embedding(g, &e).is_ok());
        e
    })
}

/// A wheel shorter than `h` (same hub, spokes cut to prefixes) using only the
/// given edges of `g` together with the edges of `h`.
pub fn shorter_within(
    g: &Graph,
    h: &WheelW4,
    edges: &[(Vertex, Vertex)],
    budget: &mut SearchBudget,
) -> Option<ShorterWitness> {
    let mut all: Vec<(Vertex, Vertex)> = edges.to_vec();
    all.extend(h.edges());
    all.sort_unstable();
    all.dedup();
    let (sub, map) = g.edge_subgraph(all, &[]).expect("composite edges lie in g");
    let to = |p: &Path| p.iter().map(|&v| local(&map, v)).collect::<Path>();
    let hl = WheelW4::new(
        local(&map, h.hub),
        [0, 1, 2, 3].map(|i| to(&h.spokes[i])),
        [0, 1, 2, 3].map(|i| to(&h.rim[i])),
    );
    let mut slice = budget.slice(CERT_CAP);
    let out = improve_once(&sub, &hl, &mut slice);
    budget.charge(&slice);
    match out {
        Improvement::Shorter(w) => {
            let back = |p: &Path| p.iter().map(|&v| map[v]).collect::<Path>();
            let wheel = WheelW4::new(
                map[w.wheel.hub],
                [0, 1, 2, 3].map(|i| back(&w.wheel.spokes[i])),
                [0, 1, 2, 3].map(|i| back(&w.wheel.rim[i])),
            );
            debug_assert!(wheel.verify(g).is_ok());
            Some(ShorterWitness {
                wheel,
                prefix_ends: w.prefix_ends.map(|v| map[v]),
            })
        }
        _ => None,
    }
}

/// Checks `claim` inside `H ∪ aux ∪ extra`. A failure means the claim does
/// not hold for this configuration.
pub fn certify_configuration(
    g: &Graph,
    c: &Configuration,
    extra: &[&Path],
    claim: Claim,
    context: &str,
    budget: &mut SearchBudget,
) -> Result<Certified, TableClaimFalsified> {
    let composite = c.composite_edges(extra);
    let got = match claim {
        Claim::K5Minus => k5_within(g, &composite, budget).found().map(Certified::K5Minus),
        Claim::ShorterW4 => shorter_within(g, &c.h, &composite, budget).map(Certified::ShorterW4),
    };
    got.ok_or_else(|| TableClaimFalsified {
        claim,
        context: context.to_string(),
        configuration: c.clone(),
        composite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn long_wheel() -> WheelW4 {
        WheelW4::new(
            0,
            [vec![0, 5, 1], vec![0, 6, 2], vec![0, 7, 3], vec![0, 8, 4]],
            [vec![1, 9, 2], vec![2, 10, 3], vec![3, 11, 4], vec![4, 12, 1]],
        )
    }

    fn host(extra: &[(usize, usize)]) -> Graph {
        let mut e = long_wheel().edges();
        e.extend_from_slice(extra);
        Graph::new(16, e).unwrap()
    }

    #[test]
    fn v1_to_v3_gives_k5_minus() {
        let g = host(&[(1, 13), (13, 3)]);
        let c = Configuration::new(long_wheel(), vec![1, 13, 3]);
        let got = certify_configuration(&g, &c, &[], Claim::K5Minus, "b", &mut SearchBudget::default());
        let Ok(Certified::K5Minus(e)) = got else { panic!() };
        assert_eq!(verify_embedding(&g, &e), Ok(()));
    }

    #[test]
    fn landing_inside_a_spoke_gives_shorter_wheel() {
        let g = host(&[(1, 13), (13, 6)]);
        let c = Configuration::new(long_wheel(), vec![1, 13, 6]);
        let got = certify_configuration(&g, &c, &[], Claim::ShorterW4, "a", &mut SearchBudget::default());
        let Ok(Certified::ShorterW4(w)) = got else { panic!() };
        assert!(w.wheel.total_spoke_length() < 8);
        assert_eq!(w.wheel.verify(&g), Ok(()));
    }

    #[test]
    fn bare_wheel_falsifies_both_claims() {
        let g = host(&[]);
        let c = Configuration {
            h: long_wheel(),
            aux: Default::default(),
        };
        for claim in [Claim::K5Minus, Claim::ShorterW4] {
            let err = certify_configuration(&g, &c, &[], claim, "bare", &mut SearchBudget::default()).unwrap_err();
            assert_eq!(err.claim, claim);
            assert_eq!(err.composite.len(), 16);
        }
    }
}
