use topocert::graph::Graph;
use topocert::subdiv::{
    find_subdivision, oracle_contains, verify_embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome,
};

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::new(n, edges).unwrap()
}

#[test]
fn finder_matches_oracle_on_five_vertices() {
    for mask in 0..1u32 << 10 {
        let g = graph_from_mask(5, mask);
        for p in [Pattern::w4(), Pattern::k5_minus(), Pattern::cycle(4)] {
            let mut budget = SearchBudget::default();
            let got = find_subdivision(&g, &p, &mut budget, &SearchOptions::default());
            if let SearchOutcome::Found(e) = &got {
                assert_eq!(verify_embedding(&g, e), Ok(()));
            }
            assert_ne!(got, SearchOutcome::BudgetExceeded);
            assert_eq!(got.is_found(), oracle_contains(&g, &p).unwrap(), "{g:?} {}", p.name);
        }
    }
}

#[test]
fn adding_an_edge_keeps_containment() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..200 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mask = (state >> 20) as u32 & ((1 << 21) - 1);
        let g = graph_from_mask(7, mask);
        let p = Pattern::k5_minus();
        let opts = SearchOptions::default();
        if !find_subdivision(&g, &p, &mut SearchBudget::default(), &opts).is_found() {
            continue;
        }
        let missing: Vec<_> = (0..7)
            .flat_map(|u| (u + 1..7).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        for e in missing {
            let h = g.with_edges([e]).unwrap();
            assert!(find_subdivision(&h, &p, &mut SearchBudget::default(), &opts).is_found());
        }
    }
}

#[test]
fn anchored_with_full_restrict_equals_plain() {
    for mask in (0..1u32 << 15).step_by(97) {
        let g = graph_from_mask(6, mask);
        let all: Vec<_> = g.vertices().collect();
        let opts = SearchOptions {
            anchors: vec![],
            restrict: Some(all),
        };
        for p in [Pattern::w4(), Pattern::k5_minus()] {
            let a = find_subdivision(&g, &p, &mut SearchBudget::default(), &opts);
            let b = find_subdivision(&g, &p, &mut SearchBudget::default(), &SearchOptions::default());
            assert_eq!(a, b);
        }
    }
}
