use topocert::bridges::{bridge_path, compute_bridges, BridgeKind};
use topocert::connectivity::{fan, find_separator, max_disjoint_paths, vertex_connectivity, FanOutcome};
use topocert::generator::{generate, FamilySpec};
use topocert::graph::Graph;
use topocert::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use topocert::subdiv::{verify_embedding, SearchBudget, SearchOutcome};
use topocert::wheel::{find_w4, improve_once, make_short, Improvement, WheelW4};

fn wheel_graph() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap()
}

#[test]
fn graph6_round_trips_generated_graphs() {
    assert_eq!(write_graph6(&Graph::complete(5), false), "D~{");
    for seed in 0..30 {
        let g = generate(&FamilySpec::Random {
            n: 3 + seed as usize,
            p: 0.4,
            seed,
        })
        .unwrap();
        assert_eq!(parse_graph6(&write_graph6(&g, seed % 2 == 0)).unwrap(), g);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}

#[test]
fn connectivity_of_families() {
    let oct = generate(&"multipartite:2,2,2".parse().unwrap()).unwrap();
    assert_eq!(vertex_connectivity(&oct), 4);
    assert_eq!(vertex_connectivity(&Graph::cycle(5)), 2);
    assert_eq!(
        vertex_connectivity(&generate(&"torus:4x4".parse().unwrap()).unwrap()),
        4
    );
    let sep = find_separator(&Graph::cycle(7), 3).unwrap();
    assert_eq!(sep.cut.len(), 2);
    assert!(sep.verify(&Graph::cycle(7)));
    // poles 0 and 1 of the octahedron are its antipodal pair
    let ps = max_disjoint_paths(&oct, 0, 1, 10);
    assert_eq!(ps.len(), 4);
    assert!(ps.verify(&oct));
}

#[test]
fn hub_fans_out_along_spokes() {
    let g = wheel_graph();
    match fan(&g, 0, &[1, 2, 3, 4], 4, &[]) {
        FanOutcome::Paths(ps) => {
            assert!(ps.verify(&g));
            let mut ends: Vec<_> = ps.paths.iter().map(|p| *p.last().unwrap()).collect();
            ends.sort();
            assert_eq!(ends, vec![1, 2, 3, 4]);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        fan(&Graph::cycle(6), 0, &[2, 3, 4], 3, &[]),
        FanOutcome::Blocked { .. }
    ));
}

#[test]
fn rim_bridge_of_the_wheel() {
    let g = wheel_graph();
    let rim = [(1, 2), (2, 3), (3, 4), (1, 4)];
    let bs = compute_bridges(&g, &[1, 2, 3, 4], &rim).unwrap();
    assert_eq!(bs.len(), 1);
    assert_eq!(bs[0].kind, BridgeKind::Outer);
    assert_eq!(bs[0].core, vec![0]);
    assert_eq!(bridge_path(&g, &bs[0], 1, 3).unwrap(), vec![1, 0, 3]);
}

#[test]
fn wheels_shorten_to_unit_spokes() {
    // K5 with the spoke 0-1 doubled by a detour 0-5-1, and 5 also next to 2
    let mut edges: Vec<_> = Graph::complete(5).edges().collect();
    edges.extend([(0, 5), (5, 1), (5, 2)]);
    let g = Graph::new(6, edges).unwrap();
    let long = WheelW4::new(
        0,
        [vec![0, 5, 1], vec![0, 2], vec![0, 3], vec![0, 4]],
        [vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
    );
    assert_eq!(long.verify(&g), Ok(()));
    match improve_once(&g, &long, &mut SearchBudget::default()) {
        Improvement::Shorter(w) => {
            assert_eq!(w.wheel.total_spoke_length(), 4);
            assert_eq!(verify_embedding(&g, &w.wheel.embedding()), Ok(()));
        }
        other => panic!("{other:?}"),
    }
    let s = make_short(&g, &long, &mut SearchBudget::default());
    assert_eq!(s.lengths, vec![4]);
    assert!(!s.truncated);
    assert_eq!(
        improve_once(&g, &s.wheel, &mut SearchBudget::default()),
        Improvement::AlreadyMinimalHere
    );

    match find_w4(&Graph::complete(5), &mut SearchBudget::default()) {
        SearchOutcome::Found(w) => assert_eq!(w.total_spoke_length(), 4),
        other => panic!("{other:?}"),
    }
}
