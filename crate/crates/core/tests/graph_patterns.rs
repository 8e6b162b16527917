mod common;

use proptest::prelude::*;
use rtlab::graph::Multiplicity;
use rtlab::patterns::{build_h, count_rainbow};
use rtlab::{find_rainbow, ColoredDigraph, EdgeRef, Error, GraphBuilder, TrianglePattern, VertexSetPair};

use common::{brute_has_rainbow, brute_rainbow_count, from_triples};

fn graph_strategy(max_n: usize, max_c: usize) -> impl Strategy<Value = ColoredDigraph> {
    (1..=max_n, 1..=max_c).prop_flat_map(|(n, c)| {
        proptest::collection::vec((1..=c, 0..n, 0..n), 0..=(n * n * c).min(40)).prop_map(move |edges| {
            let mut b = GraphBuilder::new(n, c).unwrap();
            for (color, u, v) in edges {
                if u != v {
                    b.add_edge(EdgeRef::new(color, u, v)).unwrap();
                }
            }
            b.build()
        })
    })
}

proptest! {
    #[test]
    fn detector_agrees_with_definition(g in graph_strategy(5, 4)) {
        for p in TrianglePattern::ALL {
            prop_assert_eq!(find_rainbow(&g, p).is_some(), brute_has_rainbow(&g, p));
            prop_assert_eq!(count_rainbow(&g, p), brute_rainbow_count(&g, p));
            if let Some(w) = find_rainbow(&g, p) {
                prop_assert!(w.is_valid_in(&g));
            }
        }
    }

    #[test]
    fn count_between_is_additive_over_partitions(g in graph_strategy(6, 3), split in 0usize..64, side in 0usize..64) {
        let n = g.n();
        let right: Vec<usize> = (0..n).filter(|v| side >> v & 1 == 1).collect();
        let left: Vec<usize> = (0..n).filter(|v| side >> v & 1 == 0).collect();
        let l1: Vec<usize> = left.iter().copied().filter(|v| split >> v & 1 == 1).collect();
        let l2: Vec<usize> = left.iter().copied().filter(|v| split >> v & 1 == 0).collect();
        for i in 1..=g.c() {
            let whole = g.count_between(i, &VertexSetPair::new(left.clone(), right.clone())).unwrap();
            let a = g.count_between(i, &VertexSetPair::new(l1.clone(), right.clone())).unwrap();
            let b = g.count_between(i, &VertexSetPair::new(l2.clone(), right.clone())).unwrap();
            prop_assert_eq!(whole, a + b);
        }
    }

    #[test]
    fn total_is_sum_of_color_counts(g in graph_strategy(6, 4)) {
        let sum: u64 = (1..=g.c()).map(|i| g.count_color(i).unwrap()).sum();
        prop_assert_eq!(g.total_edges(), sum);
        prop_assert_eq!(sum, g.edges().len() as u64);
    }

    #[test]
    fn partition_counting(g in graph_strategy(6, 3), mask in 0usize..64) {
        let a: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 0).collect();
        let (ga, gb) = (g.induced(&a).unwrap(), g.induced(&b).unwrap());
        let sets = VertexSetPair::new(a.clone(), b.clone());
        let mut rhs = 0;
        for i in 1..=g.c() {
            rhs += ga.count_color(i).unwrap() + gb.count_color(i).unwrap() + g.count_between(i, &sets).unwrap();
        }
        prop_assert_eq!(g.total_edges(), rhs);
    }

    #[test]
    fn classify_pair_agrees_with_count_between(g in graph_strategy(6, 3)) {
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let profile = g.classify_pair(u, v).unwrap();
                let between: u64 = (1..=g.c())
                    .map(|i| g.count_between(i, &VertexSetPair::singletons(u, v)).unwrap())
                    .sum();
                prop_assert_eq!(profile.total() as u64, between);
                if g.is_oriented() {
                    prop_assert!((1..=g.c()).all(|i| profile.color(i) != Multiplicity::Double));
                }
            }
        }
    }

    #[test]
    fn whole_vertex_set_counts_every_edge(g in graph_strategy(6, 3)) {
        let all: Vec<usize> = (0..g.n()).collect();
        for i in 1..=g.c() {
            let sets = VertexSetPair::new(all.clone(), all.clone());
            prop_assert_eq!(g.count_between(i, &sets).unwrap(), g.count_color(i).unwrap());
        }
    }

    #[test]
    fn json_round_trip_is_identity(g in graph_strategy(6, 4)) {
        let back = ColoredDigraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), g.to_json());
    }

    #[test]
    fn adding_edges_never_removes_rainbow_triangles(g in graph_strategy(5, 3), color in 1usize..=3, u in 0usize..5, v in 0usize..5) {
        prop_assume!(u != v && u < g.n() && v < g.n() && color <= g.c());
        let h = g.with_edge(EdgeRef::new(color, u, v)).unwrap();
        for p in TrianglePattern::ALL {
            prop_assert!(count_rainbow(&h, p) >= count_rainbow(&g, p));
        }
    }

    #[test]
    fn h_edges_follow_definition(g in graph_strategy(5, 3)) {
        let h = build_h(&g);
        let c = g.c();
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let fwd = (1..=c).filter(|&i| g.has_edge(i, u, v)).count();
                let bwd = (1..=c).filter(|&i| g.has_edge(i, v, u)).count();
                prop_assert_eq!(h.has_edge(1, u, v), fwd + bwd == c + 1 && fwd >= 3);
            }
        }
    }

    #[test]
    fn induced_subgraph_keeps_edges(g in graph_strategy(6, 3), mask in 0usize..64) {
        let subset: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let sub = g.induced(&subset).unwrap();
        for (a, &x) in subset.iter().enumerate() {
            for (b, &y) in subset.iter().enumerate() {
                for i in 1..=g.c() {
                    if a != b {
                        prop_assert_eq!(sub.has_edge(i, a, b), g.has_edge(i, x, y));
                    }
                }
            }
        }
    }
}

#[test]
fn single_rainbow_cycle() {
    let g = from_triples(3, 3, &[(1, 0, 1), (2, 1, 2), (3, 2, 0)]);
    let w = find_rainbow(&g, TrianglePattern::Directed).unwrap();
    assert!(w.is_valid_in(&g));
    assert_eq!(count_rainbow(&g, TrianglePattern::Directed), 1);
    assert!(find_rainbow(&g, TrianglePattern::Transitive).is_none());
}

#[test]
fn single_rainbow_transitive_triangle() {
    let g = from_triples(3, 3, &[(1, 0, 1), (2, 1, 2), (3, 0, 2)]);
    assert_eq!(count_rainbow(&g, TrianglePattern::Transitive), 1);
    assert!(find_rainbow(&g, TrianglePattern::Directed).is_none());
}

#[test]
fn two_colors_cannot_make_a_rainbow_triangle() {
    let mut b = GraphBuilder::new(4, 2).unwrap();
    for i in 1..=2 {
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    b.add_edge(EdgeRef::new(i, u, v)).unwrap();
                }
            }
        }
    }
    let g = b.build();
    for p in TrianglePattern::ALL {
        assert!(find_rainbow(&g, p).is_none());
    }
}

#[test]
fn malformed_edges_are_rejected() {
    let mut b = GraphBuilder::new(3, 3).unwrap();
    assert_eq!(b.add_edge(EdgeRef::new(1, 2, 2)).unwrap_err(), Error::Loop(2));
    assert!(matches!(
        b.add_edge(EdgeRef::new(4, 0, 1)),
        Err(Error::ColorOutOfRange { .. })
    ));
    assert!(matches!(
        b.add_edge(EdgeRef::new(1, 0, 3)),
        Err(Error::VertexOutOfRange { .. })
    ));
    assert!(ColoredDigraph::from_json("{\"n\":3,\"c\":3,\"edges\":[[1,0,").is_err());
    assert!(ColoredDigraph::from_json("{\"n\":3,\"c\":3,\"edges\":[[1,0,5]]}").is_err());
}
