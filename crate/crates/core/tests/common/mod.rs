#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtlab::search::{GraphClass, Objective};
use rtlab::{ColoredDigraph, EdgeRef, GraphBuilder, TrianglePattern};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every (color, from, to) slot present independently with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, c: usize, p: f64) -> ColoredDigraph {
    let mut b = GraphBuilder::new(n, c).unwrap();
    for color in 1..=c {
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    b.add_edge(EdgeRef::new(color, u, v)).unwrap();
                }
            }
        }
    }
    b.build()
}

pub fn from_triples(n: usize, c: usize, edges: &[(usize, usize, usize)]) -> ColoredDigraph {
    let mut b = GraphBuilder::new(n, c).unwrap();
    for &(color, from, to) in edges {
        b.add_edge(EdgeRef::new(color, from, to)).unwrap();
    }
    b.build()
}

fn pattern_pairs(p: TrianglePattern, u: usize, v: usize, w: usize) -> [(usize, usize); 3] {
    match p {
        TrianglePattern::Directed => [(u, v), (v, w), (w, u)],
        TrianglePattern::Transitive => [(u, v), (v, w), (u, w)],
    }
}

/// Rainbow copies by definition: ordered vertex triples times distinct
/// color triples, using only `has_edge`.
pub fn brute_rainbow_count(g: &ColoredDigraph, p: TrianglePattern) -> u64 {
    let (n, c) = (g.n(), g.c());
    let mut total = 0;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u == v || v == w || u == w {
                    continue;
                }
                let [e1, e2, e3] = pattern_pairs(p, u, v, w);
                for a in 1..=c {
                    for b in 1..=c {
                        for d in 1..=c {
                            if a != b
                                && b != d
                                && a != d
                                && g.has_edge(a, e1.0, e1.1)
                                && g.has_edge(b, e2.0, e2.1)
                                && g.has_edge(d, e3.0, e3.1)
                            {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // a directed triangle is seen once per rotation
    match p {
        TrianglePattern::Directed => total / 3,
        TrianglePattern::Transitive => total,
    }
}

pub fn brute_has_rainbow(g: &ColoredDigraph, p: TrianglePattern) -> bool {
    brute_rainbow_count(g, p) > 0
}

// optimum for n = 3, c = 3, frozen after full enumeration of all 2^18 graphs
pub const GOLDEN_N3_C3: [(TrianglePattern, GraphClass, Objective, u64); 8] = [
    (TrianglePattern::Directed, GraphClass::Digraph, Objective::MaxTotal, 12),
    (TrianglePattern::Directed, GraphClass::Digraph, Objective::MaxMin, 4),
    (TrianglePattern::Directed, GraphClass::Oriented, Objective::MaxTotal, 9),
    (TrianglePattern::Directed, GraphClass::Oriented, Objective::MaxMin, 3),
    (
        TrianglePattern::Transitive,
        GraphClass::Digraph,
        Objective::MaxTotal,
        12,
    ),
    (TrianglePattern::Transitive, GraphClass::Digraph, Objective::MaxMin, 4),
    (
        TrianglePattern::Transitive,
        GraphClass::Oriented,
        Objective::MaxTotal,
        9,
    ),
    (TrianglePattern::Transitive, GraphClass::Oriented, Objective::MaxMin, 3),
];

const N: usize = 3;
const C: usize = 3;
const PAIRS: [(usize, usize); 6] = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)];

fn slot(color: usize, u: usize, v: usize) -> usize {
    let p = PAIRS.iter().position(|&q| q == (u, v)).unwrap();
    color * PAIRS.len() + p
}

fn present(bits: u32, color: usize, u: usize, v: usize) -> bool {
    bits >> slot(color, u, v) & 1 == 1
}

fn has_rainbow(bits: u32, pattern: TrianglePattern) -> bool {
    for u in 0..N {
        for v in 0..N {
            for w in 0..N {
                if u == v || v == w || u == w {
                    continue;
                }
                let third = match pattern {
                    TrianglePattern::Directed => (w, u),
                    TrianglePattern::Transitive => (u, w),
                };
                for a in 0..C {
                    for b in 0..C {
                        for d in 0..C {
                            if a != b
                                && b != d
                                && a != d
                                && present(bits, a, u, v)
                                && present(bits, b, v, w)
                                && present(bits, d, third.0, third.1)
                            {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

fn oriented(bits: u32) -> bool {
    (0..C).all(|i| {
        PAIRS
            .iter()
            .all(|&(u, v)| !(present(bits, i, u, v) && present(bits, i, v, u)))
    })
}

/// Full enumeration of every 3-colored digraph on 3 vertices.
pub fn search_oracle(pattern: TrianglePattern, class: GraphClass, objective: Objective) -> u64 {
    let mut best = 0;
    for bits in 0u32..(1 << 18) {
        if class == GraphClass::Oriented && !oriented(bits) {
            continue;
        }
        let counts: Vec<u64> = (0..C).map(|i| (bits >> (i * 6) & 0x3f).count_ones() as u64).collect();
        let value = match objective {
            Objective::MaxTotal => counts.iter().sum(),
            Objective::MaxMin => *counts.iter().min().unwrap(),
        };
        if value > best && !has_rainbow(bits, pattern) {
            best = value;
        }
    }
    best
}

/// Every labeled graph on `a + b` vertices, no pruning.
pub fn unpruned_lemma21(a: usize, b: usize) -> u64 {
    let n = a + b;
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let mut triangles = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                let sides = [x < a, y < a, z < a];
                let mixed = sides.iter().any(|&s| s) && sides.iter().any(|&s| !s);
                if mixed {
                    triangles.push((1u64 << index(x, y)) | (1 << index(x, z)) | (1 << index(y, z)));
                }
            }
        }
    }
    let mut best = 0;
    for g in 0u64..(1 << pairs.len()) {
        if triangles.iter().all(|&t| g & t != t) {
            best = best.max(g.count_ones() as u64);
        }
    }
    best
}
