//! Rainbow directed and transitive triangles.
//!
//! Detection scans ordered vertex triples against a precomputed table of
//! per-pair color masks, so each triple costs a constant number of mask
//! operations regardless of the color count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{ColoredDigraph, EdgeRef, GraphBuilder};

/// The forbidden rainbow pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrianglePattern {
    /// Edges `uv`, `vw`, `wu`.
    Directed,
    /// Edges `uv`, `vw`, `uw`.
    Transitive,
}

impl TrianglePattern {
    pub const ALL: [TrianglePattern; 2] = [TrianglePattern::Directed, TrianglePattern::Transitive];

    pub fn name(self) -> &'static str {
        match self {
            TrianglePattern::Directed => "directed",
            TrianglePattern::Transitive => "transitive",
        }
    }

    /// The three ordered vertex pairs of the pattern under roles `(u, v, w)`.
    pub fn edge_roles(self, u: usize, v: usize, w: usize) -> [(usize, usize); 3] {
        match self {
            TrianglePattern::Directed => [(u, v), (v, w), (w, u)],
            TrianglePattern::Transitive => [(u, v), (v, w), (u, w)],
        }
    }
}

impl fmt::Display for TrianglePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrianglePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "directed" => Ok(TrianglePattern::Directed),
            "transitive" => Ok(TrianglePattern::Transitive),
            other => Err(Error::Parse(format!("unknown pattern `{other}`"))),
        }
    }
}

/// A rainbow copy of a triangle pattern: vertex roles plus one edge per
/// pattern edge, each in a distinct color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowWitness {
    pub pattern: TrianglePattern,
    pub vertices: [usize; 3],
    #[serde(with = "edge_triples")]
    pub edges: [EdgeRef; 3],
}

mod edge_triples {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::EdgeRef;

    pub fn serialize<S: Serializer>(edges: &[EdgeRef; 3], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[usize; 3]> = edges.iter().map(|e| [e.color, e.from, e.to]).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[EdgeRef; 3], D::Error> {
        let rows = <[[usize; 3]; 3]>::deserialize(d)?;
        Ok(rows.map(|[c, f, t]| EdgeRef::new(c, f, t)))
    }
}

impl RainbowWitness {
    /// Re-checks the witness against `g` from scratch.
    pub fn is_valid_in(&self, g: &ColoredDigraph) -> bool {
        let [u, v, w] = self.vertices;
        if u == v || v == w || u == w {
            return false;
        }
        let roles = self.pattern.edge_roles(u, v, w);
        let shapes_match = self
            .edges
            .iter()
            .zip(roles.iter())
            .all(|(e, &(f, t))| e.from == f && e.to == t);
        let [a, b, c] = self.edges.map(|e| e.color);
        shapes_match && a != b && b != c && a != c && self.edges.iter().all(|e| g.has_edge(e.color, e.from, e.to))
    }
}

/// First (lexicographically least) choice of distinct colors, one from each
/// mask, as 0-based color indices.
pub(crate) fn least_distinct_choice(masks: [u64; 3]) -> Option<[usize; 3]> {
    let [a, b, c] = masks;
    let mut ra = a;
    while ra != 0 {
        let i = ra.trailing_zeros() as usize;
        ra &= ra - 1;
        let mut rb = b & !(1 << i);
        while rb != 0 {
            let j = rb.trailing_zeros() as usize;
            rb &= rb - 1;
            let rc = c & !(1 << i) & !(1 << j);
            if rc != 0 {
                return Some([i, j, rc.trailing_zeros() as usize]);
            }
        }
    }
    None
}

/// Whether three distinct colors can be chosen, one from each mask (Hall's
/// condition for three sets).
#[inline]
pub(crate) fn has_distinct_choice(masks: [u64; 3]) -> bool {
    let [a, b, c] = masks;
    a != 0
        && b != 0
        && c != 0
        && (a | b).count_ones() >= 2
        && (a | c).count_ones() >= 2
        && (b | c).count_ones() >= 2
        && (a | b | c).count_ones() >= 3
}

/// Number of ways to choose distinct colors, one from each mask.
pub(crate) fn distinct_choice_count(masks: [u64; 3]) -> u64 {
    let [a, b, c] = masks;
    let n = |m: u64| u64::from(m.count_ones());
    let total = n(a) * n(b) * n(c);
    let pair_equal = n(a & b) * n(c) + n(a & c) * n(b) + n(b & c) * n(a);
    total + 2 * n(a & b & c) - pair_equal
}

/// Per ordered pair color masks, `table[u * n + v]`.
pub(crate) fn mask_table(g: &ColoredDigraph) -> Vec<u64> {
    let n = g.n();
    let mut table = vec![0u64; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                table[u * n + v] = g.colors_from_to(u, v);
            }
        }
    }
    table
}

fn witness_at(
    pattern: TrianglePattern,
    table: &[u64],
    n: usize,
    (u, v, w): (usize, usize, usize),
) -> Option<RainbowWitness> {
    let roles = pattern.edge_roles(u, v, w);
    let masks = roles.map(|(f, t)| table[f * n + t]);
    let colors = least_distinct_choice(masks)?;
    let edges = [0, 1, 2].map(|k| EdgeRef::new(colors[k] + 1, roles[k].0, roles[k].1));
    Some(RainbowWitness {
        pattern,
        vertices: [u, v, w],
        edges,
    })
}

/// Finds the lexicographically least rainbow copy of `pattern`, ordered by
/// the vertex roles `(u, v, w)` and then by the colors of the pattern edges.
pub fn find_rainbow(g: &ColoredDigraph, pattern: TrianglePattern) -> Option<RainbowWitness> {
    let n = g.n();
    if n < 3 || g.c() < 3 {
        return None;
    }
    let table = mask_table(g);
    let search_from = |u: usize| {
        for v in 0..n {
            if v == u || table[u * n + v] == 0 {
                continue;
            }
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                if let Some(found) = witness_at(pattern, &table, n, (u, v, w)) {
                    return Some(found);
                }
            }
        }
        None
    };
    if n >= 64 {
        (0..n).into_par_iter().find_map_first(search_from)
    } else {
        (0..n).find_map(search_from)
    }
}

/// Whether `g` contains a rainbow copy of `pattern`.
pub fn contains_rainbow(g: &ColoredDigraph, pattern: TrianglePattern) -> bool {
    find_rainbow(g, pattern).is_some()
}

/// Counts rainbow copies. A directed copy is a cyclically ordered vertex
/// triple (rotations identified); a transitive copy is a role-labeled triple
/// `(source, middle, sink)`. Each valid color assignment counts separately.
pub fn count_rainbow(g: &ColoredDigraph, pattern: TrianglePattern) -> u64 {
    let n = g.n();
    if n < 3 || g.c() < 3 {
        return 0;
    }
    let table = mask_table(g);
    let per_source = |u: usize| -> u64 {
        let mut total = 0;
        for v in 0..n {
            for w in 0..n {
                if u == v || v == w || u == w {
                    continue;
                }
                // rotation representative: the cycle starts at its least vertex
                if pattern == TrianglePattern::Directed && (v < u || w < u) {
                    continue;
                }
                let masks = pattern.edge_roles(u, v, w).map(|(f, t)| table[f * n + t]);
                total += distinct_choice_count(masks);
            }
        }
        total
    };
    (0..n).into_par_iter().map(per_source).sum()
}

/// The auxiliary digraph on `V(G)` with `uv` present iff `u` and `v` are
/// joined by exactly `c + 1` edges in total and at least three of them go
/// from `u` to `v`. Returned as a one-color graph.
pub fn build_h(g: &ColoredDigraph) -> ColoredDigraph {
    let n = g.n();
    let c = g.c() as u32;
    let mut b = GraphBuilder::new(n, 1).expect("one color");
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let forward = g.colors_from_to(u, v).count_ones();
            let backward = g.colors_from_to(v, u).count_ones();
            if forward + backward == c + 1 && forward >= 3 {
                b.add_edge(EdgeRef::new(1, u, v)).expect("valid edge");
            }
        }
    }
    b.build()
}
