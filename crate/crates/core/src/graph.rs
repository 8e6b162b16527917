//! Colored directed graphs: `c` directed graphs on the common vertex set
//! `0..n`, one per color `1..=c`, plus the edge-counting primitives used by
//! every other module.
//!
//! Graphs are immutable once built. Use [`GraphBuilder`] to assemble one, or
//! [`ColoredDigraph::with_edge`] for a value-semantic single insertion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported color count. Color sets are packed into `u64` masks.
pub const MAX_COLORS: usize = 64;

/// An edge `from -> to` in color `color` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub color: usize,
    pub from: usize,
    pub to: usize,
}

impl EdgeRef {
    pub fn new(color: usize, from: usize, to: usize) -> Self {
        EdgeRef { color, from, to }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} (color {})", self.from, self.to, self.color)
    }
}

/// Two vertex sets `U` and `V`; they may overlap.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSetPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl VertexSetPair {
    pub fn new(left: impl Into<Vec<usize>>, right: impl Into<Vec<usize>>) -> Self {
        VertexSetPair {
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn singletons(u: usize, v: usize) -> Self {
        VertexSetPair::new(vec![u], vec![v])
    }
}

/// How a pair of vertices is connected within one color layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    None,
    /// A single edge from the first vertex of the pair to the second.
    Forward,
    /// A single edge from the second vertex of the pair to the first.
    Backward,
    Double,
}

impl Multiplicity {
    pub fn edges(self) -> u32 {
        match self {
            Multiplicity::None => 0,
            Multiplicity::Forward | Multiplicity::Backward => 1,
            Multiplicity::Double => 2,
        }
    }
}

/// Per-color multiplicities of an ordered vertex pair `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairProfile {
    pub u: usize,
    pub v: usize,
    pub colors: Vec<Multiplicity>,
}

impl PairProfile {
    /// Multiplicity in color `i` (1-based).
    pub fn color(&self, i: usize) -> Multiplicity {
        self.colors[i - 1]
    }

    pub fn total(&self) -> u32 {
        self.colors.iter().map(|m| m.edges()).sum()
    }

    /// Edge counts per color, e.g. `[2, 2, 0]`.
    pub fn counts(&self) -> Vec<u32> {
        self.colors.iter().map(|m| m.edges()).collect()
    }

    pub fn has_double(&self) -> bool {
        self.colors.contains(&Multiplicity::Double)
    }
}

/// A sequence `(G_1, ..., G_c)` of directed graphs on the vertex set `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    c: usize,
    /// One `n * n` bit matrix per color, row-major by source vertex.
    layers: Vec<Vec<u64>>,
}

fn words_for(n: usize) -> usize {
    (n * n).div_ceil(64)
}

impl ColoredDigraph {
    /// The graph with no edges.
    pub fn empty(n: usize, c: usize) -> Result<Self> {
        if c > MAX_COLORS {
            return Err(Error::TooManyColors {
                got: c,
                max: MAX_COLORS,
            });
        }
        Ok(ColoredDigraph {
            n,
            c,
            layers: vec![vec![0; words_for(n)]; c],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.c
    }

    fn check_edge(&self, e: &EdgeRef) -> Result<()> {
        if e.color == 0 || e.color > self.c {
            return Err(Error::ColorOutOfRange {
                color: e.color,
                c: self.c,
            });
        }
        self.check_vertex(e.from)?;
        self.check_vertex(e.to)?;
        if e.from == e.to {
            return Err(Error::Loop(e.from));
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_color(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.c {
            Err(Error::ColorOutOfRange { color: i, c: self.c })
        } else {
            Ok(())
        }
    }

    fn set(&mut self, color: usize, from: usize, to: usize) {
        let bit = from * self.n + to;
        self.layers[color - 1][bit / 64] |= 1 << (bit % 64);
    }

    /// Whether `from -> to` is present in color `color`. Out-of-range
    /// arguments and loops simply report `false`.
    pub fn has_edge(&self, color: usize, from: usize, to: usize) -> bool {
        if color == 0 || color > self.c || from >= self.n || to >= self.n {
            return false;
        }
        let bit = from * self.n + to;
        self.layers[color - 1][bit / 64] >> (bit % 64) & 1 == 1
    }

    /// Returns a copy of the graph with `e` inserted. Inserting an edge that
    /// is already present returns an identical graph.
    pub fn with_edge(&self, e: EdgeRef) -> Result<Self> {
        self.check_edge(&e)?;
        let mut g = self.clone();
        g.set(e.color, e.from, e.to);
        Ok(g)
    }

    /// Bit mask of the colors `i` with `from -> to` in `G_i` (bit `i - 1`).
    pub fn colors_from_to(&self, from: usize, to: usize) -> u64 {
        let bit = from * self.n + to;
        let (w, s) = (bit / 64, bit % 64);
        let mut mask = 0u64;
        for (i, layer) in self.layers.iter().enumerate() {
            mask |= (layer[w] >> s & 1) << i;
        }
        mask
    }

    /// `e(G_i)`, the number of edges in color `i`.
    pub fn count_color(&self, i: usize) -> Result<u64> {
        self.check_color(i)?;
        Ok(self.layers[i - 1].iter().map(|w| u64::from(w.count_ones())).sum())
    }

    /// Per-color edge counts `[e(G_1), ..., e(G_c)]`.
    pub fn color_counts(&self) -> Vec<u64> {
        (1..=self.c)
            .map(|i| self.count_color(i).expect("color in range"))
            .collect()
    }

    /// `e(G)`, the number of edges over all colors.
    pub fn total_edges(&self) -> u64 {
        self.color_counts().iter().sum()
    }

    /// `e_i(U, V)`: edges of color `i` between `U` and `V` in either
    /// direction. Every ordered pair is counted at most once, so pairs inside
    /// `U ∩ V` contribute once per direction.
    pub fn count_between(&self, i: usize, sets: &VertexSetPair) -> Result<u64> {
        self.check_color(i)?;
        let mut in_left = vec![false; self.n];
        let mut in_right = vec![false; self.n];
        for &v in &sets.left {
            self.check_vertex(v)?;
            in_left[v] = true;
        }
        for &v in &sets.right {
            self.check_vertex(v)?;
            in_right[v] = true;
        }
        let mut count = 0;
        for x in 0..self.n {
            if !in_left[x] && !in_right[x] {
                continue;
            }
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let linked = (in_left[x] && in_right[y]) || (in_right[x] && in_left[y]);
                if linked && self.has_edge(i, x, y) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Per-color connection of the pair `(u, v)`.
    pub fn classify_pair(&self, u: usize, v: usize) -> Result<PairProfile> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        let colors = (1..=self.c)
            .map(|i| match (self.has_edge(i, u, v), self.has_edge(i, v, u)) {
                (false, false) => Multiplicity::None,
                (true, false) => Multiplicity::Forward,
                (false, true) => Multiplicity::Backward,
                (true, true) => Multiplicity::Double,
            })
            .collect();
        Ok(PairProfile { u, v, colors })
    }

    /// True iff no color layer contains a double edge.
    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|u| ((u + 1)..self.n).all(|v| self.colors_from_to(u, v) & self.colors_from_to(v, u) == 0))
    }

    /// The subgraph induced on `subset`, relabeled `0..k` in ascending vertex
    /// order. Duplicates in `subset` are ignored.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        let mut verts: Vec<usize> = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        let mut g = ColoredDigraph::empty(verts.len(), self.c)?;
        for (a, &x) in verts.iter().enumerate() {
            for (b, &y) in verts.iter().enumerate() {
                if a == b {
                    continue;
                }
                for i in 1..=self.c {
                    if self.has_edge(i, x, y) {
                        g.set(i, a, b);
                    }
                }
            }
        }
        Ok(g)
    }

    /// All edges sorted by `(color, from, to)`.
    pub fn edges(&self) -> Vec<EdgeRef> {
        let mut out = Vec::new();
        for i in 1..=self.c {
            for from in 0..self.n {
                for to in 0..self.n {
                    if self.has_edge(i, from, to) {
                        out.push(EdgeRef::new(i, from, to));
                    }
                }
            }
        }
        out
    }

    /// Canonical JSON form: edges deduplicated and sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        ColoredDigraph::try_from(doc)
    }
}

impl fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredDigraph")
            .field("n", &self.n)
            .field("c", &self.c)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Interchange form `{"n": .., "c": .., "edges": [[color, from, to], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub c: usize,
    pub edges: Vec<[usize; 3]>,
}

impl From<&ColoredDigraph> for GraphDoc {
    fn from(g: &ColoredDigraph) -> Self {
        GraphDoc {
            n: g.n,
            c: g.c,
            edges: g.edges().iter().map(|e| [e.color, e.from, e.to]).collect(),
        }
    }
}

impl TryFrom<GraphDoc> for ColoredDigraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        let mut b = GraphBuilder::new(doc.n, doc.c)?;
        for [color, from, to] in doc.edges {
            b.add_edge(EdgeRef::new(color, from, to))?;
        }
        Ok(b.build())
    }
}

impl Serialize for ColoredDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        ColoredDigraph::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// Single-owner builder for [`ColoredDigraph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    graph: ColoredDigraph,
}

impl GraphBuilder {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        Ok(GraphBuilder {
            graph: ColoredDigraph::empty(n, c)?,
        })
    }

    /// Inserts `e`; idempotent.
    pub fn add_edge(&mut self, e: EdgeRef) -> Result<&mut Self> {
        self.graph.check_edge(&e)?;
        self.graph.set(e.color, e.from, e.to);
        Ok(self)
    }

    /// Inserts both `u -> v` and `v -> u` in color `color`.
    pub fn add_double(&mut self, color: usize, u: usize, v: usize) -> Result<&mut Self> {
        self.add_edge(EdgeRef::new(color, u, v))?;
        self.add_edge(EdgeRef::new(color, v, u))
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn c(&self) -> usize {
        self.graph.c
    }

    pub fn build(self) -> ColoredDigraph {
        self.graph
    }
}
