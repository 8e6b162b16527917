//! Local edge-count bounds re-derived by exhaustive enumeration.
//!
//! A [`Scenario`] is a handful of labeled vertices with some edges fixed and
//! the rest free, a list of structural [`Constraint`]s, and an objective
//! counting free edges of chosen colors between two vertex groups.
//! [`enumerate_max`] computes the exact maximum of the objective over all
//! completions that satisfy the constraints; [`run_catalogue`] evaluates a
//! list of scenarios against their claimed bounds.
//!
//! Vertex pairs may be tagged with a [`PairType`] describing how the two
//! vertices of a matched pair are joined (double edges in two colors, four
//! edges, three edges). Each scenario lists the admissible joint type
//! assignments in `type_options`; every option may carry extra constraints
//! that only hold under that assignment.

mod catalogue;
mod engine;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredDigraph, GraphDoc};
use crate::patterns::TrianglePattern;

pub use catalogue::{builtin_catalogue, CatalogueId, TABLE_COLUMNS, TABLE_VALUES};
pub use engine::{enumerate_max, Enumeration};

/// Most vertices a scenario may have.
pub const MAX_SCENARIO_VERTICES: usize = 6;
/// Most colors a scenario may use.
pub const MAX_SCENARIO_COLORS: usize = 5;

/// How the two vertices of a matched pair are joined (three colors).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairType {
    /// Double edges in colors `i` and `j`; the third color has at most a
    /// single edge.
    X(u8, u8),
    /// Double edge in color `i` and a single edge in each other color.
    Y(u8),
    /// Double edge in color `i` and a single edge in exactly one other color.
    Z(u8),
    /// A lone vertex outside every matching.
    R,
}

impl PairType {
    pub fn is_pair(self) -> bool {
        self != PairType::R
    }

    /// Whether the intra-pair profile (`fwd`: first -> second colors, `bwd`:
    /// second -> first colors, bit `i - 1` for color `i`) has this type.
    pub fn admits(self, fwd: u64, bwd: u64) -> bool {
        let double = fwd & bwd;
        let single = (fwd ^ bwd) & 0b111;
        let bit = |i: u8| 1u64 << (i - 1);
        match self {
            PairType::X(i, j) => double == bit(i) | bit(j),
            PairType::Y(i) => double == bit(i) && single == 0b111 & !bit(i),
            PairType::Z(i) => double == bit(i) && single.count_ones() == 1 && single & bit(i) == 0,
            PairType::R => fwd == 0 && bwd == 0,
        }
    }

    /// The color whose double edge every pair of this type carries, besides
    /// `X` types which carry two.
    pub fn double_colors(self) -> Vec<u8> {
        match self {
            PairType::X(i, j) => vec![i, j],
            PairType::Y(i) | PairType::Z(i) => vec![i],
            PairType::R => vec![],
        }
    }

    /// Single-letter class: `X`, `Y`, `Z` or `R`.
    pub fn class(self) -> char {
        match self {
            PairType::X(..) => 'X',
            PairType::Y(_) => 'Y',
            PairType::Z(_) => 'Z',
            PairType::R => 'R',
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairType::X(i, j) => write!(f, "X{i}{j}"),
            PairType::Y(i) => write!(f, "Y{i}"),
            PairType::Z(i) => write!(f, "Z{i}"),
            PairType::R => write!(f, "R"),
        }
    }
}

impl FromStr for PairType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown pair type `{s}`"));
        let digit = |ch: char| -> Result<u8> {
            match ch.to_digit(10) {
                Some(d @ 1..=3) => Ok(d as u8),
                _ => Err(bad()),
            }
        };
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest: Vec<char> = chars.collect();
        match (kind, rest.as_slice()) {
            ('R', []) => Ok(PairType::R),
            ('X', [a, b]) => {
                let (i, j) = (digit(*a)?, digit(*b)?);
                if i < j {
                    Ok(PairType::X(i, j))
                } else {
                    Err(bad())
                }
            }
            ('Y', [a]) => Ok(PairType::Y(digit(*a)?)),
            ('Z', [a]) => Ok(PairType::Z(digit(*a)?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for PairType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PairType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A relation between two vertices, judged on all edges between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    /// Double edges in at least two colors.
    DoubleInTwoColors,
    /// A double edge in some color and at least one edge in another color.
    DoubleAndOther,
    /// At least this many edges in total.
    EdgesAtLeast(u32),
}

impl PairRelation {
    pub fn holds(self, uv: u64, vu: u64) -> bool {
        let double = uv & vu;
        match self {
            PairRelation::DoubleInTwoColors => double.count_ones() >= 2,
            PairRelation::DoubleAndOther => double != 0 && (uv | vu).count_ones() >= 2,
            PairRelation::EdgesAtLeast(k) => uv.count_ones() + vu.count_ones() >= k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cmp {
    Ge,
    Le,
    Eq,
}

impl Cmp {
    pub fn test(self, lhs: u32, rhs: u32) -> bool {
        match self {
            Cmp::Ge => lhs >= rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Eq => lhs == rhs,
        }
    }
}

/// A structural rule every admissible completion must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// No rainbow copy of the pattern on any three scenario vertices.
    NoRainbow {
        pattern: TrianglePattern,
    },
    /// No double edge in any color.
    Oriented,
    /// No two distinct vertices of `within` satisfy `relation`.
    Forbid {
        relation: PairRelation,
        within: Vec<usize>,
    },
    /// `vertex` satisfies `relation` with at most one vertex of `pair`.
    AtMostOnePartner {
        vertex: usize,
        pair: [usize; 2],
        relation: PairRelation,
    },
    /// Compares an edge count with `value`. With `directed`, counts edges
    /// from `from` to `to`; otherwise edges between the sets in both
    /// directions. `colors` defaults to all colors.
    EdgeCount {
        from: Vec<usize>,
        to: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        colors: Option<Vec<usize>>,
        #[serde(default)]
        directed: bool,
        cmp: Cmp,
        value: u32,
    },
    /// No vertices `a, b, d` with at least 3 edges `a -> b` and at least 3
    /// edges `b -> d` (over all colors).
    NoThickPath,
    Any {
        of: Vec<Constraint>,
    },
    All {
        of: Vec<Constraint>,
    },
    Not {
        of: Box<Constraint>,
    },
}

/// Read access to per-ordered-pair color masks.
pub(crate) trait MaskView {
    fn colors(&self, u: usize, v: usize) -> u64;
}

impl MaskView for ColoredDigraph {
    fn colors(&self, u: usize, v: usize) -> u64 {
        self.colors_from_to(u, v)
    }
}

fn color_mask(colors: &Option<Vec<usize>>, c: usize) -> u64 {
    match colors {
        Some(list) => list.iter().fold(0, |m, &i| m | 1 << (i - 1)),
        None => (1u64 << c) - 1,
    }
}

pub(crate) fn count_edges<V: MaskView>(view: &V, from: &[usize], to: &[usize], mask: u64, directed: bool) -> u32 {
    let mut total = 0;
    let mut seen = Vec::new();
    let mut add = |x: usize, y: usize| {
        if x != y && !seen.contains(&(x, y)) {
            seen.push((x, y));
            total += (view.colors(x, y) & mask).count_ones();
        }
    };
    for &x in from {
        for &y in to {
            add(x, y);
            if !directed {
                add(y, x);
            }
        }
    }
    total
}

impl Constraint {
    /// Evaluates the constraint on a complete assignment over `n` vertices
    /// and `c` colors.
    pub(crate) fn holds<V: MaskView>(&self, view: &V, n: usize, c: usize) -> bool {
        use crate::patterns::has_distinct_choice;
        match self {
            Constraint::NoRainbow { pattern } => {
                for u in 0..n {
                    for v in 0..n {
                        for w in 0..n {
                            if u == v || v == w || u == w {
                                continue;
                            }
                            let masks = pattern.edge_roles(u, v, w).map(|(f, t)| view.colors(f, t));
                            if has_distinct_choice(masks) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            Constraint::Oriented => (0..n).all(|u| ((u + 1)..n).all(|v| view.colors(u, v) & view.colors(v, u) == 0)),
            Constraint::Forbid { relation, within } => within.iter().all(|&u| {
                within
                    .iter()
                    .all(|&v| u >= v || !relation.holds(view.colors(u, v), view.colors(v, u)))
            }),
            Constraint::AtMostOnePartner { vertex, pair, relation } => {
                pair.iter()
                    .filter(|&&p| relation.holds(view.colors(*vertex, p), view.colors(p, *vertex)))
                    .count()
                    <= 1
            }
            Constraint::EdgeCount {
                from,
                to,
                colors,
                directed,
                cmp,
                value,
            } => cmp.test(count_edges(view, from, to, color_mask(colors, c), *directed), *value),
            Constraint::NoThickPath => {
                let heavy = |a: usize, b: usize| a != b && view.colors(a, b).count_ones() >= 3;
                !(0..n).any(|b| (0..n).any(|a| heavy(a, b) && (0..n).any(|d| d != a && heavy(b, d))))
            }
            Constraint::Any { of } => of.iter().any(|k| k.holds(view, n, c)),
            Constraint::All { of } => of.iter().all(|k| k.holds(view, n, c)),
            Constraint::Not { of } => !of.holds(view, n, c),
        }
    }

    /// Unordered vertex pairs `(a, b)`, `a < b`, whose edges the constraint
    /// reads; `None` for constraints over all triples.
    pub(crate) fn scope(&self) -> Option<Vec<(usize, usize)>> {
        let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let mut out = Vec::new();
        match self {
            Constraint::NoRainbow { .. } | Constraint::Oriented | Constraint::NoThickPath => return None,
            Constraint::Forbid { within, .. } => {
                for &u in within {
                    for &v in within {
                        if u < v {
                            out.push((u, v));
                        }
                    }
                }
            }
            Constraint::AtMostOnePartner { vertex, pair, .. } => {
                for &p in pair {
                    if p != *vertex {
                        out.push(norm(*vertex, p));
                    }
                }
            }
            Constraint::EdgeCount { from, to, .. } => {
                for &x in from {
                    for &y in to {
                        if x != y {
                            out.push(norm(x, y));
                        }
                    }
                }
            }
            Constraint::Any { of } | Constraint::All { of } => {
                for k in of {
                    out.extend(k.scope()?);
                }
            }
            Constraint::Not { of } => out.extend(of.scope()?),
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }
}

/// Tri-state edge in a scenario: fixed present, fixed absent, or (when not
/// listed) free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeState {
    Present,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedEdge {
    pub color: usize,
    pub from: usize,
    pub to: usize,
    pub state: EdgeState,
}

/// Vertices forming one matched pair (two vertices, in order) or one lone
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub vertices: Vec<usize>,
}

/// One admissible type assignment for the scenario's groups, with the
/// constraints that follow from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeOption {
    pub types: Vec<PairType>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
}

/// Edges of `colors` between `left` and `right` (both directions). With
/// `h_edge_at = Some(k)`, a count of at least `k` is reduced by one: such a
/// pair-vertex incidence is an edge of the auxiliary bipartite-Mantel graph,
/// whose contribution is accounted for separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioObjective {
    pub colors: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_edge_at: Option<u32>,
}

/// A claimed upper bound `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBound {
    pub num: i64,
    pub den: i64,
}

impl RationalBound {
    pub fn new(num: i64, den: i64) -> Self {
        RationalBound { num, den }
    }

    pub fn integer(k: i64) -> Self {
        RationalBound::new(k, 1)
    }

    pub fn floor(self) -> i64 {
        self.num.div_euclid(self.den)
    }

    /// Exact `value <= num / den`.
    pub fn admits(self, value: i64) -> bool {
        value * self.den <= self.num
    }
}

impl fmt::Display for RationalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn default_colors() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub source: String,
    #[serde(default = "default_colors")]
    pub colors: usize,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<Group>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub type_options: Vec<TypeOption>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixed_edges: Vec<FixedEdge>,
    pub constraints: Vec<Constraint>,
    pub objective: ScenarioObjective,
    pub bound: RationalBound,
}

impl Scenario {
    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::MalformedScenario {
            id: self.id.clone(),
            reason: reason.into(),
        }
    }

    /// Checks every index, color and type reference.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let c = self.colors;
        if n > MAX_SCENARIO_VERTICES {
            return Err(self.malformed(format!("more than {MAX_SCENARIO_VERTICES} vertices")));
        }
        if c == 0 || c > MAX_SCENARIO_COLORS {
            return Err(self.malformed(format!("colors must be in 1..={MAX_SCENARIO_COLORS}")));
        }
        if self.bound.den <= 0 {
            return Err(self.malformed("bound denominator must be positive"));
        }
        let vertex_ok = |v: usize| v < n;
        let color_ok = |i: usize| (1..=c).contains(&i);
        let mut used = vec![false; n];
        for g in &self.groups {
            if g.vertices.is_empty() || g.vertices.len() > 2 {
                return Err(self.malformed("groups hold one or two vertices"));
            }
            for &v in &g.vertices {
                if !vertex_ok(v) || used[v] {
                    return Err(self.malformed(format!("group vertex {v} invalid or reused")));
                }
                used[v] = true;
            }
        }
        if !self.groups.is_empty() && self.type_options.is_empty() {
            return Err(self.malformed("groups need at least one type option"));
        }
        for opt in &self.type_options {
            if opt.types.len() != self.groups.len() {
                return Err(self.malformed("type option length differs from group count"));
            }
            if c != 3 && opt.types.iter().any(|t| t.is_pair()) {
                return Err(self.malformed("pair types are defined for three colors"));
            }
            for (t, g) in opt.types.iter().zip(&self.groups) {
                if t.is_pair() != (g.vertices.len() == 2) {
                    return Err(self.malformed(format!("type {t} does not fit a group of size {}", g.vertices.len())));
                }
            }
            for k in &opt.constraints {
                self.validate_constraint(k)?;
            }
        }
        for e in &self.fixed_edges {
            if !color_ok(e.color) || !vertex_ok(e.from) || !vertex_ok(e.to) || e.from == e.to {
                return Err(self.malformed(format!("bad fixed edge {:?}", e)));
            }
        }
        for k in &self.constraints {
            self.validate_constraint(k)?;
        }
        let o = &self.objective;
        if o.colors.is_empty() || !o.colors.iter().all(|&i| color_ok(i)) {
            return Err(self.malformed("objective colors out of range"));
        }
        if !o.left.iter().chain(&o.right).all(|&v| vertex_ok(v)) {
            return Err(self.malformed("objective vertex out of range"));
        }
        Ok(())
    }

    fn validate_constraint(&self, k: &Constraint) -> Result<()> {
        let n = self.vertices.len();
        let c = self.colors;
        let vs_ok = |vs: &[usize]| vs.iter().all(|&v| v < n);
        let ok = match k {
            Constraint::NoRainbow { .. } | Constraint::Oriented | Constraint::NoThickPath => true,
            Constraint::Forbid { within, .. } => vs_ok(within),
            Constraint::AtMostOnePartner { vertex, pair, .. } => *vertex < n && vs_ok(pair),
            Constraint::EdgeCount { from, to, colors, .. } => {
                vs_ok(from)
                    && vs_ok(to)
                    && colors
                        .as_ref()
                        .is_none_or(|cs| cs.iter().all(|&i| (1..=c).contains(&i)))
            }
            Constraint::Any { of } | Constraint::All { of } => {
                for sub in of {
                    self.validate_constraint(sub)?;
                }
                true
            }
            Constraint::Not { of } => {
                self.validate_constraint(of)?;
                true
            }
        };
        if ok {
            Ok(())
        } else {
            Err(self.malformed(format!("constraint references an unknown vertex or color: {k:?}")))
        }
    }

    /// The objective mask over colors.
    pub(crate) fn objective_mask(&self) -> u64 {
        self.objective.colors.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    /// Objective value of a complete assignment, before any H-edge discount.
    pub(crate) fn raw_objective<V: MaskView>(&self, view: &V) -> u32 {
        count_edges(
            view,
            &self.objective.left,
            &self.objective.right,
            self.objective_mask(),
            false,
        )
    }

    pub(crate) fn discounted(&self, raw: u32) -> u32 {
        match self.objective.h_edge_at {
            Some(k) if raw >= k => raw - 1,
            _ => raw,
        }
    }

    /// Objective of `g` under type option `option`, or `None` when `g`
    /// violates a fixed edge, a group type, or a constraint. Pattern
    /// constraints go through the graph-level detector.
    pub fn evaluate_graph(&self, g: &ColoredDigraph, option: Option<&TypeOption>) -> Option<u32> {
        let n = self.vertices.len();
        if g.n() != n || g.c() != self.colors {
            return None;
        }
        for e in &self.fixed_edges {
            if g.has_edge(e.color, e.from, e.to) != (e.state == EdgeState::Present) {
                return None;
            }
        }
        if let Some(opt) = option {
            for (t, grp) in opt.types.iter().zip(&self.groups) {
                if let [a, b] = grp.vertices[..] {
                    if !t.admits(g.colors_from_to(a, b), g.colors_from_to(b, a)) {
                        return None;
                    }
                }
            }
        }
        let extra = option.map(|o| o.constraints.as_slice()).unwrap_or(&[]);
        for k in self.constraints.iter().chain(extra) {
            let ok = match k {
                Constraint::NoRainbow { pattern } => crate::patterns::find_rainbow(g, *pattern).is_none(),
                other => other.holds(g, n, self.colors),
            };
            if !ok {
                return None;
            }
        }
        Some(self.discounted(self.raw_objective(g)))
    }

    /// Number of free (color, ordered pair) slots before type filtering.
    pub fn free_slots(&self) -> usize {
        let n = self.vertices.len();
        n * n.saturating_sub(1) * self.colors - self.fixed_edges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    /// Computed maximum strictly below the integer part of the bound.
    Verified,
    /// Computed maximum equals the integer part of the bound.
    Tight,
    Violated,
    /// No completion satisfies the constraints.
    Infeasible,
}

impl BoundStatus {
    pub fn derive(max: Option<u32>, bound: RationalBound) -> Self {
        match max {
            None => BoundStatus::Infeasible,
            Some(m) if !bound.admits(m as i64) => BoundStatus::Violated,
            Some(m) if m as i64 == bound.floor() => BoundStatus::Tight,
            Some(_) => BoundStatus::Verified,
        }
    }
}

/// Evaluation of one catalogue entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub id: String,
    pub source: String,
    pub bound: RationalBound,
    pub computed_max: Option<u32>,
    pub status: BoundStatus,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<EntryWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryWitness {
    pub types: Vec<PairType>,
    pub graph: GraphDoc,
}

pub fn evaluate(s: &Scenario) -> Result<BoundEntry> {
    let found = enumerate_max(s)?;
    let computed_max = found.max;
    Ok(BoundEntry {
        id: s.id.clone(),
        source: s.source.clone(),
        bound: s.bound,
        computed_max,
        status: BoundStatus::derive(computed_max, s.bound),
        nodes: found.nodes,
        witness: found.witness.map(|(types, g)| EntryWitness {
            types,
            graph: GraphDoc::from(&g),
        }),
    })
}

/// Evaluates every entry in parallel; order follows the input.
pub fn run_catalogue(entries: &[Scenario]) -> Result<Vec<BoundEntry>> {
    entries.par_iter().map(evaluate).collect()
}

/// True iff no entry is violated or infeasible.
pub fn catalogue_passes(results: &[BoundEntry]) -> bool {
    results
        .iter()
        .all(|e| matches!(e.status, BoundStatus::Verified | BoundStatus::Tight))
}

pub fn parse_catalogue(text: &str) -> Result<Vec<Scenario>> {
    let entries: Vec<Scenario> = serde_json::from_str(text)?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

pub fn catalogue_to_json(entries: &[Scenario]) -> String {
    let mut text = serde_json::to_string_pretty(entries).expect("scenarios serialize");
    text.push('\n');
    text
}
