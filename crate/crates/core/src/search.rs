//! Exact extremal values at small `n` by depth-first search over vertex
//! pairs.
//!
//! Each unordered pair `{a, b}` is assigned a joint profile over all colors
//! (forward colors, backward colors). Triples are checked for the forbidden
//! rainbow pattern as soon as their last pair is assigned. The first pair is
//! restricted to one representative per color permutation, since both
//! objectives and pattern-freeness are invariant under recoloring.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredDigraph, EdgeRef, GraphBuilder};
use crate::patterns::{find_rainbow, has_distinct_choice, TrianglePattern};

/// Largest color count the search accepts (4^c profiles per pair).
pub const MAX_SEARCH_COLORS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Digraph,
    /// No double edge within any color layer.
    Oriented,
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "digraph" => Ok(GraphClass::Digraph),
            "oriented" => Ok(GraphClass::Oriented),
            other => Err(Error::Parse(format!("unknown graph class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Maximize `Σ_i e(G_i)`.
    MaxTotal,
    /// Maximize `min_i e(G_i)`.
    MaxMin,
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "max-total" => Ok(Objective::MaxTotal),
            "max-min" => Ok(Objective::MaxMin),
            other => Err(Error::Parse(format!("unknown objective `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub n: usize,
    pub c: usize,
    pub pattern: TrianglePattern,
    pub class: GraphClass,
    pub objective: Objective,
}

impl SearchProblem {
    pub fn new(n: usize, c: usize, pattern: TrianglePattern, class: GraphClass, objective: Objective) -> Self {
        SearchProblem {
            n,
            c,
            pattern,
            class,
            objective,
        }
    }

    pub fn objective_value(&self, g: &ColoredDigraph) -> u64 {
        let counts = g.color_counts();
        match self.objective {
            Objective::MaxTotal => counts.iter().sum(),
            Objective::MaxMin => counts.iter().copied().min().unwrap_or(0),
        }
    }
}

impl fmt::Display for SearchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} c={} pattern={} class={:?} objective={:?}",
            self.n, self.c, self.pattern, self.class, self.objective
        )
    }
}

/// Node limit for a search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    pub fn unlimited() -> Self {
        Budget { max_nodes: u64::MAX }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(2_000_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub problem: SearchProblem,
    pub optimum: u64,
    pub witness: ColoredDigraph,
    pub explored: u64,
    /// True iff the search space was exhausted, so `optimum` is exact.
    pub exhaustive: bool,
}

/// Outcome of checking a claimed extremal graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub pattern_free: bool,
    pub class_ok: bool,
    pub objective: u64,
}

impl WitnessCheck {
    pub fn holds(&self, claimed: u64) -> bool {
        self.pattern_free && self.class_ok && self.objective == claimed
    }
}

/// Checks that `g` is free of the problem's pattern, belongs to its class,
/// and reports its objective value.
pub fn verify_witness(p: &SearchProblem, g: &ColoredDigraph) -> Result<WitnessCheck> {
    if g.n() != p.n || g.c() != p.c {
        return Err(Error::DimensionMismatch {
            expected_n: p.n,
            expected_c: p.c,
            n: g.n(),
            c: g.c(),
        });
    }
    Ok(WitnessCheck {
        pattern_free: find_rainbow(g, p.pattern).is_none(),
        class_ok: p.class == GraphClass::Digraph || g.is_oriented(),
        objective: p.objective_value(g),
    })
}

#[derive(Debug, Clone, Copy)]
struct Profile {
    fwd: u64,
    bwd: u64,
    total: u32,
}

struct Engine {
    n: usize,
    c: usize,
    pattern: TrianglePattern,
    pairs: Vec<(usize, usize)>,
    pair_slot: Vec<usize>,
    /// Triples whose last pair (in assignment order) is the given step.
    closing: Vec<Vec<[usize; 3]>>,
    options: Vec<Profile>,
    first_options: Vec<Profile>,
    max_per_pair: u64,
    max_per_color_pair: u64,
}

struct Counter<'a> {
    nodes: &'a AtomicU64,
    limit: u64,
    aborted: &'a AtomicBool,
}

impl Counter<'_> {
    fn tick(&self) -> bool {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed);
        if seen >= self.limit {
            self.aborted.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }
}

#[derive(Clone)]
struct State {
    fwd: Vec<u64>,
    bwd: Vec<u64>,
    counts: Vec<u64>,
    total: u64,
}

impl Engine {
    fn new(p: &SearchProblem) -> Self {
        let n = p.n;
        let c = p.c;
        let mut pairs = Vec::new();
        for b in 1..n {
            for a in 0..b {
                pairs.push((a, b));
            }
        }
        let mut pair_slot = vec![usize::MAX; n * n];
        for (s, &(a, b)) in pairs.iter().enumerate() {
            pair_slot[a * n + b] = s;
            pair_slot[b * n + a] = s;
        }
        let mut closing = vec![Vec::new(); pairs.len()];
        for z in 2..n {
            for y in 1..z {
                for x in 0..y {
                    let last = [(x, y), (x, z), (y, z)]
                        .iter()
                        .map(|&(a, b)| pair_slot[a * n + b])
                        .max()
                        .expect("three pairs");
                    closing[last].push([x, y, z]);
                }
            }
        }
        let full = (1u64 << c) - 1;
        let mut options = Vec::new();
        for fwd in 0..=full {
            for bwd in 0..=full {
                if p.class == GraphClass::Oriented && fwd & bwd != 0 {
                    continue;
                }
                options.push(Profile {
                    fwd,
                    bwd,
                    total: fwd.count_ones() + bwd.count_ones(),
                });
            }
        }
        // denser profiles first so strong incumbents appear early
        options.sort_by(|x, y| y.total.cmp(&x.total).then(x.fwd.cmp(&y.fwd)).then(x.bwd.cmp(&y.bwd)));
        let first_options = options.iter().copied().filter(|o| is_color_canonical(o, c)).collect();
        let (max_per_pair, max_per_color_pair) = match p.class {
            GraphClass::Digraph => (2 * c as u64, 2),
            GraphClass::Oriented => (c as u64, 1),
        };
        Engine {
            n,
            c,
            pattern: p.pattern,
            pairs,
            pair_slot,
            closing,
            options,
            first_options,
            max_per_pair,
            max_per_color_pair,
        }
    }

    fn mask(&self, st: &State, u: usize, v: usize) -> u64 {
        let s = self.pair_slot[u * self.n + v];
        if u < v {
            st.fwd[s]
        } else {
            st.bwd[s]
        }
    }

    fn triple_ok(&self, st: &State, [x, y, z]: [usize; 3]) -> bool {
        let m = |u, v| self.mask(st, u, v);
        match self.pattern {
            TrianglePattern::Directed => {
                !has_distinct_choice([m(x, y), m(y, z), m(z, x)]) && !has_distinct_choice([m(x, z), m(z, y), m(y, x)])
            }
            TrianglePattern::Transitive => [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)]
                .iter()
                .all(|&(a, b, c)| !has_distinct_choice([m(a, b), m(b, c), m(a, c)])),
        }
    }

    fn empty_state(&self) -> State {
        State {
            fwd: vec![0; self.pairs.len()],
            bwd: vec![0; self.pairs.len()],
            counts: vec![0; self.c],
            total: 0,
        }
    }

    fn apply(&self, st: &mut State, step: usize, o: &Profile, sign: i64) {
        st.fwd[step] = if sign > 0 { o.fwd } else { 0 };
        st.bwd[step] = if sign > 0 { o.bwd } else { 0 };
        for i in 0..self.c {
            let k = ((o.fwd >> i) & 1) + ((o.bwd >> i) & 1);
            st.counts[i] = (st.counts[i] as i64 + sign * k as i64) as u64;
        }
        st.total = (st.total as i64 + sign * o.total as i64) as u64;
    }

    fn closes_cleanly(&self, st: &State, step: usize) -> bool {
        self.closing[step].iter().all(|&t| self.triple_ok(st, t))
    }

    fn to_graph(&self, st: &State) -> ColoredDigraph {
        let mut b = GraphBuilder::new(self.n, self.c).expect("valid dimensions");
        for (s, &(a, bb)) in self.pairs.iter().enumerate() {
            for i in 0..self.c {
                if st.fwd[s] >> i & 1 == 1 {
                    b.add_edge(EdgeRef::new(i + 1, a, bb)).expect("in range");
                }
                if st.bwd[s] >> i & 1 == 1 {
                    b.add_edge(EdgeRef::new(i + 1, bb, a)).expect("in range");
                }
            }
        }
        b.build()
    }

    fn options_at(&self, step: usize) -> &[Profile] {
        if step == 0 {
            &self.first_options
        } else {
            &self.options
        }
    }

    /// Branch-and-bound for the largest total. `own` is this branch's best
    /// value (pruned with `<=`), `shared` the global incumbent (pruned with
    /// `<`, so every branch still reaches its first optimal leaf).
    fn max_total(
        &self,
        st: &mut State,
        step: usize,
        own: &mut (i64, Option<State>),
        shared: &AtomicI64,
        counter: &Counter<'_>,
    ) {
        if !counter.tick() {
            return;
        }
        if step == self.pairs.len() {
            if st.total as i64 > own.0 {
                own.0 = st.total as i64;
                own.1 = Some(st.clone());
                shared.fetch_max(own.0, Ordering::Relaxed);
            }
            return;
        }
        let rest = (self.pairs.len() - step - 1) as u64 * self.max_per_pair;
        for o in self.options_at(step) {
            let bound = (st.total + o.total as u64 + rest) as i64;
            if bound <= own.0 || bound < shared.load(Ordering::Relaxed) {
                // options are sorted by total, so later ones cannot do better
                break;
            }
            self.apply(st, step, o, 1);
            if self.closes_cleanly(st, step) {
                self.max_total(st, step + 1, own, shared, counter);
            }
            self.apply(st, step, o, -1);
            if counter.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Finds a pattern-free completion with every color count at least `t`.
    fn reach_threshold(&self, st: &mut State, step: usize, t: u64, counter: &Counter<'_>) -> Option<State> {
        if !counter.tick() {
            return None;
        }
        let rest_pairs = (self.pairs.len() - step) as u64;
        if st.counts.iter().any(|&k| k + rest_pairs * self.max_per_color_pair < t) {
            return None;
        }
        if step == self.pairs.len() {
            return Some(st.clone());
        }
        for o in self.options_at(step) {
            self.apply(st, step, o, 1);
            if self.closes_cleanly(st, step) {
                if let Some(found) = self.reach_threshold(st, step + 1, t, counter) {
                    self.apply(st, step, o, -1);
                    return Some(found);
                }
            }
            self.apply(st, step, o, -1);
            if counter.aborted.load(Ordering::Relaxed) {
                return None;
            }
        }
        None
    }
}

/// A profile is canonical when its per-color states, read as
/// `2·backward + forward`, are non-increasing in the color index.
fn is_color_canonical(o: &Profile, c: usize) -> bool {
    let state = |i: usize| ((o.bwd >> i) & 1) * 2 + ((o.fwd >> i) & 1);
    (1..c).all(|i| state(i - 1) >= state(i))
}

/// Solves `p` exactly, or returns the best graph found when the node budget
/// runs out (`exhaustive = false`).
pub fn solve(p: &SearchProblem, budget: Budget) -> Result<SearchResult> {
    if p.c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    if p.c > MAX_SEARCH_COLORS {
        return Err(Error::TooManyColors {
            got: p.c,
            max: MAX_SEARCH_COLORS,
        });
    }
    let engine = Engine::new(p);
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let counter = Counter {
        nodes: &nodes,
        limit: budget.max_nodes,
        aborted: &aborted,
    };

    let (optimum, witness) = if engine.pairs.is_empty() {
        let g = ColoredDigraph::empty(p.n, p.c)?;
        (0, g)
    } else {
        match p.objective {
            Objective::MaxTotal => solve_max_total(&engine, &counter),
            Objective::MaxMin => solve_max_min(&engine, &counter),
        }
    };
    let exhaustive = !aborted.load(Ordering::Relaxed);
    Ok(SearchResult {
        problem: *p,
        optimum,
        witness,
        explored: nodes.load(Ordering::Relaxed),
        exhaustive,
    })
}

fn solve_max_total(engine: &Engine, counter: &Counter<'_>) -> (u64, ColoredDigraph) {
    let shared = AtomicI64::new(0);
    let branches: Vec<(i64, Option<State>)> = engine
        .first_options
        .par_iter()
        .map(|o| {
            let mut st = engine.empty_state();
            let mut own = (-1i64, None);
            engine.apply(&mut st, 0, o, 1);
            if engine.closes_cleanly(&st, 0) {
                engine.max_total(&mut st, 1, &mut own, &shared, counter);
            }
            own
        })
        .collect();
    // highest value, earliest branch
    let mut best: (i64, Option<State>) = (-1, None);
    for b in branches {
        if b.0 > best.0 {
            best = b;
        }
    }
    match best.1 {
        Some(st) => (best.0 as u64, engine.to_graph(&st)),
        None => (0, ColoredDigraph::empty(engine.n, engine.c).expect("valid dimensions")),
    }
}

fn solve_max_min(engine: &Engine, counter: &Counter<'_>) -> (u64, ColoredDigraph) {
    let feasible = |t: u64| -> Option<State> {
        engine.first_options.par_iter().find_map_first(|o| {
            let mut st = engine.empty_state();
            engine.apply(&mut st, 0, o, 1);
            if engine.closes_cleanly(&st, 0) {
                engine.reach_threshold(&mut st, 1, t, counter)
            } else {
                None
            }
        })
    };
    let mut lo = 0u64;
    let mut lo_state = engine.empty_state();
    let mut hi = engine.pairs.len() as u64 * engine.max_per_color_pair;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match feasible(mid) {
            Some(st) => {
                lo = mid;
                lo_state = st;
            }
            None => {
                if counter.aborted.load(Ordering::Relaxed) {
                    break;
                }
                hi = mid - 1;
            }
        }
    }
    (lo, engine.to_graph(&lo_state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bipartite_double, directed3};

    fn problem(n: usize, c: usize, pattern: TrianglePattern, class: GraphClass, objective: Objective) -> SearchProblem {
        SearchProblem::new(n, c, pattern, class, objective)
    }

    #[test]
    fn two_vertices_take_everything() {
        let p = problem(
            2,
            3,
            TrianglePattern::Directed,
            GraphClass::Digraph,
            Objective::MaxTotal,
        );
        let r = solve(&p, Budget::unlimited()).unwrap();
        // c * n * (n - 1) with n = 2, c = 3
        assert_eq!(r.optimum, 6);
        assert!(r.exhaustive);
        assert!(verify_witness(&p, &r.witness).unwrap().holds(6));
    }

    #[test]
    fn fewer_than_three_colors_is_unconstrained() {
        for n in 0..=4 {
            for class in [GraphClass::Digraph, GraphClass::Oriented] {
                let p = problem(n, 2, TrianglePattern::Transitive, class, Objective::MaxTotal);
                let r = solve(&p, Budget::unlimited()).unwrap();
                let per_pair = if class == GraphClass::Digraph { 4 } else { 2 };
                assert_eq!(r.optimum, (n * n.saturating_sub(1) / 2 * per_pair) as u64);
            }
        }
    }

    #[test]
    fn canonical_first_profiles_cover_every_orbit() {
        // every profile is a color permutation of some canonical one
        let c = 3;
        let p = problem(
            2,
            c,
            TrianglePattern::Directed,
            GraphClass::Digraph,
            Objective::MaxTotal,
        );
        let e = Engine::new(&p);
        assert_eq!(e.options.len(), 64);
        // multisets of 3 states out of 4: C(6, 3) = 20
        assert_eq!(e.first_options.len(), 20);
    }

    #[test]
    fn verify_witness_examples() {
        let p = problem(3, 3, TrianglePattern::Directed, GraphClass::Digraph, Objective::MaxMin);
        assert!(verify_witness(&p, &directed3(3)).unwrap().holds(3));

        let mut b = GraphBuilder::new(3, 3).unwrap();
        b.add_edge(EdgeRef::new(1, 0, 1)).unwrap();
        b.add_edge(EdgeRef::new(2, 1, 2)).unwrap();
        b.add_edge(EdgeRef::new(3, 2, 0)).unwrap();
        let check = verify_witness(&p, &b.build()).unwrap();
        assert!(!check.pattern_free);

        let q = problem(
            4,
            4,
            TrianglePattern::Transitive,
            GraphClass::Digraph,
            Objective::MaxMin,
        );
        let check = verify_witness(&q, &bipartite_double(4, 4).unwrap()).unwrap();
        assert!(check.holds(8));

        assert!(matches!(
            verify_witness(&q, &directed3(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = problem(
            4,
            3,
            TrianglePattern::Directed,
            GraphClass::Digraph,
            Objective::MaxTotal,
        );
        let r = solve(&p, Budget::nodes(50)).unwrap();
        assert!(!r.exhaustive);
        assert!(verify_witness(&p, &r.witness).unwrap().holds(r.optimum));
    }
}
