//! Branch-and-bound over joint pair profiles of a scenario.

use super::{Constraint, EdgeState, MaskView, PairType, Scenario, TypeOption};
use crate::error::Result;
use crate::graph::{ColoredDigraph, EdgeRef, GraphBuilder};
use crate::patterns::{has_distinct_choice, TrianglePattern};

/// Result of [`enumerate_max`]: the maximum discounted objective (`None` if
/// infeasible), the first maximizing completion, and the node count.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub max: Option<u32>,
    pub witness: Option<(Vec<PairType>, ColoredDigraph)>,
    pub nodes: u64,
}

struct State {
    masks: Vec<u64>,
    n: usize,
}

impl MaskView for State {
    fn colors(&self, u: usize, v: usize) -> u64 {
        self.masks[u * self.n + v]
    }
}

impl State {
    fn set(&mut self, a: usize, b: usize, fwd: u64, bwd: u64) {
        self.masks[a * self.n + b] = fwd;
        self.masks[b * self.n + a] = bwd;
    }
}

enum Atom<'a> {
    Rainbow(TrianglePattern, [usize; 3]),
    Thick(usize, usize, usize),
    Oriented(usize, usize),
    Whole(&'a Constraint),
}

impl Atom<'_> {
    fn holds(&self, s: &State, c: usize) -> bool {
        match *self {
            Atom::Rainbow(p, [x, y, z]) => {
                let perms = [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]];
                !perms
                    .iter()
                    .any(|&[u, v, w]| has_distinct_choice(p.edge_roles(u, v, w).map(|(f, t)| s.colors(f, t))))
            }
            Atom::Thick(a, b, d) => !(s.colors(a, b).count_ones() >= 3 && s.colors(b, d).count_ones() >= 3),
            Atom::Oriented(a, b) => s.colors(a, b) & s.colors(b, a) == 0,
            Atom::Whole(k) => k.holds(s, s.n, c),
        }
    }

    fn scope(&self) -> Vec<(usize, usize)> {
        let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        match *self {
            Atom::Rainbow(_, [x, y, z]) => vec![norm(x, y), norm(x, z), norm(y, z)],
            Atom::Thick(a, b, d) => vec![norm(a, b), norm(b, d)],
            Atom::Oriented(a, b) => vec![(a, b)],
            Atom::Whole(k) => k.scope().expect("whole atoms have finite scope"),
        }
    }
}

fn atoms<'a>(constraints: impl Iterator<Item = &'a Constraint>, n: usize) -> Vec<Atom<'a>> {
    let mut out = Vec::new();
    for k in constraints {
        match k {
            Constraint::NoRainbow { pattern } => {
                for x in 0..n {
                    for y in (x + 1)..n {
                        for z in (y + 1)..n {
                            out.push(Atom::Rainbow(*pattern, [x, y, z]));
                        }
                    }
                }
            }
            Constraint::NoThickPath => {
                for a in 0..n {
                    for b in 0..n {
                        for d in 0..n {
                            if a != b && b != d && a != d {
                                out.push(Atom::Thick(a, b, d));
                            }
                        }
                    }
                }
            }
            Constraint::Oriented => {
                for a in 0..n {
                    for b in (a + 1)..n {
                        out.push(Atom::Oriented(a, b));
                    }
                }
            }
            other => out.push(Atom::Whole(other)),
        }
    }
    out
}

struct Plan<'a> {
    pairs: Vec<(usize, usize)>,
    options: Vec<Vec<(u64, u64, u32)>>,
    /// `rest[s]`: largest objective contribution of slots `s..`.
    rest: Vec<u32>,
    /// Atoms to check right after slot `s` is assigned.
    checks: Vec<Vec<Atom<'a>>>,
    initial: Vec<Atom<'a>>,
}

fn plan<'a>(s: &'a Scenario, opt: Option<&'a TypeOption>) -> Plan<'a> {
    let n = s.vertices.len();
    let c = s.colors;
    let full = (1u64 << c) - 1;
    let mut pairs = Vec::new();
    for b in 0..n {
        for a in 0..b {
            pairs.push((a, b));
        }
    }
    let slot_of = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pair in range");

    let extra = opt.map(|o| o.constraints.as_slice()).unwrap_or(&[]);
    let mut all_atoms = atoms(s.constraints.iter().chain(extra), n);
    // compound constraints over all triples end up with unbounded scope
    let mut deferred = Vec::new();
    all_atoms.retain(|a| match a {
        Atom::Whole(k) if k.scope().is_none() => {
            deferred.push(*k);
            false
        }
        _ => true,
    });

    let obj_mask = s.objective_mask();
    let in_left = |v: usize| s.objective.left.contains(&v);
    let in_right = |v: usize| s.objective.right.contains(&v);

    let mut options = Vec::with_capacity(pairs.len());
    let mut local: Vec<Vec<&Atom>> = vec![Vec::new(); pairs.len()];
    let mut checks: Vec<Vec<Atom>> = (0..pairs.len()).map(|_| Vec::new()).collect();
    let mut initial = Vec::new();
    for atom in all_atoms {
        let scope = atom.scope();
        match scope.len() {
            0 => initial.push(atom),
            _ => {
                let last = scope.iter().map(|&p| slot_of(p)).max().unwrap();
                checks[last].push(atom);
            }
        }
    }
    for (slot, list) in checks.iter().enumerate() {
        for atom in list {
            if atom.scope().len() == 1 {
                local[slot].push(atom);
            }
        }
    }

    for (slot, &(a, b)) in pairs.iter().enumerate() {
        let (mut fwd_on, mut fwd_off, mut bwd_on, mut bwd_off) = (0u64, 0u64, 0u64, 0u64);
        for e in &s.fixed_edges {
            let bit = 1u64 << (e.color - 1);
            let present = e.state == EdgeState::Present;
            if (e.from, e.to) == (a, b) {
                if present {
                    fwd_on |= bit
                } else {
                    fwd_off |= bit
                }
            } else if (e.from, e.to) == (b, a) {
                if present {
                    bwd_on |= bit
                } else {
                    bwd_off |= bit
                }
            }
        }
        let group_type = opt.and_then(|o| {
            s.groups.iter().zip(&o.types).find_map(|(g, t)| match g.vertices[..] {
                [x, y] if (x, y) == (a, b) => Some((*t, false)),
                [x, y] if (x, y) == (b, a) => Some((*t, true)),
                _ => None,
            })
        });
        let linked = (in_left(a) && in_right(b)) || (in_right(a) && in_left(b));
        let mut scratch = State {
            masks: vec![0; n * n],
            n,
        };
        let mut list = Vec::new();
        for fwd in 0..=full {
            if fwd & fwd_on != fwd_on || fwd & fwd_off != 0 {
                continue;
            }
            for bwd in 0..=full {
                if bwd & bwd_on != bwd_on || bwd & bwd_off != 0 {
                    continue;
                }
                if let Some((t, flipped)) = group_type {
                    let ok = if flipped {
                        t.admits(bwd, fwd)
                    } else {
                        t.admits(fwd, bwd)
                    };
                    if !ok {
                        continue;
                    }
                }
                scratch.set(a, b, fwd, bwd);
                if !local[slot].iter().all(|atom| atom.holds(&scratch, c)) {
                    continue;
                }
                let gain = if linked {
                    (fwd & obj_mask).count_ones() + (bwd & obj_mask).count_ones()
                } else {
                    0
                };
                list.push((fwd, bwd, gain));
            }
        }
        list.sort_by_key(|o| std::cmp::Reverse(o.2));
        options.push(list);
    }
    for list in checks.iter_mut() {
        list.retain(|atom| atom.scope().len() > 1);
    }
    if !deferred.is_empty() {
        let last = pairs.len().saturating_sub(1);
        let target = if pairs.is_empty() {
            &mut initial
        } else {
            &mut checks[last]
        };
        target.extend(deferred.into_iter().map(Atom::Whole));
    }

    let mut rest = vec![0u32; pairs.len() + 1];
    for slot in (0..pairs.len()).rev() {
        let best = options[slot].iter().map(|o| o.2).max().unwrap_or(0);
        rest[slot] = rest[slot + 1] + best;
    }
    Plan {
        pairs,
        options,
        rest,
        checks,
        initial,
    }
}

struct Search<'a> {
    scenario: &'a Scenario,
    plan: Plan<'a>,
    state: State,
    nodes: u64,
    best: Option<u32>,
    best_masks: Option<Vec<u64>>,
}

impl Search<'_> {
    fn dfs(&mut self, slot: usize, gain: u32) {
        self.nodes += 1;
        if let Some(best) = self.best {
            if gain + self.plan.rest[slot] <= best {
                return;
            }
        }
        if slot == self.plan.pairs.len() {
            let value = self.scenario.discounted(gain);
            if self.best.is_none_or(|b| value > b) {
                self.best = Some(value);
                self.best_masks = Some(self.state.masks.clone());
            }
            return;
        }
        let (a, b) = self.plan.pairs[slot];
        let c = self.scenario.colors;
        for i in 0..self.plan.options[slot].len() {
            let (fwd, bwd, g) = self.plan.options[slot][i];
            if let Some(best) = self.best {
                // options are sorted by gain, so later ones cannot do better
                if gain + g + self.plan.rest[slot + 1] <= best {
                    break;
                }
            }
            self.state.set(a, b, fwd, bwd);
            if self.plan.checks[slot].iter().all(|atom| atom.holds(&self.state, c)) {
                self.dfs(slot + 1, gain + g);
            }
        }
        self.state.set(a, b, 0, 0);
    }
}

fn to_graph(s: &Scenario, masks: &[u64]) -> ColoredDigraph {
    let n = s.vertices.len();
    let mut g = GraphBuilder::new(n, s.colors).expect("validated dimensions");
    for u in 0..n {
        for v in 0..n {
            let m = masks[u * n + v];
            for i in 1..=s.colors {
                if m >> (i - 1) & 1 == 1 {
                    g.add_edge(EdgeRef::new(i, u, v)).expect("in range");
                }
            }
        }
    }
    g.build()
}

/// Exact maximum of the scenario objective over all admissible completions.
pub fn enumerate_max(s: &Scenario) -> Result<Enumeration> {
    s.validate()?;
    let n = s.vertices.len();
    let cases: Vec<Option<&TypeOption>> = if s.type_options.is_empty() {
        vec![None]
    } else {
        s.type_options.iter().map(Some).collect()
    };
    let mut nodes = 0;
    let mut best: Option<u32> = None;
    let mut witness = None;
    for opt in cases {
        let plan = plan(s, opt);
        let probe = State {
            masks: vec![0; n * n],
            n,
        };
        if !plan.initial.iter().all(|a| a.holds(&probe, s.colors)) {
            continue;
        }
        let mut search = Search {
            scenario: s,
            plan,
            state: probe,
            nodes: 0,
            best,
            best_masks: None,
        };
        search.dfs(0, 0);
        nodes += search.nodes;
        if let Some(masks) = search.best_masks {
            best = search.best;
            let types = opt.map(|o| o.types.clone()).unwrap_or_default();
            witness = Some((types, to_graph(s, &masks)));
        }
    }
    Ok(Enumeration {
        max: best,
        witness,
        nodes,
    })
}
