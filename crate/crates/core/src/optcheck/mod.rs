//! Checks of the non-enumerable ingredients: the bipartite Mantel-type
//! lemma, the closing four-variable constraint system, and the exact
//! threshold constants.

pub mod quadratic;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use quadratic::QuadraticRational;

/// Largest `a + b` accepted by [`lemma21_oracle`].
pub const LEMMA21_MAX_VERTICES: usize = 8;

fn binom2(k: usize) -> u64 {
    (k * k.saturating_sub(1) / 2) as u64
}

/// `C(a,2) + C(b,2) + a`.
pub fn lemma21_bound(a: usize, b: usize) -> u64 {
    binom2(a) + binom2(b) + a as u64
}

/// Maximum edge count of an undirected graph on `A ⊎ B` (`|A| = a`,
/// `|B| = b`) with no triangle meeting both sides. Depth-first over the
/// vertex pairs, with a count bound and an incremental triangle check.
pub fn lemma21_oracle(a: usize, b: usize) -> Result<u64> {
    let n = a + b;
    if n > LEMMA21_MAX_VERTICES {
        return Err(Error::SizeCeiling {
            got: n,
            max: LEMMA21_MAX_VERTICES,
        });
    }
    let mut pairs = Vec::new();
    for v in 0..n {
        for u in 0..v {
            pairs.push((u, v));
        }
    }
    struct Dfs<'a> {
        pairs: &'a [(usize, usize)],
        side: Vec<bool>,
        adj: Vec<u32>,
        best: u64,
    }
    impl Dfs<'_> {
        fn closes_mixed(&self, u: usize, v: usize) -> bool {
            let common = self.adj[u] & self.adj[v];
            (0..self.side.len())
                .any(|w| common >> w & 1 == 1 && !(self.side[u] == self.side[v] && self.side[v] == self.side[w]))
        }

        fn go(&mut self, i: usize, edges: u64) {
            if edges + (self.pairs.len() - i) as u64 <= self.best {
                return;
            }
            if i == self.pairs.len() {
                self.best = edges;
                return;
            }
            let (u, v) = self.pairs[i];
            if !self.closes_mixed(u, v) {
                self.adj[u] |= 1 << v;
                self.adj[v] |= 1 << u;
                self.go(i + 1, edges + 1);
                self.adj[u] &= !(1 << v);
                self.adj[v] &= !(1 << u);
            }
            self.go(i + 1, edges);
        }
    }
    let mut dfs = Dfs {
        pairs: &pairs,
        side: (0..n).map(|v| v < a).collect(),
        adj: vec![0; n],
        best: 0,
    };
    dfs.go(0, 0);
    Ok(dfs.best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma21Row {
    pub a: usize,
    pub b: usize,
    pub max_edges: u64,
    pub bound: u64,
    pub holds: bool,
}

/// Oracle values for every `a + b <= total`.
pub fn lemma21_grid(total: usize) -> Result<Vec<Lemma21Row>> {
    let mut cells = Vec::new();
    for s in 0..=total {
        for a in 0..=s {
            cells.push((a, s - a));
        }
    }
    cells
        .into_par_iter()
        .map(|(a, b)| {
            let max_edges = lemma21_oracle(a, b)?;
            let bound = lemma21_bound(a, b);
            Ok(Lemma21Row {
                a,
                b,
                max_edges,
                bound,
                holds: max_edges <= bound,
            })
        })
        .collect()
}

/// A point `(u, y, z, r)` of the closing system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemPoint {
    pub u: f64,
    pub y: f64,
    pub z: f64,
    pub r: f64,
}

impl SystemPoint {
    pub const fn new(u: f64, y: f64, z: f64, r: f64) -> Self {
        SystemPoint { u, y, z, r }
    }

    fn coords(self) -> [f64; 4] {
        [self.u, self.y, self.z, self.r]
    }

    fn from_coords(c: [f64; 4]) -> Self {
        SystemPoint::new(c[0], c[1], c[2], c[3])
    }

    /// `1 - 3u - y/2 - r` and `u - 3y/4 - z`; both must be nonnegative.
    pub fn linear_slacks(self) -> [f64; 2] {
        let SystemPoint { u, y, z, r } = self;
        [1.0 - 3.0 * u - 0.5 * y - r, u - 0.75 * y - z]
    }

    pub fn is_feasible(self) -> bool {
        self.coords().iter().all(|&t| t >= 0.0) && self.linear_slacks().iter().all(|&s| s >= 0.0)
    }

    /// Slacks of the two quadratic inequalities.
    pub fn slacks(self) -> [f64; 2] {
        let SystemPoint { u, y, z, r } = self;
        let p = u + 7.0 / 12.0 * y + 0.5 * z + 0.75 * r;
        let q = 0.5 * z + 0.75 * r;
        let s1 = p * p - q * q - 1.0 / 9.0;
        let t = 1.0 - r - 0.5 * y - 2.0 * u;
        let s2 = 2.0 * u * u + t * t - 0.5 * y * z - 1.5 * z * z - 1.0 / 3.0;
        [s1, s2]
    }

    pub fn min_slack(self) -> f64 {
        let [a, b] = self.slacks();
        a.min(b)
    }

    pub fn distance(self, other: SystemPoint) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Exact slacks at a rational point.
pub fn exact_slacks(u: &BigRational, y: &BigRational, z: &BigRational, r: &BigRational) -> [BigRational; 2] {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let p = u + q(7, 12) * y + q(1, 2) * z + q(3, 4) * r;
    let h = q(1, 2) * z + q(3, 4) * r;
    let s1 = &p * &p - &h * &h - q(1, 9);
    let t = q(1, 1) - r - q(1, 2) * y - q(2, 1) * u;
    let s2 = q(2, 1) * u * u + &t * &t - q(1, 2) * y * z - q(3, 2) * z * z - q(1, 3);
    [s1, s2]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub grid_step: f64,
    pub polish_iters: usize,
    pub grid_points: u64,
    pub grid_best: SystemPoint,
    pub grid_best_slack: f64,
    pub argmax: SystemPoint,
    pub max_slack: f64,
    pub slacks: [f64; 2],
    pub linear_slacks: [f64; 2],
    pub distance_to_expected: f64,
}

/// Where the closing system is expected to peak.
pub const EXPECTED_ARGMAX: SystemPoint = SystemPoint::new(1.0 / 3.0, 0.0, 0.0, 0.0);

/// Maximizes `min(slack1, slack2)` over the linear-feasible region: a grid
/// scan with spacing `grid_step` followed by a feasible-direction pattern
/// search from the best grid point.
pub fn scan_constraint_system(grid_step: f64, polish_iters: usize) -> Result<ScanReport> {
    if !(grid_step > 0.0 && grid_step <= 0.005) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, 0.005], got {grid_step}"
        )));
    }
    let steps = |limit: f64| (limit / grid_step + 1e-9).floor() as usize;
    let (count, best) = (0..=steps(1.0 / 3.0))
        .into_par_iter()
        .map(|iu| {
            let u = iu as f64 * grid_step;
            let mut count = 0u64;
            let mut best: Option<(f64, SystemPoint)> = None;
            for iy in 0..=steps(4.0 * u / 3.0) {
                let y = iy as f64 * grid_step;
                for iz in 0..=steps((u - 0.75 * y).max(0.0)) {
                    let z = iz as f64 * grid_step;
                    for ir in 0..=steps((1.0 - 3.0 * u - 0.5 * y).max(0.0)) {
                        let p = SystemPoint::new(u, y, z, ir as f64 * grid_step);
                        if !p.is_feasible() {
                            continue;
                        }
                        count += 1;
                        let s = p.min_slack();
                        if best.is_none_or(|(b, _)| s > b) {
                            best = Some((s, p));
                        }
                    }
                }
            }
            (count, best)
        })
        .reduce(
            || (0, None),
            |(ca, a), (cb, b)| {
                let best = match (a, b) {
                    (Some(x), Some(y)) => Some(if y.0 > x.0 { y } else { x }),
                    (x, None) => x,
                    (None, y) => y,
                };
                (ca + cb, best)
            },
        );
    let (grid_best_slack, grid_best) = best.expect("origin is feasible");
    let argmax = polish(grid_best, grid_step, polish_iters);
    let max_slack = argmax.min_slack();
    Ok(ScanReport {
        grid_step,
        polish_iters,
        grid_points: count,
        grid_best,
        grid_best_slack,
        argmax,
        max_slack,
        slacks: argmax.slacks(),
        linear_slacks: argmax.linear_slacks(),
        distance_to_expected: argmax.distance(EXPECTED_ARGMAX),
    })
}

/// Feasible-direction pattern search on the coordinate and pairwise
/// diagonal stencil. A blocked move is retried after clipping it to the
/// boundary of the linear region.
fn polish(start: SystemPoint, step: f64, iters: usize) -> SystemPoint {
    let mut dirs: Vec<[f64; 4]> = Vec::new();
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut d = [0.0; 4];
            d[i] = s;
            dirs.push(d);
        }
        for j in (i + 1)..4 {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut d = [0.0; 4];
                d[i] = si;
                d[j] = sj;
                dirs.push(d);
            }
        }
    }
    let mut x = start;
    let mut fx = x.min_slack();
    let mut h = step;
    for _ in 0..iters {
        let mut best: Option<(f64, SystemPoint)> = None;
        for d in &dirs {
            if let Some(p) = feasible_move(x, *d, h) {
                let fp = p.min_slack();
                if fp > fx && best.is_none_or(|(b, _)| fp > b) {
                    best = Some((fp, p));
                }
            }
        }
        match best {
            Some((fp, p)) => {
                x = p;
                fx = fp;
            }
            None => {
                h *= 0.5;
                if h < 1e-15 {
                    break;
                }
            }
        }
    }
    x
}

/// `x + t·d` for the largest `t ∈ (0, h]` keeping the point feasible.
fn feasible_move(x: SystemPoint, d: [f64; 4], h: f64) -> Option<SystemPoint> {
    let c = x.coords();
    let mut t = h;
    for k in 0..4 {
        if d[k] < 0.0 {
            t = t.min(c[k] / -d[k]);
        }
    }
    // gradients of the two linear slacks
    let rows = [[-3.0, -0.5, 0.0, -1.0], [1.0, -0.75, -1.0, 0.0]];
    for (row, slack) in rows.iter().zip(x.linear_slacks()) {
        let rate: f64 = row.iter().zip(d).map(|(a, b)| a * b).sum();
        if rate < 0.0 {
            t = t.min(slack.max(0.0) / -rate);
        }
    }
    if t <= 0.0 {
        return None;
    }
    let mut next = [0.0; 4];
    for k in 0..4 {
        next[k] = (c[k] + t * d[k]).max(0.0);
    }
    let p = SystemPoint::from_coords(next);
    p.is_feasible().then_some(p)
}

/// A named constant `value·n²`, exact in Q(√7).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Threshold {
    pub name: String,
    pub description: String,
    pub rational: String,
    pub radical: String,
    pub decimal: String,
    #[serde(skip)]
    pub value: QuadraticRational,
}

fn make_threshold(name: &str, description: &str, value: QuadraticRational) -> Threshold {
    Threshold {
        name: name.to_string(),
        description: description.to_string(),
        rational: value.rational_part().to_string(),
        radical: value.radical_part().to_string(),
        decimal: value.to_decimal(12),
        value,
    }
}

/// The extremal density constants, each multiplying `n²`.
pub fn thresholds() -> Vec<Threshold> {
    let q = QuadraticRational::from_parts;
    vec![
        make_threshold(
            "per-color-any-pattern",
            "per color, any c >= 3, both patterns",
            q(1, 2, 0, 1),
        ),
        make_threshold(
            "per-color-directed-c3",
            "per color, directed pattern, 3 colors",
            q(5, 9, 0, 1),
        ),
        make_threshold(
            "per-color-transitive-c3",
            "per color, transitive pattern, 3 colors",
            q(52, 81, -4, 81),
        ),
        make_threshold(
            "transitive-construction-half",
            "half the per-color transitive constant",
            q(26, 81, -2, 81),
        ),
        make_threshold(
            "per-color-oriented",
            "per color, oriented graphs, transitive pattern",
            q(1, 3, 0, 1),
        ),
        make_threshold(
            "color-pair-directed-c3",
            "sum over two colors, directed pattern, 3 colors",
            q(10, 9, 0, 1),
        ),
        make_threshold(
            "color-pair-transitive-c3",
            "sum over two colors, transitive pattern, 3 colors",
            q(104, 81, -8, 81),
        ),
        make_threshold(
            "color-pair-undirected-c3",
            "sum over two colors, undirected rainbow triangle, 3 colors",
            q(52, 81, -4, 81),
        ),
        make_threshold(
            "total-per-color-many",
            "total over c >= 4 colors, divided by c",
            q(1, 2, 0, 1),
        ),
        make_threshold(
            "total-per-color-oriented",
            "total over c oriented colors, divided by c",
            q(1, 3, 0, 1),
        ),
    ]
}

pub fn threshold(name: &str) -> Option<Threshold> {
    thresholds().into_iter().find(|t| t.name == name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identity {
    pub statement: String,
    pub holds: bool,
}

/// Exact doubling identities among the constants.
pub fn threshold_identities() -> Vec<Identity> {
    let get = |name: &str| threshold_value(name);
    let two = QuadraticRational::integer(2);
    let check = |statement: &str, lhs: QuadraticRational, rhs: QuadraticRational| Identity {
        statement: statement.to_string(),
        holds: lhs == rhs,
    };
    vec![
        check(
            "color-pair-transitive-c3 = 2 * color-pair-undirected-c3",
            get("color-pair-transitive-c3"),
            &two * &get("color-pair-undirected-c3"),
        ),
        check(
            "per-color-transitive-c3 = 2 * transitive-construction-half",
            get("per-color-transitive-c3"),
            &two * &get("transitive-construction-half"),
        ),
    ]
}

fn threshold_value(name: &str) -> QuadraticRational {
    thresholds()
        .into_iter()
        .find(|t| t.name == name)
        .map(|t| t.value)
        .expect("known threshold")
}
