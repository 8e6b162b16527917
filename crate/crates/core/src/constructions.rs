//! Generators for the extremal configurations and their closed-form edge
//! counts.
//!
//! Part sizes are as equal as possible with the largest parts last. The
//! transitive construction uses small parts of size `round((4 - √7)/9 · n)`
//! computed exactly in Q(√7).

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredDigraph, EdgeRef, GraphBuilder};
use crate::optcheck::quadratic::QuadraticRational;
use crate::patterns::TrianglePattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    /// Balanced complete bipartite digraph, both directions, every color.
    BipartiteDouble,
    /// Three parts with forward single edges in all colors; part `A_i`
    /// complete in the two colors other than `i`.
    Directed3,
    /// One large and two small parts, each complete in two colors, all
    /// cross pairs doubled in the color missing from the large part.
    Transitive3,
    /// Three parts oriented cyclically, every color.
    OrientedCyclic,
    /// Colors 1 and 2 complete, color 3 empty.
    TwoColorHeavy,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 5] = [
        ConstructionId::BipartiteDouble,
        ConstructionId::Directed3,
        ConstructionId::Transitive3,
        ConstructionId::OrientedCyclic,
        ConstructionId::TwoColorHeavy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::BipartiteDouble => "bipartite-double",
            ConstructionId::Directed3 => "directed3",
            ConstructionId::Transitive3 => "transitive3",
            ConstructionId::OrientedCyclic => "oriented-cyclic",
            ConstructionId::TwoColorHeavy => "two-color-heavy",
        }
    }

    /// The patterns the construction avoids (for every valid `n`, `c`).
    pub fn avoided_patterns(self) -> &'static [TrianglePattern] {
        match self {
            ConstructionId::BipartiteDouble | ConstructionId::TwoColorHeavy => &TrianglePattern::ALL,
            ConstructionId::Directed3 => &[TrianglePattern::Directed],
            ConstructionId::Transitive3 | ConstructionId::OrientedCyclic => &[TrianglePattern::Transitive],
        }
    }

    /// Whether the color count is fixed at 3.
    pub fn fixed_colors(self) -> Option<usize> {
        match self {
            ConstructionId::BipartiteDouble | ConstructionId::OrientedCyclic => None,
            _ => Some(3),
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        ConstructionId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::UnknownConstruction(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub id: ConstructionId,
    pub n: usize,
    pub c: usize,
}

impl ConstructionSpec {
    /// Validates parameters; `c` may be omitted for fixed-color generators.
    pub fn new(id: ConstructionId, n: usize, c: Option<usize>) -> Result<Self> {
        let c = match (id.fixed_colors(), c) {
            (Some(fixed), None) => fixed,
            (Some(fixed), Some(c)) if c == fixed => fixed,
            (Some(fixed), Some(c)) => {
                return Err(Error::InvalidParameter(format!(
                    "{id} uses exactly {fixed} colors, got {c}"
                )))
            }
            (None, Some(c)) if c >= 1 => c,
            (None, Some(_)) => {
                return Err(Error::InvalidParameter(format!("{id} needs c >= 1")));
            }
            (None, None) => {
                return Err(Error::InvalidParameter(format!("{id} needs a color count")));
            }
        };
        Ok(ConstructionSpec { id, n, c })
    }

    pub fn build(&self) -> Result<ColoredDigraph> {
        match self.id {
            ConstructionId::BipartiteDouble => bipartite_double(self.n, self.c),
            ConstructionId::Directed3 => Ok(directed3(self.n)),
            ConstructionId::Transitive3 => Ok(transitive3(self.n)),
            ConstructionId::OrientedCyclic => oriented_cyclic(self.n, self.c),
            ConstructionId::TwoColorHeavy => Ok(two_color_heavy(self.n)),
        }
    }
}

/// Sizes of `k` parts of `0..n`, as equal as possible, largest last.
pub fn balanced_parts(n: usize, k: usize) -> Vec<usize> {
    let base = n / k;
    let extra = n % k;
    (0..k).map(|i| base + usize::from(i >= k - extra)).collect()
}

fn ranges(sizes: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

fn complete_double(b: &mut GraphBuilder, part: std::ops::Range<usize>, color: usize) {
    for u in part.clone() {
        for v in part.clone() {
            if u != v {
                b.add_edge(EdgeRef::new(color, u, v)).expect("in range");
            }
        }
    }
}

fn all_edges(b: &mut GraphBuilder, from: std::ops::Range<usize>, to: std::ops::Range<usize>, color: usize) {
    for u in from {
        for v in to.clone() {
            b.add_edge(EdgeRef::new(color, u, v)).expect("in range");
        }
    }
}

pub fn bipartite_double(n: usize, c: usize) -> Result<ColoredDigraph> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    let parts = ranges(&balanced_parts(n, 2));
    let mut b = GraphBuilder::new(n, c)?;
    for i in 1..=c {
        all_edges(&mut b, parts[0].clone(), parts[1].clone(), i);
        all_edges(&mut b, parts[1].clone(), parts[0].clone(), i);
    }
    Ok(b.build())
}

pub fn directed3(n: usize) -> ColoredDigraph {
    let parts = ranges(&balanced_parts(n, 3));
    let mut b = GraphBuilder::new(n, 3).expect("three colors");
    for (idx, part) in parts.iter().enumerate() {
        for color in (1..=3).filter(|&c| c != idx + 1) {
            complete_double(&mut b, part.clone(), color);
        }
    }
    for (from, to) in [(0, 1), (0, 2), (1, 2)] {
        for color in 1..=3 {
            all_edges(&mut b, parts[from].clone(), parts[to].clone(), color);
        }
    }
    b.build()
}

/// Sizes `(small, small, large)` used by [`transitive3`].
pub fn transitive3_parts(n: usize) -> [usize; 3] {
    // nearest integer to (4 - √7)/9 · n; never a tie for n > 0
    let alpha = QuadraticRational::from_parts(4, 9, -1, 9);
    let scaled = &alpha * &QuadraticRational::integer(n as i64);
    let rounded = (&scaled + &QuadraticRational::rational(1, 2)).floor();
    let a = rounded.to_usize().expect("small part fits in usize");
    [a, a, n - 2 * a]
}

pub fn transitive3(n: usize) -> ColoredDigraph {
    let [a, _, big] = transitive3_parts(n);
    // large part first in vertex order, then the two small parts
    let parts = ranges(&[big, a, a]);
    let mut b = GraphBuilder::new(n, 3).expect("three colors");
    let inner_colors = [[1, 2], [2, 3], [3, 1]];
    for (part, colors) in parts.iter().zip(inner_colors) {
        for color in colors {
            complete_double(&mut b, part.clone(), color);
        }
    }
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        all_edges(&mut b, parts[x].clone(), parts[y].clone(), 3);
        all_edges(&mut b, parts[y].clone(), parts[x].clone(), 3);
    }
    b.build()
}

pub fn oriented_cyclic(n: usize, c: usize) -> Result<ColoredDigraph> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    let parts = ranges(&balanced_parts(n, 3));
    let mut b = GraphBuilder::new(n, c)?;
    for i in 1..=c {
        for (from, to) in [(0, 1), (1, 2), (2, 0)] {
            all_edges(&mut b, parts[from].clone(), parts[to].clone(), i);
        }
    }
    Ok(b.build())
}

pub fn two_color_heavy(n: usize) -> ColoredDigraph {
    let mut b = GraphBuilder::new(n, 3).expect("three colors");
    complete_double(&mut b, 0..n, 1);
    complete_double(&mut b, 0..n, 2);
    b.build()
}

fn ordered_pairs(s: usize) -> u64 {
    (s * s.saturating_sub(1)) as u64
}

/// Closed-form `e(G_i)` of the generated graph for the realized part sizes.
pub fn expected_count(spec: &ConstructionSpec, i: usize) -> Result<u64> {
    if i == 0 || i > spec.c {
        return Err(Error::ColorOutOfRange { color: i, c: spec.c });
    }
    let n = spec.n;
    let count = match spec.id {
        ConstructionId::BipartiteDouble => {
            let p = balanced_parts(n, 2);
            2 * (p[0] * p[1]) as u64
        }
        ConstructionId::Directed3 => {
            let p = balanced_parts(n, 3);
            let inner: u64 = (0..3).filter(|&k| k + 1 != i).map(|k| ordered_pairs(p[k])).sum();
            inner + (p[0] * p[1] + p[0] * p[2] + p[1] * p[2]) as u64
        }
        ConstructionId::Transitive3 => {
            let [a, _, big] = transitive3_parts(n);
            match i {
                1 | 2 => ordered_pairs(big) + ordered_pairs(a),
                _ => 2 * ordered_pairs(a) + 2 * (2 * a * big + a * a) as u64,
            }
        }
        ConstructionId::OrientedCyclic => {
            let p = balanced_parts(n, 3);
            (p[0] * p[1] + p[1] * p[2] + p[2] * p[0]) as u64
        }
        ConstructionId::TwoColorHeavy => {
            if i == 3 {
                0
            } else {
                ordered_pairs(n)
            }
        }
    };
    Ok(count)
}

/// Generated counts against the closed forms, plus pattern avoidance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub spec: ConstructionSpec,
    pub counts: Vec<u64>,
    pub expected: Vec<u64>,
    pub counts_match: bool,
    pub pattern_free: bool,
    pub oriented: bool,
}

impl ConstructionCheck {
    pub fn passes(&self) -> bool {
        self.counts_match && self.pattern_free
    }
}

pub fn check_construction(spec: &ConstructionSpec) -> Result<ConstructionCheck> {
    let g = spec.build()?;
    let counts = g.color_counts();
    let expected = (1..=spec.c)
        .map(|i| expected_count(spec, i))
        .collect::<Result<Vec<_>>>()?;
    let pattern_free = spec
        .id
        .avoided_patterns()
        .iter()
        .all(|&p| crate::patterns::find_rainbow(&g, p).is_none());
    Ok(ConstructionCheck {
        spec: *spec,
        counts_match: counts == expected,
        counts,
        expected,
        pattern_free,
        oriented: g.is_oriented(),
    })
}

/// Every generator for every `n` in `ns`; generators with a free color
/// count run with `c = 3` and `c = 4`.
pub fn construction_suite(ns: std::ops::RangeInclusive<usize>) -> Result<Vec<ConstructionCheck>> {
    let mut specs = Vec::new();
    for n in ns {
        for id in ConstructionId::ALL {
            match id.fixed_colors() {
                Some(_) => specs.push(ConstructionSpec::new(id, n, None)?),
                None => {
                    for c in [3, 4] {
                        specs.push(ConstructionSpec::new(id, n, Some(c))?);
                    }
                }
            }
        }
    }
    specs.par_iter().map(check_construction).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::find_rainbow;

    #[test]
    fn part_sizes() {
        assert_eq!(balanced_parts(7, 3), vec![2, 2, 3]);
        assert_eq!(balanced_parts(8, 3), vec![2, 3, 3]);
        assert_eq!(balanced_parts(5, 2), vec![2, 3]);
        assert_eq!(balanced_parts(0, 3), vec![0, 0, 0]);
        assert_eq!(transitive3_parts(0), [0, 0, 0]);
        // (4 - √7)/9 ≈ 0.15047
        assert_eq!(transitive3_parts(10), [2, 2, 6]);
        assert_eq!(transitive3_parts(1000), [150, 150, 700]);
    }

    #[test]
    fn small_counts() {
        let g = bipartite_double(4, 4).unwrap();
        assert_eq!(g.color_counts(), vec![8; 4]);
        assert_eq!(bipartite_double(5, 4).unwrap().color_counts(), vec![12; 4]);
        assert_eq!(directed3(9).color_counts(), vec![39; 3]);
        assert_eq!(directed3(3).color_counts(), vec![3; 3]);
        assert_eq!(oriented_cyclic(6, 3).unwrap().color_counts(), vec![12; 3]);
        assert_eq!(two_color_heavy(5).color_counts(), vec![20, 20, 0]);
        assert_eq!(transitive3(0).total_edges(), 0);
    }

    #[test]
    fn expected_count_examples() {
        let d = ConstructionSpec::new(ConstructionId::Directed3, 9, None).unwrap();
        assert_eq!(expected_count(&d, 1).unwrap(), 39);
        let b = ConstructionSpec::new(ConstructionId::BipartiteDouble, 5, Some(4)).unwrap();
        assert_eq!(expected_count(&b, 2).unwrap(), 12);
        let t = ConstructionSpec::new(ConstructionId::TwoColorHeavy, 5, None).unwrap();
        assert_eq!(expected_count(&t, 3).unwrap(), 0);
        assert!(expected_count(&t, 4).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ConstructionSpec::new(ConstructionId::Directed3, 6, Some(4)).is_err());
        assert!(ConstructionSpec::new(ConstructionId::BipartiteDouble, 6, None).is_err());
        assert!(ConstructionSpec::new(ConstructionId::OrientedCyclic, 6, Some(0)).is_err());
        assert_eq!(
            "oriented_cyclic".parse::<ConstructionId>().unwrap(),
            ConstructionId::OrientedCyclic
        );
        assert!(matches!(
            "petersen".parse::<ConstructionId>(),
            Err(Error::UnknownConstruction(_))
        ));
    }

    #[test]
    fn oriented_cyclic_is_oriented_and_fig1_is_not() {
        assert!(oriented_cyclic(7, 3).unwrap().is_oriented());
        assert!(!bipartite_double(4, 4).unwrap().is_oriented());
    }

    #[test]
    fn directed3_has_transitive_rainbow() {
        for n in 3..10 {
            assert!(find_rainbow(&directed3(n), TrianglePattern::Transitive).is_some());
            assert!(find_rainbow(&directed3(n), TrianglePattern::Directed).is_none());
        }
    }
}
