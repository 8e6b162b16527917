//! Generators for the shipped scenario catalogues.
//!
//! Decomposition cells place one group per side: a matched pair (two
//! vertices) or a lone vertex. Every admissible type assignment carries the
//! side conditions that follow from it: maximality of each matching among
//! the vertices left over, and the one-partner pruning rules between a
//! matched pair and the vertices outside its matching.

use std::fmt;
use std::str::FromStr;

use super::{
    Cmp, Constraint, EdgeState, FixedEdge, Group, PairRelation, PairType, RationalBound, Scenario, ScenarioObjective,
    TypeOption,
};
use crate::error::{Error, Result};
use crate::patterns::TrianglePattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogueId {
    Table,
    TwoColorBullets,
    TotalBullets,
    Claims,
}

impl CatalogueId {
    pub const ALL: [CatalogueId; 4] = [
        CatalogueId::Table,
        CatalogueId::TwoColorBullets,
        CatalogueId::TotalBullets,
        CatalogueId::Claims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogueId::Table => "table10x10",
            CatalogueId::TwoColorBullets => "eq1_bullets",
            CatalogueId::TotalBullets => "eq3_bullets",
            CatalogueId::Claims => "claims_local",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.json", self.name())
    }
}

impl fmt::Display for CatalogueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogueId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogueId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown catalogue `{s}`")))
    }
}

/// Row and column labels of the decomposition table.
pub const TABLE_COLUMNS: [&str; 10] = ["X12", "X13", "X23", "Y1", "Y2", "Y3", "Z1", "Z2", "Z3", "R"];

/// Maximum total edges between two groups of the given types.
pub const TABLE_VALUES: [[i64; 10]; 10] = [
    [16, 12, 12, 12, 12, 12, 14, 14, 12, 7],
    [12, 16, 12, 12, 12, 12, 14, 12, 14, 7],
    [12, 12, 16, 12, 12, 12, 12, 14, 14, 7],
    [12, 12, 12, 13, 12, 12, 13, 12, 12, 7],
    [12, 12, 12, 12, 13, 12, 12, 13, 12, 7],
    [12, 12, 12, 12, 12, 13, 12, 12, 13, 7],
    [14, 14, 12, 13, 12, 12, 12, 12, 12, 6],
    [14, 12, 14, 12, 13, 12, 12, 12, 12, 6],
    [12, 14, 14, 12, 12, 13, 12, 12, 12, 6],
    [7, 7, 7, 7, 7, 7, 6, 6, 6, 3],
];

pub fn builtin_catalogue(id: CatalogueId) -> Vec<Scenario> {
    match id {
        CatalogueId::Table => table(),
        CatalogueId::TwoColorBullets => two_color_bullets(),
        CatalogueId::TotalBullets => total_bullets(),
        CatalogueId::Claims => claims(),
    }
}

fn ty(s: &str) -> PairType {
    s.parse().expect("static pair type")
}

const ALL_PAIR_TYPES: [&str; 9] = ["X12", "X13", "X23", "Y1", "Y2", "Y3", "Z1", "Z2", "Z3"];

/// Side conditions implied by a type assignment of `groups`.
fn decomposition_rules(groups: &[Group], assigned: &[PairType]) -> Vec<Constraint> {
    let members = |pred: &dyn Fn(char) -> bool| -> Vec<usize> {
        groups
            .iter()
            .zip(assigned)
            .filter(|(_, t)| pred(t.class()))
            .flat_map(|(g, _)| g.vertices.iter().copied())
            .collect()
    };
    let mut out = Vec::new();
    let mut forbid = |relation: PairRelation, within: Vec<usize>| {
        if within.len() >= 2 {
            out.push(Constraint::Forbid { relation, within });
        }
    };
    forbid(PairRelation::DoubleInTwoColors, members(&|k| k != 'X'));
    forbid(PairRelation::EdgesAtLeast(4), members(&|k| k == 'Z' || k == 'R'));
    forbid(PairRelation::DoubleAndOther, members(&|k| k == 'R'));

    // pair class, outside classes, relation
    let partner_rules: [(char, &str, PairRelation); 3] = [
        ('X', "YZR", PairRelation::DoubleInTwoColors),
        ('Y', "ZR", PairRelation::EdgesAtLeast(4)),
        ('Z', "R", PairRelation::DoubleAndOther),
    ];
    for (g, t) in groups.iter().zip(assigned) {
        let [a, b] = g.vertices[..] else { continue };
        for &(class, outside, relation) in &partner_rules {
            if t.class() != class {
                continue;
            }
            for v in members(&|k| outside.contains(k)) {
                out.push(Constraint::AtMostOnePartner {
                    vertex: v,
                    pair: [a, b],
                    relation,
                });
            }
        }
    }
    out
}

fn base_constraints(n: usize) -> Vec<Constraint> {
    vec![
        Constraint::NoRainbow {
            pattern: TrianglePattern::Directed,
        },
        Constraint::Forbid {
            relation: PairRelation::EdgesAtLeast(6),
            within: (0..n).collect(),
        },
    ]
}

/// A two-group decomposition scenario. `options` lists the admissible
/// `[left, right]` type pairs; all must agree on group shapes.
fn cell(
    id: String,
    source: String,
    options: &[[PairType; 2]],
    colors: &[usize],
    bound: RationalBound,
    h_edge_at: Option<u32>,
) -> Scenario {
    let shape = options[0];
    let mut vertices = Vec::new();
    let mut groups = Vec::new();
    for (side, t) in ["p", "q"].iter().zip(shape) {
        let start = vertices.len();
        if t.is_pair() {
            vertices.push(format!("{side}0"));
            vertices.push(format!("{side}1"));
            groups.push(Group {
                vertices: vec![start, start + 1],
            });
        } else {
            vertices.push(side.to_string());
            groups.push(Group { vertices: vec![start] });
        }
    }
    let type_options = options
        .iter()
        .map(|pair| {
            assert!(pair.iter().zip(shape).all(|(a, b)| a.is_pair() == b.is_pair()));
            TypeOption {
                types: pair.to_vec(),
                constraints: decomposition_rules(&groups, pair),
            }
        })
        .collect();
    let n = vertices.len();
    Scenario {
        id,
        source,
        colors: 3,
        objective: ScenarioObjective {
            colors: colors.to_vec(),
            left: groups[0].vertices.clone(),
            right: groups[1].vertices.clone(),
            h_edge_at,
        },
        vertices,
        groups,
        type_options,
        fixed_edges: Vec::new(),
        constraints: base_constraints(n),
        bound,
    }
}

fn table() -> Vec<Scenario> {
    let mut out = Vec::new();
    for (r, row) in TABLE_COLUMNS.iter().enumerate() {
        for (c, col) in TABLE_COLUMNS.iter().enumerate() {
            out.push(cell(
                format!("table/{row}-{col}"),
                format!("decomposition table, row {row}, column {col}"),
                &[[ty(row), ty(col)]],
                &[1, 2, 3],
                RationalBound::integer(TABLE_VALUES[r][c]),
                None,
            ));
        }
    }
    out
}

fn product(left: &[&str], right: &[&str]) -> Vec<[PairType; 2]> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            out.push([ty(l), ty(r)]);
        }
    }
    out
}

/// Unordered products, one representative per unordered type pair.
fn unordered(list: &[[PairType; 2]]) -> Vec<[PairType; 2]> {
    let mut out: Vec<[PairType; 2]> = Vec::new();
    for &[a, b] in list {
        if !out.contains(&[a, b]) && !out.contains(&[b, a]) {
            out.push([a, b]);
        }
    }
    out
}

/// Two-color bullets, written for the color pair {1, 2}; other color pairs
/// follow by renaming colors.
fn two_color_bullets() -> Vec<Scenario> {
    let x = ["X12"];
    let y = ["Y1", "Y2"];
    let z = ["Z1", "Z2"];
    let other = ["X13", "X23", "Y3", "Z3"];
    let r = ["R"];
    let mut rest = product(&other, &ALL_PAIR_TYPES);
    rest.extend(product(&ALL_PAIR_TYPES, &other));
    let rest = unordered(&rest);
    let rows: Vec<(&str, &str, Vec<[PairType; 2]>, RationalBound)> = vec![
        (
            "x-x",
            "X_ij pair vs X_ij pair",
            product(&x, &x),
            RationalBound::integer(16),
        ),
        (
            "x-y",
            "X_ij pair vs Y_i or Y_j pair",
            product(&x, &y),
            RationalBound::new(40, 3),
        ),
        (
            "x-z",
            "X_ij pair vs Z_i or Z_j pair",
            product(&x, &z),
            RationalBound::integer(14),
        ),
        (
            "y-y",
            "different Y_i or Y_j pairs",
            unordered(&product(&y, &y)),
            RationalBound::new(104, 9),
        ),
        (
            "y-z",
            "Y_i or Y_j pair vs Z_i or Z_j pair",
            product(&y, &z),
            RationalBound::integer(12),
        ),
        (
            "z-z",
            "different Z_i or Z_j pairs",
            unordered(&product(&z, &z)),
            RationalBound::integer(12),
        ),
        (
            "other-pairs",
            "any other two matched pairs",
            rest,
            RationalBound::integer(8),
        ),
        (
            "x-r",
            "X_ij pair vs lone vertex",
            product(&x, &r),
            RationalBound::integer(7),
        ),
        (
            "y-r",
            "Y_i or Y_j pair vs lone vertex",
            product(&y, &r),
            RationalBound::integer(6),
        ),
        (
            "z-r",
            "Z_i or Z_j pair vs lone vertex",
            product(&z, &r),
            RationalBound::new(11, 2),
        ),
        (
            "other-r",
            "any other pair vs lone vertex",
            product(&other, &r),
            RationalBound::integer(4),
        ),
        ("r-r", "two lone vertices", product(&r, &r), RationalBound::integer(2)),
    ];
    rows.into_iter()
        .map(|(id, what, options, bound)| {
            cell(
                format!("eq1/{id}"),
                format!("colors i,j bullet: {what}"),
                &options,
                &[1, 2],
                bound,
                None,
            )
        })
        .collect()
}

type BulletRow = (
    &'static str,
    &'static str,
    Vec<[PairType; 2]>,
    RationalBound,
    Option<u32>,
);

/// Total-edge bullets over all color choices.
fn total_bullets() -> Vec<Scenario> {
    let pairs = [(1u8, 2u8), (1, 3), (2, 3)];
    let xs = |i: u8, j: u8| PairType::X(i.min(j), i.max(j));
    let mut x_x = Vec::new();
    let mut x_y = Vec::new();
    let mut x_z = Vec::new();
    for &(i, j) in &pairs {
        x_x.push([xs(i, j), xs(i, j)]);
        for k in [i, j] {
            x_y.push([xs(i, j), PairType::Y(k)]);
            x_z.push([xs(i, j), PairType::Z(k)]);
        }
    }
    let mut y_same = Vec::new();
    let mut y_other = Vec::new();
    let mut yz_same = Vec::new();
    let mut yz_other = Vec::new();
    for i in 1..=3u8 {
        y_same.push([PairType::Y(i), PairType::Y(i)]);
        yz_same.push([PairType::Y(i), PairType::Z(i)]);
        for j in 1..=3u8 {
            if i != j {
                if i < j {
                    y_other.push([PairType::Y(i), PairType::Y(j)]);
                }
                yz_other.push([PairType::Y(i), PairType::Z(j)]);
            }
        }
    }
    let listed: Vec<[PairType; 2]> = [&x_x, &x_y, &x_z, &y_same, &y_other, &yz_same, &yz_other]
        .into_iter()
        .flatten()
        .copied()
        .collect();
    let rest: Vec<[PairType; 2]> = unordered(&product(&ALL_PAIR_TYPES, &ALL_PAIR_TYPES))
        .into_iter()
        .filter(|&[a, b]| !listed.contains(&[a, b]) && !listed.contains(&[b, a]))
        .collect();
    let rows: Vec<BulletRow> = vec![
        ("x-x", "X_ij pair vs X_ij pair", x_x, RationalBound::integer(16), None),
        (
            "x-y",
            "X_ij pair vs Y_i or Y_j pair",
            x_y,
            RationalBound::new(27, 2),
            None,
        ),
        (
            "x-z",
            "X_ij pair vs Z_i or Z_j pair",
            x_z,
            RationalBound::integer(14),
            None,
        ),
        ("yi-yi", "different Y_i pairs", y_same, RationalBound::new(105, 8), None),
        (
            "yi-yj",
            "Y_i pair vs Y_j pair",
            y_other,
            RationalBound::new(201, 16),
            None,
        ),
        (
            "yi-zi",
            "Y_i pair vs Z_i pair",
            yz_same,
            RationalBound::integer(13),
            None,
        ),
        (
            "yi-zj",
            "Y_i pair vs Z_j pair",
            yz_other,
            RationalBound::new(25, 2),
            None,
        ),
        (
            "other-pairs",
            "any other two matched pairs",
            rest,
            RationalBound::integer(12),
            None,
        ),
        (
            "pair-r",
            "matched pair vs lone vertex, saturated incidences discounted",
            product(&ALL_PAIR_TYPES, &["R"]),
            RationalBound::integer(6),
            Some(7),
        ),
        (
            "r-r",
            "two lone vertices",
            product(&["R"], &["R"]),
            RationalBound::integer(3),
            None,
        ),
    ];
    rows.into_iter()
        .map(|(id, what, options, bound, h)| {
            cell(
                format!("eq3/{id}"),
                format!("total-edge bullet: {what}"),
                &options,
                &[1, 2, 3],
                bound,
                h,
            )
        })
        .collect()
}

fn present(color: usize, from: usize, to: usize) -> FixedEdge {
    FixedEdge {
        color,
        from,
        to,
        state: EdgeState::Present,
    }
}

fn double(color: usize, u: usize, v: usize) -> [FixedEdge; 2] {
    [present(color, u, v), present(color, v, u)]
}

fn count(from: &[usize], to: &[usize], colors: Option<Vec<usize>>, directed: bool, cmp: Cmp, value: u32) -> Constraint {
    Constraint::EdgeCount {
        from: from.to_vec(),
        to: to.to_vec(),
        colors,
        directed,
        cmp,
        value,
    }
}

fn no_rainbow(pattern: TrianglePattern) -> Constraint {
    Constraint::NoRainbow { pattern }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[allow(clippy::too_many_arguments)]
fn claim_scenario(
    id: String,
    source: &str,
    colors: usize,
    vertices: &[&str],
    fixed_edges: Vec<FixedEdge>,
    constraints: Vec<Constraint>,
    objective: (Vec<usize>, Vec<usize>, Vec<usize>),
    bound: i64,
) -> Scenario {
    Scenario {
        id,
        source: source.to_string(),
        colors,
        vertices: labels(vertices),
        groups: Vec::new(),
        type_options: Vec::new(),
        fixed_edges,
        constraints,
        objective: ScenarioObjective {
            colors: objective.0,
            left: objective.1,
            right: objective.2,
            h_edge_at: None,
        },
        bound: RationalBound::integer(bound),
    }
}

fn claims() -> Vec<Scenario> {
    use TrianglePattern::{Directed, Transitive};
    let mut out = Vec::new();
    let all = |c: usize| (1..=c).collect::<Vec<_>>();
    let (x, u, v, w) = (0usize, 1usize, 2usize, 3usize);

    // u, v joined by doubles in colors 1 and 3
    for c in [4usize, 5] {
        for k in 1..=c {
            let next = if k == c { 1 } else { k + 1 };
            let mut fixed = double(1, u, v).to_vec();
            fixed.extend(double(3, u, v));
            out.push(claim_scenario(
                format!("two-doubles/c{c}/k{k}"),
                "pair with double edges in two colors: colors k, k+1 from an outside vertex",
                c,
                &["x", "u", "v"],
                fixed,
                vec![no_rainbow(Directed)],
                (vec![k, next], vec![x], vec![u, v]),
                4,
            ));
        }
    }

    // u has c+1 edges with at least 3 leaving u towards both v and w (or
    // entering u from both)
    for (dir, outward) in [("out", true), ("in", false)] {
        let c = 4;
        let heavy = |a: usize, b: usize| {
            let (from, to) = if outward { (a, b) } else { (b, a) };
            [
                count(&[a], &[b], None, false, Cmp::Eq, c as u32 + 1),
                count(&[from], &[to], None, true, Cmp::Ge, 3),
            ]
        };
        let mut constraints = vec![
            no_rainbow(Directed),
            Constraint::Forbid {
                relation: PairRelation::DoubleInTwoColors,
                within: vec![0, 1, 2],
            },
        ];
        constraints.extend(heavy(0, 1));
        constraints.extend(heavy(0, 2));
        out.push(claim_scenario(
            format!("heavy-star-{dir}/c{c}"),
            "two saturated pairs sharing a vertex, same direction",
            c,
            &["u", "v", "w"],
            Vec::new(),
            constraints,
            (all(c), vec![1], vec![2]),
            2,
        ));
    }

    // x, y with double edges in all three colors
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let mut fixed = Vec::new();
        for k in 1..=3 {
            fixed.extend(double(k, 1, 2));
        }
        out.push(claim_scenario(
            format!("six-edge-pair/colors{i}{j}"),
            "pair with six edges: two colors from an outside vertex",
            3,
            &["v", "x", "y"],
            fixed,
            vec![no_rainbow(Directed)],
            (vec![i, j], vec![0], vec![1, 2]),
            4,
        ));
    }

    // e_k(u, v) in {1, 2}; w sees u, v in the other two colors
    for (tag, mult, bound) in [("single", 1u32, 6), ("double", 2, 4)] {
        for k in 1..=3usize {
            let others: Vec<usize> = (1..=3).filter(|&i| i != k).collect();
            out.push(claim_scenario(
                format!("third-color-{tag}/k{k}"),
                "edge in the third color between u and v: other two colors from w",
                3,
                &["w", "u", "v"],
                Vec::new(),
                vec![
                    no_rainbow(Directed),
                    count(&[1], &[2], Some(vec![k]), false, Cmp::Eq, mult),
                ],
                (others, vec![0], vec![1, 2]),
                bound,
            ));
        }
    }

    // transitive pattern, four colors
    {
        let c = 4;
        let mut fixed = double(1, u, v).to_vec();
        fixed.extend(double(2, u, v));
        out.push(claim_scenario(
            format!("transitive-two-doubles/c{c}"),
            "pair with double edges in two colors, outside vertex adjacent to both",
            c,
            &["x", "u", "v"],
            fixed,
            vec![
                no_rainbow(Transitive),
                count(&[x], &[u], None, false, Cmp::Ge, 1),
                count(&[x], &[v], None, false, Cmp::Ge, 1),
            ],
            (all(c), vec![x], vec![u, v]),
            8,
        ));

        let shared = Constraint::Any {
            of: (2..=c)
                .map(|j| Constraint::All {
                    of: vec![
                        count(&[x], &[u], Some(vec![j]), false, Cmp::Ge, 1),
                        count(&[x], &[v], Some(vec![j]), false, Cmp::Ge, 1),
                    ],
                })
                .collect(),
        };
        let base = vec![
            no_rainbow(Transitive),
            Constraint::Forbid {
                relation: PairRelation::DoubleInTwoColors,
                within: vec![x, u, v],
            },
        ];
        let mut with_shared = base.clone();
        with_shared.push(shared.clone());
        out.push(claim_scenario(
            format!("transitive-one-double-shared/c{c}"),
            "pair with a double edge in color 1, outside vertex meets both in another common color",
            c,
            &["x", "u", "v"],
            double(1, u, v).to_vec(),
            with_shared,
            (all(c), vec![x], vec![u, v]),
            6,
        ));
        let mut without = base;
        without.push(Constraint::Not { of: Box::new(shared) });
        out.push(claim_scenario(
            format!("transitive-one-double-rest/c{c}"),
            "pair with a double edge in color 1, no other common color towards the outside vertex",
            c,
            &["x", "u", "v"],
            double(1, u, v).to_vec(),
            without,
            (all(c), vec![x], vec![u, v]),
            c as i64 + 3,
        ));
    }

    // oriented graphs, transitive pattern
    for c in [3usize, 4] {
        out.push(claim_scenario(
            format!("thick-path/c{c}"),
            "thick path u -> v -> w: edges from an outside vertex",
            c,
            &["x", "u", "v", "w"],
            Vec::new(),
            vec![
                no_rainbow(Transitive),
                Constraint::Oriented,
                count(&[u], &[v], None, true, Cmp::Ge, 3),
                count(&[v], &[w], None, true, Cmp::Ge, 3),
            ],
            (all(c), vec![x], vec![u, v, w]),
            2 * c as i64,
        ));
        out.push(claim_scenario(
            format!("heavy-pair-no-thick-path/c{c}"),
            "pair with at least three edges and no thick path: edges from an outside vertex",
            c,
            &["x", "u", "v"],
            Vec::new(),
            vec![
                no_rainbow(Transitive),
                Constraint::Oriented,
                Constraint::NoThickPath,
                count(&[u], &[v], None, false, Cmp::Ge, 3),
            ],
            (all(c), vec![x], vec![u, v]),
            c as i64 + 1,
        ));
    }
    out
}
