//! Acceptance criteria 1 to 8, one line each. Exits nonzero if any fails.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rtlab::constructions::{construction_suite, ConstructionId, ConstructionSpec};
use rtlab::localbounds::{
    parse_catalogue, run_catalogue, BoundEntry, BoundStatus, CatalogueId, TABLE_COLUMNS, TABLE_VALUES,
};
use rtlab::optcheck::{
    exact_slacks, lemma21_bound, lemma21_grid, scan_constraint_system, threshold, QuadraticRational, EXPECTED_ARGMAX,
};
use rtlab::patterns::count_rainbow;
use rtlab::search::{solve, verify_witness, Budget, SearchProblem};
use rtlab::{find_rainbow, TrianglePattern};

use common::{brute_rainbow_count, random_graph, search_oracle, unpruned_lemma21, GOLDEN_N3_C3};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn load(id: CatalogueId) -> Result<Vec<BoundEntry>, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("catalogues")
        .join(id.file_name());
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let entries = parse_catalogue(&text).map_err(|e| e.to_string())?;
    run_catalogue(&entries).map_err(|e| e.to_string())
}

fn violations(results: &[BoundEntry]) -> Vec<String> {
    results
        .iter()
        .filter(|r| !matches!(r.status, BoundStatus::Verified | BoundStatus::Tight))
        .map(|r| format!("{} ({:?})", r.id, r.status))
        .collect()
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let results = load(CatalogueId::Table)?;
    let elapsed = start.elapsed();
    if results.len() != 100 {
        return Err(format!("{} cells instead of 100", results.len()));
    }
    for (r, row) in TABLE_COLUMNS.iter().enumerate() {
        for (c, col) in TABLE_COLUMNS.iter().enumerate() {
            let id = format!("table/{row}-{col}");
            let cell = results.iter().find(|e| e.id == id).ok_or(format!("missing {id}"))?;
            let max = cell.computed_max.ok_or(format!("{id} infeasible"))?;
            if i64::from(max) > TABLE_VALUES[r][c] {
                return Err(format!("{id}: {max} > {}", TABLE_VALUES[r][c]));
            }
        }
    }
    let bad = violations(&results);
    if !bad.is_empty() {
        return Err(format!("violations: {bad:?}"));
    }
    if elapsed > Duration::from_secs(600) {
        return Err(format!("took {elapsed:?}"));
    }
    let tight = results.iter().filter(|e| e.status == BoundStatus::Tight).count();
    Ok(format!(
        "100 cells, 0 violations, {tight} tight, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn bullet_lists() -> Outcome {
    let eq1 = load(CatalogueId::TwoColorBullets)?;
    let eq3 = load(CatalogueId::TotalBullets)?;
    if (eq1.len(), eq3.len()) != (12, 10) {
        return Err(format!("{} + {} entries instead of 12 + 10", eq1.len(), eq3.len()));
    }
    let mut bad = violations(&eq1);
    bad.extend(violations(&eq3));
    if !bad.is_empty() {
        return Err(format!("violations: {bad:?}"));
    }
    Ok("12 + 10 bounds, 0 violations".into())
}

fn local_claims() -> Outcome {
    let results = load(CatalogueId::Claims)?;
    let bad = violations(&results);
    if !bad.is_empty() {
        return Err(format!("violations: {bad:?}"));
    }
    let families = [
        "two-doubles/c4/",
        "two-doubles/c5/",
        "heavy-star-",
        "six-edge-pair/",
        "third-color-single/",
        "third-color-double/",
        "transitive-two-doubles/c4",
        "transitive-one-double-",
        "thick-path/c3",
        "thick-path/c4",
        "heavy-pair-no-thick-path/c3",
        "heavy-pair-no-thick-path/c4",
    ];
    for f in families {
        if !results.iter().any(|r| r.id.starts_with(f)) {
            return Err(format!("no entry for {f}"));
        }
    }
    let inexact: Vec<&str> = results
        .iter()
        .filter(|r| r.computed_max.map(i64::from) != Some(r.bound.floor()))
        .map(|r| r.id.as_str())
        .collect();
    if !inexact.is_empty() {
        return Err(format!("not reproduced exactly: {inexact:?}"));
    }
    Ok(format!("{} claim bounds reproduced exactly", results.len()))
}

fn construction_suite_check() -> Outcome {
    let checks = construction_suite(1..=30).map_err(|e| e.to_string())?;
    if let Some(bad) = checks.iter().find(|c| !c.passes()) {
        return Err(format!("{bad:?}"));
    }
    let n = 3000usize;
    let transitive = threshold("per-color-transitive-c3").unwrap().value.to_f64();
    let cases = [
        (ConstructionId::BipartiteDouble, Some(3), 0.5),
        (ConstructionId::Directed3, None, 5.0 / 9.0),
        (ConstructionId::Transitive3, None, transitive),
        (ConstructionId::OrientedCyclic, Some(3), 1.0 / 3.0),
    ];
    let mut worst = 0.0f64;
    for (id, c, target) in cases {
        let g = ConstructionSpec::new(id, n, c)
            .and_then(|s| s.build())
            .map_err(|e| e.to_string())?;
        for (i, count) in g.color_counts().into_iter().enumerate() {
            let ratio = count as f64 / (n * n) as f64;
            let gap = (ratio - target).abs();
            worst = worst.max(gap);
            if gap > 1e-2 {
                return Err(format!(
                    "{} color {}: ratio {ratio:.5} vs {target:.5}",
                    id.name(),
                    i + 1
                ));
            }
        }
    }
    Ok(format!(
        "{} checks for n <= 30; n = 3000 ratios within {worst:.1e}",
        checks.len()
    ))
}

fn lemma21_check() -> Outcome {
    let start = Instant::now();
    let rows = lemma21_grid(7).map_err(|e| e.to_string())?;
    for row in &rows {
        if !row.holds || row.max_edges > lemma21_bound(row.a, row.b) {
            return Err(format!("({}, {}): {} > {}", row.a, row.b, row.max_edges, row.bound));
        }
        if row.a == 0 && row.max_edges != row.bound {
            return Err(format!("(0, {}) not tight", row.b));
        }
        if row.a + row.b <= 6 && row.max_edges != unpruned_lemma21(row.a, row.b) {
            return Err(format!("({}, {}) disagrees with unpruned enumeration", row.a, row.b));
        }
    }
    let at22 = rows.iter().find(|r| (r.a, r.b) == (2, 2)).unwrap().max_edges;
    if at22 != 4 {
        return Err(format!("(2, 2) = {at22}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} cells a + b <= 7, (2, 2) = 4, {:.1} s",
        rows.len(),
        elapsed.as_secs_f64()
    ))
}

fn optimization_closure() -> Outcome {
    let r = scan_constraint_system(0.002, 200).map_err(|e| e.to_string())?;
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    let zero = BigRational::zero();
    let exact = exact_slacks(&third, &zero, &zero, &zero);
    if !exact.iter().all(|s| s.is_zero()) {
        return Err(format!("slacks at (1/3, 0, 0, 0) are {exact:?}"));
    }
    let distance = r.argmax.distance(EXPECTED_ARGMAX);
    if r.max_slack > 1e-9 || distance > 1e-4 {
        return Err(format!("max slack {:.3e} at distance {distance:.3e}", r.max_slack));
    }
    Ok(format!(
        "max slack {:.2e} at distance {distance:.2e} from (1/3, 0, 0, 0)",
        r.max_slack
    ))
}

fn threshold_identities() -> Outcome {
    let get = |name: &str| threshold(name).unwrap().value;
    let two = QuadraticRational::integer(2);
    if get("color-pair-transitive-c3") != &two * &get("color-pair-undirected-c3") {
        return Err("two-color transitive constant is not twice the undirected one".into());
    }
    let half = QuadraticRational::from_parts(26, 81, -2, 81);
    if get("per-color-transitive-c3") != &two * &half || get("transitive-construction-half") != half {
        return Err("per-color transitive constant is not twice (26 - 2√7)/81".into());
    }
    let shown = half.to_decimal(4);
    if shown != "0.2557" {
        return Err(format!("(26 - 2√7)/81 renders as {shown}"));
    }
    Ok(format!("both doublings exact, (26 - 2√7)/81 = {}", half.to_decimal(12)))
}

fn small_search_oracle() -> Outcome {
    for (pattern, class, objective, golden) in GOLDEN_N3_C3 {
        let oracle = search_oracle(pattern, class, objective);
        let p = SearchProblem::new(3, 3, pattern, class, objective);
        let r = solve(&p, Budget::unlimited()).map_err(|e| e.to_string())?;
        let witness_ok = verify_witness(&p, &r.witness)
            .map_err(|e| e.to_string())?
            .holds(r.optimum);
        if oracle != golden || r.optimum != golden || !r.exhaustive || !witness_ok {
            return Err(format!("{p}: golden {golden}, oracle {oracle}, solver {}", r.optimum));
        }
    }
    let mut rng = common::rng(0xacce_0008);
    let mut with_rainbow = 0;
    for k in 0..10_000 {
        let n = 1 + k % 5;
        let p = [0.15, 0.3, 0.5][k % 3];
        let g = random_graph(&mut rng, n, 3, p);
        for pattern in TrianglePattern::ALL {
            let brute = brute_rainbow_count(&g, pattern);
            let found = find_rainbow(&g, pattern);
            if found.is_some() != (brute > 0) || count_rainbow(&g, pattern) != brute {
                return Err(format!("detector disagrees on {}", g.to_json()));
            }
            if found.is_some_and(|w| !w.is_valid_in(&g)) {
                return Err(format!("invalid witness on {}", g.to_json()));
            }
            with_rainbow += (brute > 0) as usize;
        }
    }
    Ok(format!(
        "8 goldens match oracle and solver; 10000 random graphs agree ({with_rainbow} pattern hits)"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("table reproduction", table_reproduction),
        ("bullet-list bounds", bullet_lists),
        ("local claims", local_claims),
        ("construction suite", construction_suite_check),
        ("bipartite Mantel oracle", lemma21_check),
        ("optimization closure", optimization_closure),
        ("threshold identities", threshold_identities),
        ("small-n search oracle", small_search_oracle),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
