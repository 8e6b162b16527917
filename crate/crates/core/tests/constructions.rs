use rtlab::constructions::{
    check_construction, construction_suite, expected_count, transitive3_parts, ConstructionId, ConstructionSpec,
};
use rtlab::optcheck::threshold;
use rtlab::{find_rainbow, TrianglePattern};

#[test]
fn suite_passes_for_every_small_n() {
    let checks = construction_suite(3..=30).unwrap();
    assert!(!checks.is_empty());
    for check in &checks {
        assert!(check.passes(), "{check:?}");
    }
}

#[test]
fn directed3_contains_transitive_rainbow() {
    for n in 3..=30 {
        let g = ConstructionSpec::new(ConstructionId::Directed3, n, None)
            .unwrap()
            .build()
            .unwrap();
        assert!(find_rainbow(&g, TrianglePattern::Directed).is_none());
        assert!(find_rainbow(&g, TrianglePattern::Transitive).is_some(), "n = {n}");
    }
}

#[test]
fn oriented_cyclic_is_oriented() {
    for n in 3..=20 {
        let check =
            check_construction(&ConstructionSpec::new(ConstructionId::OrientedCyclic, n, Some(4)).unwrap()).unwrap();
        assert!(check.oriented);
    }
}

#[test]
fn spec_counts() {
    let count = |id, n, c| {
        let spec = ConstructionSpec::new(id, n, c).unwrap();
        spec.build().unwrap().color_counts()
    };
    assert_eq!(count(ConstructionId::BipartiteDouble, 6, Some(4)), vec![18; 4]);
    assert_eq!(count(ConstructionId::OrientedCyclic, 6, Some(3)), vec![12; 3]);
    assert_eq!(count(ConstructionId::TwoColorHeavy, 5, None), vec![20, 20, 0]);
}

#[test]
fn transitive3_small_part_is_nearest_integer() {
    let alpha = (4.0 - 7f64.sqrt()) / 9.0;
    for n in 1..=500 {
        let [a, b, big] = transitive3_parts(n);
        assert_eq!(a, b);
        assert_eq!(a + b + big, n);
        assert_eq!(a, (alpha * n as f64).round() as usize, "n = {n}");
    }
}

#[test]
fn counts_stay_below_thresholds() {
    let per = |name: &str| threshold(name).unwrap().value;
    for n in 3..=60usize {
        let nn = (n * n) as f64;
        let cases = [
            (
                ConstructionId::BipartiteDouble,
                Some(3),
                per("per-color-any-pattern").to_f64() * nn,
            ),
            (
                ConstructionId::Directed3,
                None,
                per("per-color-directed-c3").to_f64() * nn,
            ),
            (
                ConstructionId::Transitive3,
                None,
                per("per-color-transitive-c3").to_f64() * nn + 1.5 * n as f64,
            ),
            (
                ConstructionId::OrientedCyclic,
                Some(3),
                per("per-color-oriented").to_f64() * nn,
            ),
        ];
        for (id, c, limit) in cases {
            let spec = ConstructionSpec::new(id, n, c).unwrap();
            for i in 1..=spec.c {
                let k = expected_count(&spec, i).unwrap() as f64;
                assert!(k <= limit + 1e-9, "{} n = {n} color {i}: {k} > {limit}", id.name());
            }
        }
    }
}

#[test]
fn unknown_names_and_bad_parameters_are_rejected() {
    assert!("not-a-construction".parse::<ConstructionId>().is_err());
    assert!(ConstructionSpec::new(ConstructionId::BipartiteDouble, 6, None).is_err());
    assert!(ConstructionSpec::new(ConstructionId::BipartiteDouble, 6, Some(0)).is_err());
}
