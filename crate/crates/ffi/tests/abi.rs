use std::ffi::{CStr, CString};
use std::ptr;

use rtlab_ffi::*;

fn last_error() -> String {
    let p = rtlab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn rainbow_cycle() -> *mut RtlabGraph {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rtlab_graph_new(3, 3, &mut g), RtlabStatus::Ok);
        for (color, from, to) in [(1, 0, 1), (2, 1, 2), (3, 2, 0)] {
            assert_eq!(rtlab_graph_add_edge(g, color, from, to), RtlabStatus::Ok);
        }
    }
    g
}

#[test]
fn builds_and_detects_a_directed_rainbow_triangle() {
    let g = rainbow_cycle();
    unsafe {
        let mut found = false;
        let mut w = RtlabWitness::default();
        assert_eq!(
            rtlab_find_rainbow(g, RtlabPattern::Directed, &mut found, &mut w),
            RtlabStatus::Ok
        );
        assert!(found);
        let mut colors = w.colors;
        colors.sort();
        assert_eq!(colors, [1, 2, 3]);

        assert_eq!(
            rtlab_find_rainbow(g, RtlabPattern::Transitive, &mut found, ptr::null_mut()),
            RtlabStatus::Ok
        );
        assert!(!found);

        let mut count = 0;
        assert_eq!(
            rtlab_count_rainbow(g, RtlabPattern::Directed, &mut count),
            RtlabStatus::Ok
        );
        assert_eq!(count, 1);

        let mut total = 0;
        assert_eq!(rtlab_graph_total_edges(g, &mut total), RtlabStatus::Ok);
        assert_eq!(total, 3);
        let mut oriented = false;
        assert_eq!(rtlab_graph_is_oriented(g, &mut oriented), RtlabStatus::Ok);
        assert!(oriented);
        rtlab_graph_free(g);
    }
}

#[test]
fn json_round_trip() {
    let g = rainbow_cycle();
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(rtlab_graph_to_json(g, &mut text), RtlabStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(rtlab_graph_from_json(text, &mut back), RtlabStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(rtlab_graph_to_json(back, &mut again), RtlabStatus::Ok);
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(again));
        let (mut n, mut c) = (0, 0);
        assert_eq!(rtlab_graph_dims(back, &mut n, &mut c), RtlabStatus::Ok);
        assert_eq!((n, c), (3, 3));
        rtlab_string_free(text);
        rtlab_string_free(again);
        rtlab_graph_free(back);
        rtlab_graph_free(g);
    }
}

#[test]
fn construction_counts() {
    let name = CString::new("bipartite-double").unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rtlab_construct(name.as_ptr(), 6, 4, &mut g), RtlabStatus::Ok);
        for color in 1..=4 {
            let mut k = 0;
            assert_eq!(rtlab_graph_count_color(g, color, &mut k), RtlabStatus::Ok);
            assert_eq!(k, 18);
        }
        rtlab_graph_free(g);

        let bad = CString::new("no-such-graph").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(
            rtlab_construct(bad.as_ptr(), 6, 3, &mut h),
            RtlabStatus::InvalidArgument
        );
        assert!(h.is_null());
        assert!(last_error().contains("no-such-graph"));
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rtlab_graph_new(3, 3, ptr::null_mut()), RtlabStatus::NullPointer);
        assert_eq!(rtlab_graph_new(3, 65, &mut g), RtlabStatus::SizeLimit);
        let broken = CString::new("{\"n\": 3").unwrap();
        assert_eq!(rtlab_graph_from_json(broken.as_ptr(), &mut g), RtlabStatus::Parse);
        assert_eq!(rtlab_graph_from_json(ptr::null(), &mut g), RtlabStatus::NullPointer);

        let h = rainbow_cycle();
        assert_eq!(rtlab_graph_add_edge(h, 1, 1, 1), RtlabStatus::InvalidArgument);
        assert_eq!(rtlab_graph_add_edge(h, 4, 0, 1), RtlabStatus::InvalidArgument);
        assert!(last_error().contains("color"));
        let mut k = 0;
        assert_eq!(rtlab_graph_count_color(h, 0, &mut k), RtlabStatus::InvalidArgument);
        assert_eq!(rtlab_graph_total_edges(ptr::null(), &mut k), RtlabStatus::NullPointer);

        assert_eq!(rtlab_graph_total_edges(h, &mut k), RtlabStatus::Ok);
        assert!(rtlab_last_error().is_null());
        rtlab_graph_free(h);
        rtlab_graph_free(ptr::null_mut());
        rtlab_string_free(ptr::null_mut());
    }
}

#[test]
fn search_returns_exact_optimum_and_witness() {
    unsafe {
        let mut r = RtlabSearchResult::default();
        let mut w = ptr::null_mut();
        let status = rtlab_search(
            3,
            3,
            RtlabPattern::Directed,
            RtlabClass::Digraph,
            RtlabObjective::MaxTotal,
            0,
            &mut r,
            &mut w,
        );
        assert_eq!(status, RtlabStatus::Ok);
        assert!(r.exhaustive);
        let mut found = true;
        assert_eq!(
            rtlab_find_rainbow(w, RtlabPattern::Directed, &mut found, ptr::null_mut()),
            RtlabStatus::Ok
        );
        assert!(!found);
        let mut total = 0;
        assert_eq!(rtlab_graph_total_edges(w, &mut total), RtlabStatus::Ok);
        assert_eq!(total, r.optimum);
        rtlab_graph_free(w);
    }
}

#[test]
fn lemma_and_thresholds() {
    unsafe {
        let mut v = 0;
        assert_eq!(rtlab_lemma21(3, 3, &mut v), RtlabStatus::Ok);
        assert_eq!(v, 9);
        assert_eq!(rtlab_lemma21(5, 5, &mut v), RtlabStatus::SizeLimit);

        let name = CString::new("per-color-directed-c3").unwrap();
        let mut x = 0.0;
        assert_eq!(rtlab_threshold(name.as_ptr(), &mut x), RtlabStatus::Ok);
        assert!((x - 5.0 / 9.0).abs() < 1e-15);
        let name = CString::new("per-color-transitive-c3").unwrap();
        assert_eq!(rtlab_threshold(name.as_ptr(), &mut x), RtlabStatus::Ok);
        assert!((x - (52.0 - 4.0 * 7f64.sqrt()) / 81.0).abs() < 1e-15);
        let bogus = CString::new("nope").unwrap();
        assert_eq!(rtlab_threshold(bogus.as_ptr(), &mut x), RtlabStatus::InvalidArgument);
    }
}

#[test]
fn runs_a_catalogue() {
    let json = CString::new(
        r#"[{"id":"rr","source":"two lone vertices","vertices":["a","b"],
             "constraints":[{"kind":"no_rainbow","pattern":"directed"}],
             "objective":{"colors":[1,2,3],"left":[0],"right":[1]},
             "bound":{"num":6,"den":1}}]"#,
    )
    .unwrap();
    unsafe {
        let mut pass = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            rtlab_catalogue_run(json.as_ptr(), &mut pass, &mut report),
            RtlabStatus::Ok
        );
        assert!(pass);
        let text = CStr::from_ptr(report).to_str().unwrap().to_string();
        rtlab_string_free(report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["computed_max"], 6);
        assert_eq!(v[0]["status"], "tight");
    }
}
