//! C ABI over the `rtlab` toolkit.
//!
//! Every function returns an [`RtlabStatus`]; results come back through out
//! pointers. Graphs are opaque [`RtlabGraph`] handles released with
//! [`rtlab_graph_free`]. Strings returned by the library are released with
//! [`rtlab_string_free`]. After a failing call, [`rtlab_last_error`] gives a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rtlab::constructions::{ConstructionId, ConstructionSpec};
use rtlab::localbounds::{catalogue_passes, parse_catalogue, run_catalogue};
use rtlab::optcheck::{lemma21_oracle, threshold};
use rtlab::patterns::count_rainbow;
use rtlab::search::{solve, Budget, GraphClass, Objective, SearchProblem};
use rtlab::{find_rainbow, ColoredDigraph, EdgeRef, Error, TrianglePattern};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    SizeLimit = 4,
    Utf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtlabPattern {
    Directed = 0,
    Transitive = 1,
}

impl From<RtlabPattern> for TrianglePattern {
    fn from(p: RtlabPattern) -> Self {
        match p {
            RtlabPattern::Directed => TrianglePattern::Directed,
            RtlabPattern::Transitive => TrianglePattern::Transitive,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtlabClass {
    Digraph = 0,
    Oriented = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtlabObjective {
    MaxTotal = 0,
    MaxMin = 1,
}

/// Opaque colored digraph.
pub struct RtlabGraph {
    inner: ColoredDigraph,
}

/// A rainbow triangle: vertices in pattern roles and 1-based colors of the
/// edges `uv`, `vw` and the closing edge.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RtlabWitness {
    pub vertices: [u32; 3],
    pub colors: [u32; 3],
}

/// Outcome of an extremal search.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RtlabSearchResult {
    pub optimum: u64,
    pub explored: u64,
    pub exhaustive: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> RtlabStatus {
    match e {
        Error::Parse(_) | Error::MalformedScenario { .. } => RtlabStatus::Parse,
        Error::SizeCeiling { .. } | Error::TooManyColors { .. } => RtlabStatus::SizeLimit,
        _ => RtlabStatus::InvalidArgument,
    }
}

struct Fail(RtlabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RtlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RtlabStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RtlabStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(RtlabStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(RtlabStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const RtlabGraph) -> Result<&'a ColoredDigraph, Fail> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed(g: ColoredDigraph) -> *mut RtlabGraph {
    Box::into_raw(Box::new(RtlabGraph { inner: g }))
}

fn owned_string(text: String) -> *mut c_char {
    CString::new(text).expect("JSON has no nul bytes").into_raw()
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn rtlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rtlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an edgeless graph on `n` vertices with `c` colors.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_new(n: u32, c: u32, out: *mut *mut RtlabGraph) -> RtlabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = ColoredDigraph::empty(n as usize, c as usize)?;
        out.write(boxed(g));
        Ok(())
    })
}

/// Parses a graph document `{"n":..,"c":..,"edges":[[color,from,to],..]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_from_json(json: *const c_char, out: *mut *mut RtlabGraph) -> RtlabStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = ColoredDigraph::from_json(text)?;
        out.write(boxed(g));
        Ok(())
    })
}

/// Builds a named construction. `c = 0` selects the construction's fixed
/// color count.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_construct(
    name: *const c_char,
    n: u32,
    c: u32,
    out: *mut *mut RtlabGraph,
) -> RtlabStatus {
    guard(|| {
        let id: ConstructionId = str_arg(name, "name")?.parse()?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = (c != 0).then_some(c as usize);
        let g = ConstructionSpec::new(id, n as usize, c)?.build()?;
        out.write(boxed(g));
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_free(g: *mut RtlabGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Adds the edge `from -> to` in `color` (1-based).
///
/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_add_edge(g: *mut RtlabGraph, color: u32, from: u32, to: u32) -> RtlabStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.inner = g
            .inner
            .with_edge(EdgeRef::new(color as usize, from as usize, to as usize))?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a valid handle; `n` and `c` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_dims(g: *const RtlabGraph, n: *mut u32, c: *mut u32) -> RtlabStatus {
    guard(|| {
        let g = graph_arg(g)?;
        write_out(n, g.n() as u32, "n")?;
        write_out(c, g.c() as u32, "c")
    })
}

/// Number of edges of color `color` (1-based).
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_count_color(g: *const RtlabGraph, color: u32, out: *mut u64) -> RtlabStatus {
    guard(|| {
        let count = graph_arg(g)?.count_color(color as usize)?;
        write_out(out, count, "out")
    })
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_total_edges(g: *const RtlabGraph, out: *mut u64) -> RtlabStatus {
    guard(|| {
        let total = graph_arg(g)?.total_edges();
        write_out(out, total, "out")
    })
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_is_oriented(g: *const RtlabGraph, out: *mut bool) -> RtlabStatus {
    guard(|| {
        let oriented = graph_arg(g)?.is_oriented();
        write_out(out, oriented, "out")
    })
}

/// Serializes the graph; free the result with [`rtlab_string_free`].
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_graph_to_json(g: *const RtlabGraph, out: *mut *mut c_char) -> RtlabStatus {
    guard(|| {
        let text = graph_arg(g)?.to_json();
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(owned_string(text));
        Ok(())
    })
}

/// Looks for a rainbow triangle. `found` is set in every successful call;
/// `witness` may be null and is written only when one is found.
///
/// # Safety
/// `g` must be a valid handle, `found` a valid pointer, `witness` null or
/// valid.
#[no_mangle]
pub unsafe extern "C" fn rtlab_find_rainbow(
    g: *const RtlabGraph,
    pattern: RtlabPattern,
    found: *mut bool,
    witness: *mut RtlabWitness,
) -> RtlabStatus {
    guard(|| {
        let hit = find_rainbow(graph_arg(g)?, pattern.into());
        write_out(found, hit.is_some(), "found")?;
        if let (Some(w), false) = (hit, witness.is_null()) {
            witness.write(RtlabWitness {
                vertices: w.vertices.map(|v| v as u32),
                colors: w.edges.map(|e| e.color as u32),
            });
        }
        Ok(())
    })
}

/// Number of rainbow triangles of the pattern.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_count_rainbow(
    g: *const RtlabGraph,
    pattern: RtlabPattern,
    out: *mut u64,
) -> RtlabStatus {
    guard(|| {
        let count = count_rainbow(graph_arg(g)?, pattern.into());
        write_out(out, count, "out")
    })
}

/// Exact extremal search. `max_nodes = 0` means no node limit. `witness`
/// may be null; otherwise it receives a new handle for the best graph.
///
/// # Safety
/// `out` must be a valid pointer, `witness` null or valid.
#[no_mangle]
pub unsafe extern "C" fn rtlab_search(
    n: u32,
    c: u32,
    pattern: RtlabPattern,
    class: RtlabClass,
    objective: RtlabObjective,
    max_nodes: u64,
    out: *mut RtlabSearchResult,
    witness: *mut *mut RtlabGraph,
) -> RtlabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let class = match class {
            RtlabClass::Digraph => GraphClass::Digraph,
            RtlabClass::Oriented => GraphClass::Oriented,
        };
        let objective = match objective {
            RtlabObjective::MaxTotal => Objective::MaxTotal,
            RtlabObjective::MaxMin => Objective::MaxMin,
        };
        let problem = SearchProblem::new(n as usize, c as usize, pattern.into(), class, objective);
        let budget = if max_nodes == 0 {
            Budget::unlimited()
        } else {
            Budget::nodes(max_nodes)
        };
        let r = solve(&problem, budget)?;
        out.write(RtlabSearchResult {
            optimum: r.optimum,
            explored: r.explored,
            exhaustive: r.exhaustive,
        });
        if !witness.is_null() {
            witness.write(boxed(r.witness));
        }
        Ok(())
    })
}

/// Runs a scenario catalogue (JSON array). `report` receives the per-entry
/// results as JSON; free it with [`rtlab_string_free`].
///
/// # Safety
/// `json` must be a nul-terminated string; `pass` and `report` valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn rtlab_catalogue_run(
    json: *const c_char,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> RtlabStatus {
    guard(|| {
        let entries = parse_catalogue(str_arg(json, "json")?)?;
        if pass.is_null() || report.is_null() {
            return Err(null("out"));
        }
        let results = run_catalogue(&entries)?;
        pass.write(catalogue_passes(&results));
        let text = serde_json::to_string(&results).expect("results serialize");
        report.write(owned_string(text));
        Ok(())
    })
}

/// Maximum edge count on `A ⊎ B` with no triangle meeting both sides.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_lemma21(a: u32, b: u32, out: *mut u64) -> RtlabStatus {
    guard(|| {
        let value = lemma21_oracle(a as usize, b as usize)?;
        write_out(out, value, "out")
    })
}

/// Decimal value of a named threshold constant.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rtlab_threshold(name: *const c_char, out: *mut f64) -> RtlabStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let t =
            threshold(name).ok_or_else(|| Fail(RtlabStatus::InvalidArgument, format!("unknown threshold `{name}`")))?;
        write_out(out, t.value.to_f64(), "out")
    })
}
