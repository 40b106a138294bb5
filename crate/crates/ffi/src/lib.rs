//! C ABI over `invdeg`.
//!
//! Graphs are opaque `InvdegGraph` handles released with
//! `invdeg_graph_free`. Every fallible call returns an `InvdegStatus`;
//! on failure `invdeg_last_error` describes the error for the calling
//! thread. Strings handed out by the library are NUL-terminated UTF-8 and
//! must be released with `invdeg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use invdeg::{certify, families, io, lowerbound, planarity, rational, search, Error, Graph};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvdegStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Disconnected = 4,
    NotPlanar = 5,
    Precondition = 6,
    Utf8 = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct InvdegGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> InvdegStatus {
    match e {
        Error::Parse(_) => InvdegStatus::Parse,
        Error::Disconnected => InvdegStatus::Disconnected,
        Error::NotPlanar => InvdegStatus::NotPlanar,
        Error::Precondition(_) | Error::IsolatedVertex(_) => InvdegStatus::Precondition,
        _ => InvdegStatus::InvalidArgument,
    }
}

struct Failure(InvdegStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(InvdegStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> InvdegStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => InvdegStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            InvdegStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const InvdegGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_graph(out: *mut *mut InvdegGraph, graph: Graph) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(InvdegGraph { graph })))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(InvdegStatus::Utf8, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(InvdegStatus::Utf8, "input is not valid UTF-8".into()))
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("report serializes")
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn invdeg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn invdeg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m`
/// consecutive endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable `size_t` values (or be null when
/// `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut InvdegGraph,
) -> InvdegStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        write_graph(out, Graph::new(n, &pairs)?)
    })
}

/// Parses the text format: a header `n m` then `m` lines `u v`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_from_text(text: *const c_char, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, io::from_text(read_str(text)?)?))
}

/// Parses a graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_from_graph6(text: *const c_char, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, io::from_graph6(read_str(text)?)?))
}

/// Renders a graph in the text format.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_to_text(g: *const InvdegGraph, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, io::to_text(graph_ref(g)?)))
}

/// Renders a graph as graph6.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_to_graph6(g: *const InvdegGraph, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, io::to_graph6(graph_ref(g)?)))
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_free(g: *mut InvdegGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_vertex_count(g: *const InvdegGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_edge_count(g: *const InvdegGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// Diameter of a connected graph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_diameter(g: *const InvdegGraph, out: *mut usize) -> InvdegStatus {
    guard(|| write_out(out, graph_ref(g)?.diameter_value()?))
}

/// Inverse degree as a fraction string `"p/q"`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_inverse_degree(g: *const InvdegGraph, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| {
        let r = graph_ref(g)?.inverse_degree()?;
        write_string(out, rational::to_fraction_string(&r))
    })
}

/// Planarity test; the verdict is certified by an embedding or a
/// Kuratowski subgraph before it is returned.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_graph_is_planar(g: *const InvdegGraph, out: *mut bool) -> InvdegStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let verdict = planarity::is_planar(g);
        verdict
            .verify(g)
            .map_err(|e| Failure(InvdegStatus::Panic, format!("planarity certificate rejected: {e}")))?;
        write_out(out, verdict.is_planar())
    })
}

/// `L_n` for even `n >= 4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_l(n: usize, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_l(n)?))
}

/// `T_n` for `n >= 6` divisible by 3.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_t(n: usize, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_t(n)?))
}

/// The path on `n >= 1` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_path(n: usize, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_path(n)?))
}

/// `L_{2n/3}` with a pendant path of `n/3` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_l_with_tail(n: usize, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_l_with_tail(n)?))
}

/// Triangulated chain with a pendant path, aimed at `n` vertices and `m`
/// edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_t_with_tail(n: usize, m: usize, out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_t_with_tail(n, m)?.graph))
}

/// `K5` minus one edge.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_gen_k5_minus(out: *mut *mut InvdegGraph) -> InvdegStatus {
    guard(|| write_graph(out, families::gen_k5_minus()))
}

/// The four diameter bounds with exact slacks, as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_check_bounds_json(g: *const InvdegGraph, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&certify::check_bounds(graph_ref(g)?)?)))
}

/// (★) grid verification up to `x_max`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_certify_star_json(x_max: u64, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&certify::verify_star_grid(x_max)?)))
}

/// (★) tail verification up to `x_max`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_certify_tail_json(x_max: u64, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&certify::verify_star_tail(x_max))))
}

/// (✠) values for the 14 pairs, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_certify_maltese_json(out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&certify::maltese_report())))
}

/// Certification digraph and its shortest path, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_certify_dp_json(out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&lowerbound::digraph_report())))
}

/// Exhaustive small-graph verification for `1 <= n_max <= 9`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn invdeg_search_json(n_max: usize, out: *mut *mut c_char) -> InvdegStatus {
    guard(|| write_string(out, json(&search::verify_small_graphs(n_max)?)))
}
