//! C interface to `indepoly`.
//!
//! Every fallible function returns an [`IpStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`ip_last_error`]. Strings handed out by the library must be
//! released with [`ip_string_free`], graphs with [`ip_graph_free`].
//! Vertices are labeled from 1, as in the Rust API.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indepoly::arith::parse_rational;
use indepoly::chordal::{find_peo, is_chordal, PeoResult};
use indepoly::cycletools::debruijn;
use indepoly::graph::{make_complete, make_cycle, make_path, parse_graph_auto, Graph};
use indepoly::hornfit::horn_check;
use indepoly::identities::verify_identities;
use indepoly::poly::independence_polynomial;
use indepoly::series::pow_neg_s;
use indepoly::tracemonoid::count_traces;
use indepoly::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotChordal = 4,
    ResourceLimit = 5,
    InsufficientData = 6,
    Arithmetic = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

impl From<&Error> for IpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::ShapeMismatch(_) | Error::NotUnitUpperTriangular => {
                IpStatus::InvalidArgument
            }
            Error::Parse { .. } => IpStatus::Parse,
            Error::NotChordal => IpStatus::NotChordal,
            Error::ResourceLimit(_) => IpStatus::ResourceLimit,
            Error::InsufficientData { .. } => IpStatus::InsufficientData,
            Error::ZeroConstantTerm | Error::ConstantTermNotOne(_) | Error::VanishingCoefficient(_) => {
                IpStatus::Arithmetic
            }
        }
    }
}

/// Opaque graph handle.
pub struct IpGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: IpStatus, msg: impl Into<String>) -> IpStatus {
    set_error(msg);
    status
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), IpStatus>) -> IpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(IpStatus::Panic, "internal panic"),
    }
}

fn check<T>(r: indepoly::Result<T>) -> Result<T, IpStatus> {
    r.map_err(|e| fail(IpStatus::from(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), IpStatus> {
    if p.is_null() {
        Err(fail(IpStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn graph_ref<'a>(g: *const IpGraph) -> Result<&'a Graph, IpStatus> {
    non_null(g, "graph")?;
    Ok(&(*g).inner)
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, IpStatus> {
    non_null(s, what)?;
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(IpStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), IpStatus> {
    let c = CString::new(s).map_err(|_| fail(IpStatus::Panic, "interior NUL in output"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_graph(out: *mut *mut IpGraph, g: indepoly::Result<Graph>) -> Result<(), IpStatus> {
    non_null(out, "out")?;
    *out = Box::into_raw(Box::new(IpGraph { inner: check(g)? }));
    Ok(())
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ip_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ip_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Graph on `n` vertices with no edges.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_new(n: usize, out: *mut *mut IpGraph) -> IpStatus {
    guard(|| write_graph(out, Ok(Graph::with_vertices(n))))
}

/// Parses an edge list (`n` on the first line, then `u v` per line) or a
/// graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_parse(text: *const c_char, out: *mut *mut IpGraph) -> IpStatus {
    guard(|| write_graph(out, parse_graph_auto(read_str(text, "text")?)))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_cycle(n: usize, out: *mut *mut IpGraph) -> IpStatus {
    guard(|| write_graph(out, make_cycle(n)))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_path(n: usize, out: *mut *mut IpGraph) -> IpStatus {
    guard(|| write_graph(out, make_path(n)))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_complete(n: usize, out: *mut *mut IpGraph) -> IpStatus {
    guard(|| write_graph(out, make_complete(n)))
}

/// # Safety
/// `g` must be null or a graph returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_free(g: *mut IpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid graph.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_add_edge(g: *mut IpGraph, u: usize, v: usize) -> IpStatus {
    guard(|| {
        non_null(g, "graph")?;
        check((*g).inner.add_edge(u, v))
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid graph.
#[no_mangle]
pub unsafe extern "C" fn ip_graph_vertex_count(g: *const IpGraph) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).inner.vertex_count()
    }
}

/// The multivariate independence polynomial, e.g. `1+x1+x2`.
///
/// # Safety
/// `g` must be a valid graph and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_independence_polynomial(g: *const IpGraph, out: *mut *mut c_char) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        non_null(out, "out")?;
        write_string(out, independence_polynomial(g).to_string())
    })
}

/// # Safety
/// `g` must be a valid graph and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_is_chordal(g: *const IpGraph, out: *mut bool) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        non_null(out, "out")?;
        *out = is_chordal(g);
        Ok(())
    })
}

/// Writes a perfect elimination ordering into `buf` and sets `is_ordering`,
/// or, for a non-chordal graph, the vertices of an induced chordless cycle
/// with `is_ordering` false. `len` receives the number of entries; if it
/// exceeds `cap`, nothing is written and `IP_STATUS_BUFFER_TOO_SMALL` is
/// returned.
///
/// # Safety
/// `buf` must have room for `cap` entries; `len` and `is_ordering` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ip_find_peo(
    g: *const IpGraph,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
    is_ordering: *mut bool,
) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        non_null(len, "len")?;
        non_null(is_ordering, "is_ordering")?;
        let (vertices, ordering) = match find_peo(g) {
            PeoResult::Ordering(o) => (o, true),
            PeoResult::Witness(w) => (w, false),
        };
        *len = vertices.len();
        *is_ordering = ordering;
        if vertices.len() > cap {
            return Err(fail(
                IpStatus::BufferTooSmall,
                format!("need {} entries", vertices.len()),
            ));
        }
        if !vertices.is_empty() {
            non_null(buf, "buf")?;
            ptr::copy_nonoverlapping(vertices.as_ptr(), buf, vertices.len());
        }
        Ok(())
    })
}

/// Coefficients of `I(G; x)^(-s)` on the box `0 <= m_i <= order`, as JSON.
/// `s` is a rational such as `"1"` or `"-1/2"`.
///
/// # Safety
/// `g` must be a valid graph, `s` a NUL-terminated string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_expand_json(
    g: *const IpGraph,
    s: *const c_char,
    order: u32,
    out: *mut *mut c_char,
) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let s = check(parse_rational(read_str(s, "s")?))?;
        non_null(out, "out")?;
        let series = check(pow_neg_s(&independence_polynomial(g), &s, order))?;
        let j = serde_json::to_string(&series.to_json(true)).expect("series JSON serializes");
        write_string(out, j)
    })
}

/// Horn-ratio fit of the unsigned coefficients of `1/I(G; -x)` with
/// numerator and denominator degree up to `degree`, as a JSON report.
///
/// # Safety
/// `g` must be a valid graph and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_horn_check_json(
    g: *const IpGraph,
    order: u32,
    degree: u32,
    out: *mut *mut c_char,
) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        non_null(out, "out")?;
        let report = check(horn_check(g, order, degree))?;
        write_string(out, report.to_json().to_string())
    })
}

/// Number of traces with content `m` (one entry per vertex), in decimal.
///
/// # Safety
/// `g` must be a valid graph, `content` must point to `len` entries, `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_count_traces(
    g: *const IpGraph,
    content: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> IpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        non_null(out, "out")?;
        let m: &[u32] = if len == 0 {
            &[]
        } else {
            non_null(content, "content")?;
            std::slice::from_raw_parts(content, len)
        };
        write_string(out, check(count_traces(g, m))?.to_string())
    })
}

/// The de Bruijn sum `S(n, k)` in decimal.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_debruijn(n: u32, k: u32, out: *mut *mut c_char) -> IpStatus {
    guard(|| {
        non_null(out, "out")?;
        if n < 2 {
            return Err(fail(IpStatus::InvalidArgument, "n must be at least 2"));
        }
        write_string(out, debruijn(n, k).to_string())
    })
}

/// Runs the identity suite; `all_passed` reports whether every check held.
///
/// # Safety
/// `all_passed` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ip_verify_identities(all_passed: *mut bool) -> IpStatus {
    guard(|| {
        non_null(all_passed, "all_passed")?;
        *all_passed = verify_identities().iter().all(|r| r.passed);
        Ok(())
    })
}
