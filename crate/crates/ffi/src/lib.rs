//! C ABI over `seidel-core`.
//!
//! Conventions:
//! * every fallible call returns a [`SeidelStatus`]; on failure the message
//!   is available from [`seidel_last_error_message`] on the same thread;
//! * graphs are opaque handles released with [`seidel_graph_free`];
//! * strings returned through out-pointers are released with
//!   [`seidel_string_free`];
//! * array results are written into caller buffers. `written` always
//!   receives the full length, so a call with `len = 0` sizes the buffer.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use seidel_core::io::{write_document, GraphDocument};
use seidel_core::strength::scan_to_csv;
use seidel_core::{
    adjacency_matrix, brute_force_isomorphic, density_from_graph, lq_switch, parse_document,
    schmidt_coefficients, seidel_matrix, spectrum, strength_scan, switch, von_neumann_entropy,
    Bipartition, Error, SeidelPartition, SpectralKind, WeightedDigraph,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeidelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Domain = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeidelKind {
    Adjacency = 0,
    Laplacian = 1,
    Signless = 2,
}

/// Opaque graph handle: a weighted digraph and its optional partition.
pub struct SeidelGraph {
    graph: WeightedDigraph,
    partition: Option<SeidelPartition>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(SeidelStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Io(_) => SeidelStatus::Parse,
            _ => SeidelStatus::Domain,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SeidelStatus::NullPointer, format!("{what} is null"))
}

fn run(f: impl FnOnce() -> Result<(), Fail>) -> SeidelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            SeidelStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SeidelStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SeidelGraph) -> Result<&'a SeidelGraph, Fail> {
    g.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn fill(values: &[f64], buf: *mut f64, len: usize, written: *mut usize) -> Result<(), Fail> {
    put(written, values.len())?;
    if values.len() > len {
        return Err(Fail(
            SeidelStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn new_handle(graph: WeightedDigraph, partition: Option<SeidelPartition>) -> *mut SeidelGraph {
    Box::into_raw(Box::new(SeidelGraph { graph, partition }))
}

fn partition_of(g: &SeidelGraph) -> Result<&SeidelPartition, Fail> {
    g.partition.as_ref().ok_or_else(|| {
        Fail(
            SeidelStatus::InvalidArgument,
            "graph has no partition".to_string(),
        )
    })
}

/// Kinds cross the boundary as plain integers so that out-of-range values
/// from C are rejected instead of being undefined behaviour.
fn decode_kind(kind: u32) -> Result<SeidelKind, Fail> {
    match kind {
        0 => Ok(SeidelKind::Adjacency),
        1 => Ok(SeidelKind::Laplacian),
        2 => Ok(SeidelKind::Signless),
        other => Err(Fail(
            SeidelStatus::InvalidArgument,
            format!("unknown kind {other}"),
        )),
    }
}

fn spectral_kind(kind: u32) -> Result<SpectralKind, Fail> {
    match decode_kind(kind)? {
        SeidelKind::Laplacian => Ok(SpectralKind::Laplacian),
        SeidelKind::Signless => Ok(SpectralKind::SignlessLaplacian),
        SeidelKind::Adjacency => Err(Fail(
            SeidelStatus::InvalidArgument,
            "adjacency kind is not valid here".to_string(),
        )),
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn seidel_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON graph document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_graph_from_json(
    json: *const c_char,
    out: *mut *mut SeidelGraph,
) -> SeidelStatus {
    run(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Fail(SeidelStatus::Parse, "json is not valid UTF-8".to_string()))?;
        let doc = parse_document(text)?;
        let handle = new_handle(doc.graph()?, doc.seidel_partition()?);
        put(out, handle)
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seidel_graph_free(g: *mut SeidelGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn seidel_graph_order(g: *const SeidelGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.order())
}

/// Number of stored directed edges, loops included; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn seidel_graph_edge_count(g: *const SeidelGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Canonical JSON document of the graph; free with [`seidel_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_graph_to_json(
    g: *const SeidelGraph,
    out: *mut *mut c_char,
) -> SeidelStatus {
    run(|| {
        let g = graph_ref(g)?;
        let mut doc = GraphDocument::from_graph(&g.graph);
        if let Some(p) = &g.partition {
            doc = doc.with_partition(p);
        }
        let s = CString::new(write_document(&doc)).expect("documents contain no NUL");
        put(out, s.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn seidel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Seidel switch of the adjacency matrix using the graph's partition.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_switch(
    g: *const SeidelGraph,
    out: *mut *mut SeidelGraph,
) -> SeidelStatus {
    run(|| {
        let g = graph_ref(g)?;
        let part = partition_of(g)?;
        let switched = switch(&g.graph, part)?;
        put(out, new_handle(switched, Some(part.clone())))
    })
}

/// Laplacian or signless-Laplacian switch of a starlike graph; `kind` is a
/// [`SeidelKind`] value.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_lq_switch(
    g: *const SeidelGraph,
    kind: u32,
    out: *mut *mut SeidelGraph,
) -> SeidelStatus {
    run(|| {
        let g = graph_ref(g)?;
        let part = partition_of(g)?;
        let switched = lq_switch(&g.graph, part, spectral_kind(kind)?)?;
        put(out, new_handle(switched, Some(part.clone())))
    })
}

/// Ascending spectrum of A, L or Q of a symmetric graph; `kind` is a
/// [`SeidelKind`] value.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `len` doubles; `written`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_spectrum(
    g: *const SeidelGraph,
    kind: u32,
    buf: *mut f64,
    len: usize,
    written: *mut usize,
) -> SeidelStatus {
    run(|| {
        let g = graph_ref(g)?;
        let m = match decode_kind(kind)? {
            SeidelKind::Adjacency => adjacency_matrix(&g.graph),
            _ => spectral_kind(kind)?.matrix(&g.graph)?,
        };
        let s = spectrum(&m)?;
        fill(s.eigenvalues(), buf, len, written)
    })
}

/// von Neumann entropy (bits) of `L/tr(L)` or `Q/tr(Q)`; `kind` is
/// [`SeidelKind`] Laplacian or Signless.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_entropy(
    g: *const SeidelGraph,
    kind: u32,
    out: *mut f64,
) -> SeidelStatus {
    run(|| {
        let g = graph_ref(g)?;
        let rho = density_from_graph(&g.graph, spectral_kind(kind)?)?;
        put(out, von_neumann_entropy(&rho))
    })
}

/// Operator Schmidt coefficients of `U_order` across `m x n`, descending.
///
/// # Safety
/// `buf` must hold `len` doubles; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_schmidt_coefficients(
    order: usize,
    m: usize,
    n: usize,
    buf: *mut f64,
    len: usize,
    written: *mut usize,
) -> SeidelStatus {
    run(|| {
        let u = seidel_matrix(order)?;
        let p = schmidt_coefficients(&u, Bipartition::new(m, n))?;
        fill(&p.coefficients, buf, len, written)
    })
}

/// `K_Sch` and `K_WZ` of `U_order` across `m x n`.
///
/// # Safety
/// `k_sch` and `k_wz` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_operator_strength(
    order: usize,
    m: usize,
    n: usize,
    k_sch: *mut f64,
    k_wz: *mut f64,
) -> SeidelStatus {
    run(|| {
        let u = seidel_matrix(order)?;
        let p = schmidt_coefficients(&u, Bipartition::new(m, n))?;
        put(k_sch, p.k_sch)?;
        put(k_wz, p.k_wz)
    })
}

/// Strength table as CSV text; free with [`seidel_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_strength_scan_csv(
    max_order: usize,
    include_blocks: bool,
    out: *mut *mut c_char,
) -> SeidelStatus {
    run(|| {
        let rows = strength_scan(max_order, include_blocks)?;
        let csv = CString::new(scan_to_csv(&rows)).expect("csv contains no NUL");
        put(out, csv.into_raw())
    })
}

/// Exhaustive isomorphism test for graphs of order at most 12.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn seidel_is_isomorphic(
    a: *const SeidelGraph,
    b: *const SeidelGraph,
    out: *mut bool,
) -> SeidelStatus {
    run(|| {
        let (a, b) = (graph_ref(a)?, graph_ref(b)?);
        put(out, brute_force_isomorphic(&a.graph, &b.graph)?)
    })
}
