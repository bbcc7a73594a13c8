//! C ABI over `treespec`.
//!
//! Trees and enumerators are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`TsStatus`]; on failure
//! [`ts_last_error_message`] describes the error for the calling thread.
//! Rationals cross the boundary as `"p/q"` strings. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`ts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treespec::graph::{enumerate_free_trees_with_max, parse_edge_list, FreeTrees, DEFAULT_MAX_ENUM_ORDER};
use treespec::{canonical_code, check_conjecture, count, diagonalize, m_interval, root_at, MatrixKind, Scalar, Tree};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidTree = 4,
    InvalidArgument = 5,
    Exhausted = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsMatrixKind {
    Adjacency = 0,
    Laplacian = 1,
}

impl From<TsMatrixKind> for MatrixKind {
    fn from(k: TsMatrixKind) -> Self {
        match k {
            TsMatrixKind::Adjacency => MatrixKind::Adjacency,
            TsMatrixKind::Laplacian => MatrixKind::Laplacian,
        }
    }
}

/// Eigenvalues greater than, less than and equal to a threshold.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TsCounts {
    pub greater: usize,
    pub less: usize,
    pub multiplicity: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TsConjecture {
    pub holds: bool,
    pub m: usize,
    pub threshold: usize,
}

/// Opaque tree handle.
pub struct TsTree {
    tree: Tree,
}

/// Opaque stream of free trees of one order.
pub struct TsEnumerator {
    inner: FreeTrees,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TsStatus, String);

type Outcome<T> = Result<T, Failure>;

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard<F: FnOnce() -> Outcome<()>>(f: F) -> TsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            TsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TsStatus::NullPointer, format!("{} is null", what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TsStatus::InvalidUtf8, format!("{} is not UTF-8", what)))
}

unsafe fn read_scalar(p: *const c_char, what: &str) -> Outcome<Scalar> {
    read_str(p, what)?.parse().map_err(|e| Failure(TsStatus::InvalidArgument, format!("{}: {}", what, e)))
}

unsafe fn tree_ref<'a>(t: *const TsTree) -> Outcome<&'a Tree> {
    t.as_ref().map(|h| &h.tree).ok_or_else(|| null("tree"))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Outcome<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn boxed(tree: Tree) -> *mut TsTree {
    Box::into_raw(Box::new(TsTree { tree }))
}

/// Library version, as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a line-oriented edge list (`u v` per line, `#` comments, ids
/// 0-based or 1-based).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_from_edge_list(text: *const c_char, out: *mut *mut TsTree) -> TsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let t = parse_edge_list(text).map_err(|e| Failure(TsStatus::ParseError, e.to_string()))?;
        write_out(out, boxed(t), "out")
    })
}

/// Builds a tree on `n` vertices from `m` edges `(us[i], vs[i])`.
///
/// # Safety
/// `us` and `vs` must point to `m` readable elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_from_edges(
    n: usize,
    us: *const usize,
    vs: *const usize,
    m: usize,
    out: *mut *mut TsTree,
) -> TsStatus {
    guard(|| {
        let edges: Vec<(usize, usize)> = if m == 0 {
            Vec::new()
        } else {
            if us.is_null() || vs.is_null() {
                return Err(null("edge array"));
            }
            let us = std::slice::from_raw_parts(us, m);
            let vs = std::slice::from_raw_parts(vs, m);
            us.iter().copied().zip(vs.iter().copied()).collect()
        };
        let t = Tree::from_edges(n, &edges).map_err(|e| Failure(TsStatus::InvalidTree, e.to_string()))?;
        write_out(out, boxed(t), "out")
    })
}

/// Builds a tree from a canonical level sequence such as `"0,1,2,1"`.
///
/// # Safety
/// `code` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_from_code(code: *const c_char, out: *mut *mut TsTree) -> TsStatus {
    guard(|| {
        let code: treespec::CanonicalCode = read_str(code, "code")?
            .parse()
            .map_err(|e: treespec::TreeError| Failure(TsStatus::ParseError, e.to_string()))?;
        let t = code.to_tree().map_err(|e| Failure(TsStatus::InvalidTree, e.to_string()))?;
        write_out(out, boxed(t), "out")
    })
}

/// # Safety
/// `tree` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_free(tree: *mut TsTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `tree` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_order(tree: *const TsTree) -> usize {
    tree.as_ref().map_or(0, |t| t.tree.order())
}

/// Canonical code of the tree; free the result with [`ts_string_free`].
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_tree_canonical_code(tree: *const TsTree, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        write_out(out, into_c_string(canonical_code(t).to_string()), "out")
    })
}

/// Eigenvalue counts relative to `alpha`.
///
/// # Safety
/// `tree` must be a live handle, `alpha` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ts_count(
    tree: *const TsTree,
    kind: TsMatrixKind,
    alpha: *const c_char,
    out: *mut TsCounts,
) -> TsStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let alpha = read_scalar(alpha, "alpha")?;
        let c = count(t, kind.into(), &alpha);
        write_out(out, TsCounts { greater: c.greater, less: c.less, multiplicity: c.multiplicity }, "out")
    })
}

/// Number of eigenvalues in `[a, b)`.
///
/// # Safety
/// `tree` must be a live handle, `a` and `b` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_m_interval(
    tree: *const TsTree,
    kind: TsMatrixKind,
    a: *const c_char,
    b: *const c_char,
    out: *mut usize,
) -> TsStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let (a, b) = (read_scalar(a, "a")?, read_scalar(b, "b")?);
        let c = m_interval(t, &a, &b, kind.into()).map_err(|e| Failure(TsStatus::InvalidArgument, e.to_string()))?;
        write_out(out, c.count, "out")
    })
}

/// Diagonalizes `M + xI` rooted at `root` and writes a JSON object with the
/// per-vertex values and the inertia. Free the result with
/// [`ts_string_free`].
///
/// # Safety
/// `tree` must be a live handle, `x` a NUL-terminated string and `out_json`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ts_diagonalize(
    tree: *const TsTree,
    kind: TsMatrixKind,
    x: *const c_char,
    root: usize,
    out_json: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let x = read_scalar(x, "x")?;
        let rt = root_at(t, root).map_err(|e| Failure(TsStatus::InvalidArgument, e.to_string()))?;
        let d = diagonalize(&rt, kind.into(), &x);
        let json = serde_json::to_string(&d).map_err(|e| Failure(TsStatus::Panic, e.to_string()))?;
        write_out(out_json, into_c_string(json), "out_json")
    })
}

/// Whether at least `ceil(n/2)` Laplacian eigenvalues lie below the average
/// degree. Needs at least 2 vertices.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_check_conjecture(tree: *const TsTree, out: *mut TsConjecture) -> TsStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let c = check_conjecture(t).map_err(|e| Failure(TsStatus::InvalidArgument, e.to_string()))?;
        write_out(out, TsConjecture { holds: c.holds, m: c.m, threshold: c.threshold }, "out")
    })
}

/// Starts enumerating the free trees of order `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_enumerator_new(n: usize, out: *mut *mut TsEnumerator) -> TsStatus {
    guard(|| {
        let inner = enumerate_free_trees_with_max(n, DEFAULT_MAX_ENUM_ORDER)
            .map_err(|e| Failure(TsStatus::InvalidArgument, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(TsEnumerator { inner })), "out")
    })
}

/// Writes the next tree to `out`, or returns `TS_STATUS_EXHAUSTED` once the
/// stream ends.
///
/// # Safety
/// `e` must be a live enumerator and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_enumerator_next(e: *mut TsEnumerator, out: *mut *mut TsTree) -> TsStatus {
    guard(|| {
        let e = e.as_mut().ok_or_else(|| null("enumerator"))?;
        match e.inner.next() {
            Some(t) => write_out(out, boxed(t), "out"),
            None => Err(Failure(TsStatus::Exhausted, "enumeration finished".to_string())),
        }
    })
}

/// # Safety
/// `e` must be NULL or an enumerator from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_enumerator_free(e: *mut TsEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}
