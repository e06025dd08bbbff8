//! C ABI over the `revdist` library.
//!
//! Every entry point returns an [`RdStatus`]; results go through out-pointers.
//! On failure the message is kept per thread and read with
//! [`rd_last_error_message`]. Handles are opaque and owned by the caller
//! until passed to the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use revdist::fatgraph::{export, ExportFormat};
use revdist::{
    bound_bg, bound_genus, bound_plane, check_conjecture, check_equivalence, exact_distance,
    fatgraph_from_signed, greedy_sort, BoundError, Fatgraph, OracleError, SignedPermutation,
};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    CapExceeded = 4,
    Disagreement = 5,
    InvalidArgument = 6,
    Internal = 7,
}

/// Export format selector for [`rd_fatgraph_export`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdFormat {
    Json = 0,
    Dot = 1,
}

/// All cycle counts and bounds of one permutation.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RdBoundReport {
    pub n: usize,
    pub c_plane: usize,
    pub c_theta: usize,
    pub c_bg: usize,
    pub bound: usize,
    pub bound_plane: usize,
    pub bound_bg: usize,
    pub bound_genus: usize,
}

/// Cell counts and genus of a fatgraph.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RdFatgraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
}

/// Opaque signed permutation.
pub struct RdSignedPerm(SignedPermutation);

/// Opaque fatgraph.
pub struct RdFatgraph(Fatgraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(RdStatus, String);

impl From<BoundError> for Fail {
    fn from(e: BoundError) -> Self {
        let status = match e {
            BoundError::Disagreement { .. } => RdStatus::Disagreement,
            _ => RdStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        let status = match e {
            OracleError::CapExceeded { .. } => RdStatus::CapExceeded,
            OracleError::BadEnv(..) => RdStatus::InvalidArgument,
            _ => RdStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `body`, recording the error message and mapping panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> RdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RdStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(RdStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a whitespace- or comma-separated permutation such as "-5 1 -3 2 4".
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_perm_parse(
    text: *const c_char,
    out: *mut *mut RdSignedPerm,
) -> RdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Fail(RdStatus::InvalidUtf8, e.to_string()))?;
        let a: SignedPermutation = s
            .parse()
            .map_err(|e: revdist::SignedPermError| Fail(RdStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(RdSignedPerm(a))))
    })
}

/// Builds a permutation from `len` signed entries.
///
/// # Safety
/// `entries` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_perm_from_array(
    entries: *const i32,
    len: usize,
    out: *mut *mut RdSignedPerm,
) -> RdStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null());
        }
        let v = std::slice::from_raw_parts(entries, len).to_vec();
        let a = SignedPermutation::new(v).map_err(|e| Fail(RdStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(RdSignedPerm(a))))
    })
}

/// Frees a permutation handle. NULL is ignored.
///
/// # Safety
/// `perm` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rd_perm_free(perm: *mut RdSignedPerm) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// Length n of the permutation, 0 for NULL.
///
/// # Safety
/// `perm` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rd_perm_len(perm: *const RdSignedPerm) -> usize {
    perm.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_bound_plane(perm: *const RdSignedPerm, out: *mut usize) -> RdStatus {
    guard(|| write_out(out, bound_plane(&deref(perm)?.0)?))
}

/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_bound_bg(perm: *const RdSignedPerm, out: *mut usize) -> RdStatus {
    guard(|| write_out(out, bound_bg(&deref(perm)?.0)?))
}

/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_bound_genus(perm: *const RdSignedPerm, out: *mut usize) -> RdStatus {
    guard(|| write_out(out, bound_genus(&deref(perm)?.0)?))
}

/// Computes all three bounds; `RD_STATUS_DISAGREEMENT` if they differ.
///
/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_check_equivalence(
    perm: *const RdSignedPerm,
    out: *mut RdBoundReport,
) -> RdStatus {
    guard(|| {
        let r = check_equivalence(&deref(perm)?.0)?;
        write_out(
            out,
            RdBoundReport {
                n: r.n,
                c_plane: r.c_plane,
                c_theta: r.c_theta,
                c_bg: r.c_bg,
                bound: r.bound,
                bound_plane: r.bound_plane,
                bound_bg: r.bound_bg,
                bound_genus: r.bound_genus,
            },
        )
    })
}

/// Whether `n` and the last entry `s_n` lie in one cycle of `p ∘ s̃`.
///
/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_check_conjecture(
    perm: *const RdSignedPerm,
    out: *mut bool,
) -> RdStatus {
    guard(|| write_out(out, check_conjecture(&deref(perm)?.0)))
}

/// Exact reversal distance by BFS. `max_n` 0 means the environment or default cap.
///
/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_exact_distance(
    perm: *const RdSignedPerm,
    max_n: usize,
    out: *mut usize,
) -> RdStatus {
    guard(|| {
        let cap = if max_n == 0 {
            revdist::oracle::max_n_from_env()?
        } else {
            max_n
        };
        write_out(out, exact_distance(&deref(perm)?.0, cap)?)
    })
}

/// Number of reversals in the greedy sorting certificate.
///
/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_greedy_sort_length(
    perm: *const RdSignedPerm,
    out: *mut usize,
) -> RdStatus {
    guard(|| write_out(out, greedy_sort(&deref(perm)?.0)?.len()))
}

/// Builds the fatgraph of a permutation.
///
/// # Safety
/// `perm` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_fatgraph_new(
    perm: *const RdSignedPerm,
    out: *mut *mut RdFatgraph,
) -> RdStatus {
    guard(|| {
        let fg = fatgraph_from_signed(&deref(perm)?.0);
        write_out(out, Box::into_raw(Box::new(RdFatgraph(fg))))
    })
}

/// Frees a fatgraph handle. NULL is ignored.
///
/// # Safety
/// `fg` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rd_fatgraph_free(fg: *mut RdFatgraph) {
    if !fg.is_null() {
        drop(Box::from_raw(fg));
    }
}

/// # Safety
/// `fg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_fatgraph_stats(
    fg: *const RdFatgraph,
    out: *mut RdFatgraphStats,
) -> RdStatus {
    guard(|| {
        let s = deref(fg)?
            .0
            .stats()
            .map_err(|e| Fail(RdStatus::Internal, e.to_string()))?;
        write_out(
            out,
            RdFatgraphStats {
                vertices: s.vertices,
                edges: s.edges,
                faces: s.faces,
                genus: s.genus,
            },
        )
    })
}

/// Renders the fatgraph; release the string with [`rd_string_free`].
///
/// # Safety
/// `fg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rd_fatgraph_export(
    fg: *const RdFatgraph,
    format: RdFormat,
    out: *mut *mut c_char,
) -> RdStatus {
    guard(|| {
        let format = match format {
            RdFormat::Json => ExportFormat::Json,
            RdFormat::Dot => ExportFormat::Dot,
        };
        let text =
            export(&deref(fg)?.0, format).map_err(|e| Fail(RdStatus::Internal, e.to_string()))?;
        let c = CString::new(text).map_err(|e| Fail(RdStatus::Internal, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
