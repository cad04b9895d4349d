//! C ABI over `cube-orient`.
//!
//! Orientations cross the boundary as opaque `CubeOrientation` handles that
//! the caller releases with `cube_orientation_free`. Every fallible call
//! returns a `CubeStatus`; on failure a description is kept per thread and
//! can be fetched with `cube_last_error_message`. Strings returned by the
//! library must be released with `cube_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cube_orient::connectivity::{
    is_strongly_k_node_connected, strongly_connected, undirected_node_connectivity,
};
use cube_orient::cube::{Dim, NodeSet, Orientation};
use cube_orient::error::CubeError;
use cube_orient::{format, isoperimetry, orient};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DimOutOfRange = 3,
    NotEulerian = 4,
    Infeasible = 5,
    LengthMismatch = 6,
    Parse = 7,
    Overflow = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

impl From<&CubeError> for CubeStatus {
    fn from(e: &CubeError) -> Self {
        match e {
            CubeError::DimOutOfRange(_) => CubeStatus::DimOutOfRange,
            CubeError::NodeOutOfRange { .. } | CubeError::InvalidInput(_) => CubeStatus::InvalidInput,
            CubeError::NotEulerian(_) => CubeStatus::NotEulerian,
            CubeError::Infeasible(_) => CubeStatus::Infeasible,
            CubeError::LengthMismatch { .. } => CubeStatus::LengthMismatch,
            CubeError::Parse(_) => CubeStatus::Parse,
            CubeError::Overflow(_) => CubeStatus::Overflow,
        }
    }
}

/// Opaque orientation handle.
pub struct CubeOrientation {
    inner: Orientation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: CubeStatus, msg: impl Into<String>) -> CubeStatus {
    set_last_error(msg);
    status
}

fn from_error(e: CubeError) -> CubeStatus {
    fail(CubeStatus::from(&e), e.to_string())
}

/// Runs `f`, mapping panics to `CubeStatus::Panic`.
fn guarded(f: impl FnOnce() -> Result<(), CubeStatus>) -> CubeStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CubeStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(CubeStatus::Panic, "panic inside cube-orient"),
    }
}

fn lift<T>(r: cube_orient::Result<T>) -> Result<T, CubeStatus> {
    r.map_err(from_error)
}

unsafe fn handle<'a>(h: *const CubeOrientation) -> Result<&'a Orientation, CubeStatus> {
    h.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(CubeStatus::NullPointer, "null orientation handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), CubeStatus> {
    if out.is_null() {
        return Err(fail(CubeStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_handle(out: *mut *mut CubeOrientation, o: Orientation) -> Result<(), CubeStatus> {
    if out.is_null() {
        return Err(fail(CubeStatus::NullPointer, "null output pointer"));
    }
    out.write(Box::into_raw(Box::new(CubeOrientation { inner: o })));
    Ok(())
}

fn dim(d: u32) -> Result<Dim, CubeStatus> {
    lift(Dim::new(d))
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `cap`). Returns the full message length
/// excluding the terminator, or 0 when there is no pending error.
#[no_mangle]
pub unsafe extern "C" fn cube_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Eulerian orientation of `Q_d` following an Euler circuit (`d` even).
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_euler_tour(
    d: u32,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| emit_handle(out, lift(orient::euler_tour_orientation(dim(d)?))?))
}

/// Eulerian orientation after `steps` seeded random cycle reversals.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_random_eulerian(
    d: u32,
    seed: u64,
    steps: u64,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| {
        let cfg = orient::SamplerConfig::new(seed, steps);
        emit_handle(out, lift(orient::random_eulerian_orientation(dim(d)?, &cfg))?)
    })
}

/// The recursive strongly `k`-node connected orientation of `Q_{2k}`.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_inductive(
    k: u32,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| emit_handle(out, lift(orient::inductive_good_orientation(k))?))
}

/// Decodes the packed edge-direction bit stream of `Q_d`.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_from_bytes(
    d: u32,
    bytes: *const u8,
    len: usize,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| {
        if bytes.is_null() && len > 0 {
            return Err(fail(CubeStatus::NullPointer, "null byte buffer"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(bytes, len) };
        emit_handle(out, lift(Orientation::from_bytes(slice, dim(d)?))?)
    })
}

/// Parses a `CUBEORIENT v1` document.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_from_text(
    text: *const c_char,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| {
        if text.is_null() {
            return Err(fail(CubeStatus::NullPointer, "null text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(CubeStatus::Parse, "text is not UTF-8"))?;
        emit_handle(out, lift(format::from_text(s))?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cube_orientation_free(h: *mut CubeOrientation) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cube_orientation_clone(
    h: *const CubeOrientation,
    out: *mut *mut CubeOrientation,
) -> CubeStatus {
    guarded(|| emit_handle(out, handle(h)?.clone()))
}

/// Dimension of the cube, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_dim(h: *const CubeOrientation) -> u32 {
    h.as_ref().map_or(0, |h| h.inner.dim().get())
}

/// Serialized length in bytes, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_byte_len(h: *const CubeOrientation) -> usize {
    h.as_ref()
        .map_or(0, |h| Orientation::serialized_len(h.inner.dim()))
}

/// Writes the packed bit stream into `buf`. `written` receives the required
/// length even when `cap` is too small.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_to_bytes(
    h: *const CubeOrientation,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> CubeStatus {
    guarded(|| {
        let bytes = handle(h)?.to_bytes();
        if !written.is_null() {
            written.write(bytes.len());
        }
        if cap < bytes.len() {
            return Err(fail(
                CubeStatus::BufferTooSmall,
                format!("need {} bytes, buffer holds {cap}", bytes.len()),
            ));
        }
        if buf.is_null() {
            return Err(fail(CubeStatus::NullPointer, "null output buffer"));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
        Ok(())
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// `CUBEORIENT v1` text for the orientation; NULL on error. Free with
/// `cube_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_to_text(h: *const CubeOrientation) -> *mut c_char {
    clear_last_error();
    match handle(h) {
        Ok(o) => into_c_string(format::to_text(o)),
        Err(_) => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn cube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cube_orientation_is_eulerian(
    h: *const CubeOrientation,
    out: *mut bool,
) -> CubeStatus {
    guarded(|| write_out(out, handle(h)?.is_eulerian()))
}

#[no_mangle]
pub unsafe extern "C" fn cube_orientation_is_smooth(
    h: *const CubeOrientation,
    out: *mut bool,
) -> CubeStatus {
    guarded(|| write_out(out, handle(h)?.is_smooth()))
}

/// Whether the arc `u -> v` is present.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_has_arc(
    h: *const CubeOrientation,
    u: u32,
    v: u32,
    out: *mut bool,
) -> CubeStatus {
    guarded(|| {
        let o = handle(h)?;
        lift(o.dim().check_node(u))?;
        lift(o.dim().check_node(v))?;
        write_out(out, o.has_arc(u, v))
    })
}

/// Strong connectivity after deleting the `deleted_len` nodes in `deleted`.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_strongly_connected(
    h: *const CubeOrientation,
    deleted: *const u32,
    deleted_len: usize,
    out: *mut bool,
) -> CubeStatus {
    guarded(|| {
        let o = handle(h)?;
        if deleted.is_null() && deleted_len > 0 {
            return Err(fail(CubeStatus::NullPointer, "null deleted-node array"));
        }
        let nodes = if deleted_len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(deleted, deleted_len)
        };
        let z = lift(NodeSet::from_nodes(o.dim(), nodes.iter().copied()))?;
        write_out(out, lift(strongly_connected(o, &z))?)
    })
}

/// Verdict of the exhaustive strong `k`-node connectivity check.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_strongly_k_connected(
    h: *const CubeOrientation,
    k: u32,
    out: *mut bool,
) -> CubeStatus {
    guarded(|| write_out(out, lift(is_strongly_k_node_connected(handle(h)?, k))?.verdict))
}

/// The full connectivity report as JSON
/// (`{verdict, k, witness_deleted, witness_side}`); NULL on error. Free with
/// `cube_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cube_orientation_connectivity_report_json(
    h: *const CubeOrientation,
    k: u32,
) -> *mut c_char {
    let mut json = None;
    let status = guarded(|| {
        let report = lift(is_strongly_k_node_connected(handle(h)?, k))?;
        json = Some(serde_json::to_string(&report).expect("report serializes"));
        Ok(())
    });
    match (status, json) {
        (CubeStatus::Ok, Some(s)) => into_c_string(s),
        _ => ptr::null_mut(),
    }
}

/// Number of Eulerian orientations of `Q_d` (`d` in {2, 4}).
#[no_mangle]
pub unsafe extern "C" fn cube_count_eulerian_orientations(d: u32, out: *mut u64) -> CubeStatus {
    guarded(|| write_out(out, lift(orient::enumerate_eulerian_orientations(dim(d)?, |_| {}))?))
}

/// Node connectivity of the undirected `Q_d` (`d <= 6`).
#[no_mangle]
pub unsafe extern "C" fn cube_undirected_node_connectivity(d: u32, out: *mut u32) -> CubeStatus {
    guarded(|| write_out(out, lift(undirected_node_connectivity(dim(d)?))?))
}

/// Harper's `b_v(m, Q_n)`.
#[no_mangle]
pub unsafe extern "C" fn cube_harper_bv(m: u64, n: u32, out: *mut u64) -> CubeStatus {
    guarded(|| write_out(out, lift(isoperimetry::harper_bv(m, n))?))
}

/// The cascade representation of `m` in `Q_n`: writes `r`, `m'` and the
/// number of terms; if `terms` is non-null and `terms_cap` large enough, the
/// `(m_j, j)` pairs are written to it flattened, `j` descending.
#[no_mangle]
pub unsafe extern "C" fn cube_cascade_representation(
    m: u64,
    n: u32,
    r: *mut u32,
    m_prime: *mut u64,
    terms: *mut u32,
    terms_cap: usize,
    term_count: *mut usize,
) -> CubeStatus {
    guarded(|| {
        let rep = lift(isoperimetry::cascade_representation(m, n))?;
        write_out(r, rep.r)?;
        write_out(m_prime, rep.m_prime)?;
        write_out(term_count, rep.terms.len())?;
        if !terms.is_null() {
            if terms_cap < 2 * rep.terms.len() {
                return Err(fail(
                    CubeStatus::BufferTooSmall,
                    format!("need {} slots, buffer holds {terms_cap}", 2 * rep.terms.len()),
                ));
            }
            for (i, &(mj, j)) in rep.terms.iter().enumerate() {
                terms.add(2 * i).write(mj);
                terms.add(2 * i + 1).write(j);
            }
        }
        Ok(())
    })
}
