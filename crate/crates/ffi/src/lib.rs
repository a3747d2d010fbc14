//! C interface to `coxdec`.
//!
//! Matrices are opaque handles built from the JSON matrix document.  Results
//! that carry structure come back as JSON strings owned by the library and
//! released with `coxdec_string_free`.  Every call returns a `CoxdecStatus`;
//! on failure `coxdec_last_error` describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxdec::diagrams::{classify_diagram, CoxeterMatrix, DiagramClass};
use coxdec::docs::parse_matrix;
use coxdec::engine::{theorem_check, Bounds, EngineError, SubgroupSpec};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxdecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    BoundExceeded = 4,
    Panic = 5,
}

/// Opaque Coxeter matrix.
pub struct CoxdecMatrix {
    inner: CoxeterMatrix,
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

struct Fail(CoxdecStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CoxdecStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CoxdecStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            CoxdecStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CoxdecStatus::NullPointer, "null string".into()));
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| Fail(CoxdecStatus::InvalidUtf8, e.to_string()))
}

unsafe fn matrix<'a>(m: *const CoxdecMatrix) -> Result<&'a CoxeterMatrix, Fail> {
    // SAFETY: non-null handles come from coxdec_matrix_from_json.
    unsafe { m.as_ref() }
        .map(|m| &m.inner)
        .ok_or_else(|| Fail(CoxdecStatus::NullPointer, "null matrix handle".into()))
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            CoxdecStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    // SAFETY: checked non-null; caller provides writable storage.
    unsafe { out.write(value) };
    Ok(())
}

fn write_json(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Fail> {
    let s = CString::new(v.to_string()).map_err(|e| Fail(CoxdecStatus::Panic, e.to_string()))?;
    write_out(out, s.into_raw())
}

fn invalid(e: impl ToString) -> Fail {
    Fail(CoxdecStatus::InvalidInput, e.to_string())
}

/// Parses a matrix document.  Release the handle with `coxdec_matrix_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxdec_matrix_from_json(
    json: *const c_char,
    out: *mut *mut CoxdecMatrix,
) -> CoxdecStatus {
    guard(|| {
        let text = unsafe { read_str(json)? };
        let inner = parse_matrix(text).map_err(invalid)?;
        write_out(out, Box::into_raw(Box::new(CoxdecMatrix { inner })))
    })
}

/// # Safety
/// `m` must be null or a handle from `coxdec_matrix_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxdec_matrix_free(m: *mut CoxdecMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxdec_matrix_rank(m: *const CoxdecMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.inner.rank())
}

/// Inertia of the Gram matrix.
///
/// # Safety
/// `m` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn coxdec_signature(
    m: *const CoxdecMatrix,
    positive: *mut usize,
    zero: *mut usize,
    negative: *mut usize,
) -> CoxdecStatus {
    guard(|| {
        let s = unsafe { matrix(m)? }.gram().signature();
        write_out(positive, s.positive)?;
        write_out(zero, s.zero)?;
        write_out(negative, s.negative)
    })
}

/// `{"type", "components", "signature"}` for the matrix.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coxdec_classify_json(
    m: *const CoxdecMatrix,
    out: *mut *mut c_char,
) -> CoxdecStatus {
    guard(|| {
        let m = unsafe { matrix(m)? };
        let sig = m.gram().signature();
        let class = classify_diagram(&m.diagram());
        let kind = coxdec::cli::type_name(&class, &sig);
        let components = match class {
            DiagramClass::Elliptic(n) | DiagramClass::ParabolicUnion(n) => Some(n),
            DiagramClass::Indefinite => None,
        };
        write_json(
            out,
            &serde_json::json!({ "type": kind, "components": components, "signature": sig }),
        )
    })
}

/// Facet-count verdict for the subgroup described by `subgroup_json`,
/// searching at most `max_index` chambers.
///
/// # Safety
/// `m` must be a live handle, `subgroup_json` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn coxdec_theorem_check_json(
    m: *const CoxdecMatrix,
    subgroup_json: *const c_char,
    max_index: usize,
    out: *mut *mut c_char,
) -> CoxdecStatus {
    guard(|| {
        let m = unsafe { matrix(m)? };
        let text = unsafe { read_str(subgroup_json)? };
        let h: SubgroupSpec = serde_json::from_str(text).map_err(invalid)?;
        let bounds = Bounds {
            max_chambers: max_index,
            ..Bounds::default()
        };
        let v = theorem_check(m, &h, &bounds).map_err(|e| match e {
            EngineError::IndexBoundExceeded(_) | EngineError::BoundExceeded(_) => {
                Fail(CoxdecStatus::BoundExceeded, e.to_string())
            }
            e => invalid(e),
        })?;
        write_json(out, &serde_json::to_value(v).map_err(invalid)?)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxdec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failed call on this thread, or null.  Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn coxdec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
