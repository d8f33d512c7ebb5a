//! C ABI for `cellred`.
//!
//! Objects cross the boundary as opaque handles created by a `*_new`
//! function and released by the matching `*_free`. Every fallible function
//! returns a [`CellredStatus`]; on failure a description is available from
//! [`cellred_last_error_message`] on the same thread. Strings returned by
//! the library are NUL-terminated UTF-8 and must be released with
//! [`cellred_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cellred::audit::{self, AuditReport};
use cellred::cli::{dump_table, Table};
use cellred::coxeter::WeylGroup;
use cellred::klcells::{compute_kl, KLData};
use cellred::rootdata::{build_root_system, CartanType, Weight};
use cellred::{sl3lab, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellredStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnsupportedType = 3,
    InvalidInput = 4,
    OutOfRange = 5,
    DataIntegrity = 6,
    ComputationFailed = 7,
    Panic = 8,
}

/// Audit report for one type.
pub struct CellredAudit {
    report: AuditReport,
}

/// Weyl group with its Kazhdan-Lusztig data.
pub struct CellredKl {
    kl: KLData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CellredStatus {
    match e {
        Error::UnsupportedType(_) => CellredStatus::UnsupportedType,
        Error::NonDominantWeight(_)
        | Error::BadGeneratorIndex { .. }
        | Error::PolyParse { .. }
        | Error::UnknownLabel(_)
        | Error::NonDominantTemplate(_)
        | Error::NotPrime(_)
        | Error::MissingMwData(_) => CellredStatus::InvalidInput,
        Error::GroupTooLarge { .. } | Error::TooLarge { .. } | Error::PrimeTooSmall { .. } | Error::DegreeExceedsNu { .. } => {
            CellredStatus::OutOfRange
        }
        Error::DataIntegrityFailure { .. } | Error::Io(_) => CellredStatus::DataIntegrity,
        _ => CellredStatus::ComputationFailed,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), CellredStatus>) -> CellredStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CellredStatus::Ok,
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CellredStatus::Panic
        }
    }
}

fn fail(e: Error) -> CellredStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(name: &str) -> CellredStatus {
    set_error(format!("`{name}` is null"));
    CellredStatus::NullArgument
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, CellredStatus> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("`{name}` is not valid UTF-8"));
        CellredStatus::InvalidUtf8
    })
}

unsafe fn read_type(p: *const c_char) -> Result<CartanType, CellredStatus> {
    read_str(p, "cartan_type")?.parse().map_err(fail)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), CellredStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| {
        set_error("string contains NUL".into());
        CellredStatus::ComputationFailed
    })?;
    *out = c.into_raw();
    Ok(())
}

/// Copy of the last error message on this thread, or null if none.
/// Release with `cellred_string_free`.
#[no_mangle]
pub extern "C" fn cellred_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cellred_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cellred_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Runs the audit for one type (`"A1"`, ..., `"G2"`).
///
/// # Safety
/// `cartan_type` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cellred_audit_new(cartan_type: *const c_char, out: *mut *mut CellredAudit) -> CellredStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = read_type(cartan_type)?;
        let report = audit::audit_type(t);
        *out = Box::into_raw(Box::new(CellredAudit { report }));
        Ok(())
    })
}

/// Releases an audit handle. Null is ignored.
///
/// # Safety
/// `audit` must come from `cellred_audit_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cellred_audit_free(audit: *mut CellredAudit) {
    if !audit.is_null() {
        drop(Box::from_raw(audit));
    }
}

/// Number of checks in the report, or 0 for a null handle.
///
/// # Safety
/// `audit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cellred_audit_check_count(audit: *const CellredAudit) -> usize {
    audit.as_ref().map_or(0, |a| a.report.checks.len())
}

/// Number of failed checks, or 0 for a null handle.
///
/// # Safety
/// `audit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cellred_audit_failure_count(audit: *const CellredAudit) -> usize {
    audit.as_ref().map_or(0, |a| a.report.failures().count())
}

/// The report as JSON.
///
/// # Safety
/// `audit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cellred_audit_to_json(audit: *const CellredAudit, out: *mut *mut c_char) -> CellredStatus {
    guard(|| {
        let a = audit.as_ref().ok_or_else(|| null("audit"))?;
        let json = serde_json::to_string(&a.report).map_err(|e| fail(Error::Io(e.to_string())))?;
        write_string(out, json)
    })
}

/// Builds the Weyl group of `cartan_type` and its KL data.
///
/// # Safety
/// `cartan_type` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_new(cartan_type: *const c_char, out: *mut *mut CellredKl) -> CellredStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = read_type(cartan_type)?;
        let kl = compute_kl(&WeylGroup::generate(t)).map_err(fail)?;
        *out = Box::into_raw(Box::new(CellredKl { kl }));
        Ok(())
    })
}

/// Releases a KL handle. Null is ignored.
///
/// # Safety
/// `kl` must come from `cellred_kl_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_free(kl: *mut CellredKl) {
    if !kl.is_null() {
        drop(Box::from_raw(kl));
    }
}

/// Order of the Weyl group, or 0 for a null handle.
///
/// # Safety
/// `kl` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_group_order(kl: *const CellredKl) -> usize {
    kl.as_ref().map_or(0, |k| k.kl.group().order())
}

/// Index of the element spelled by `word` (digits, or `"e"`).
///
/// # Safety
/// `kl` must be a live handle, `word` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_parse_word(kl: *const CellredKl, word: *const c_char, out: *mut usize) -> CellredStatus {
    guard(|| {
        let k = kl.as_ref().ok_or_else(|| null("kl"))?;
        let word = read_str(word, "word")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = k.kl.group().parse_word(word).map_err(fail)?;
        Ok(())
    })
}

fn check_index(k: &CellredKl, w: usize) -> Result<(), CellredStatus> {
    if w >= k.kl.group().order() {
        set_error(format!("element index {w} out of range"));
        return Err(CellredStatus::OutOfRange);
    }
    Ok(())
}

/// Coefficients of `P_{y,w}` (constant term first) written to `coeffs`.
/// `len` receives the number of coefficients; pass `capacity = 0` to query
/// it. Returns `OutOfRange` if `capacity` is too small.
///
/// # Safety
/// `kl` must be a live handle, `coeffs` valid for `capacity` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_poly(
    kl: *const CellredKl,
    y: usize,
    w: usize,
    coeffs: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> CellredStatus {
    guard(|| {
        let k = kl.as_ref().ok_or_else(|| null("kl"))?;
        check_index(k, y)?;
        check_index(k, w)?;
        if len.is_null() {
            return Err(null("len"));
        }
        let p = k.kl.kl_poly(y, w);
        *len = p.len();
        if capacity == 0 {
            return Ok(());
        }
        if capacity < p.len() {
            set_error(format!("buffer holds {capacity}, need {}", p.len()));
            return Err(CellredStatus::OutOfRange);
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        ptr::copy_nonoverlapping(p.as_ptr(), coeffs, p.len());
        Ok(())
    })
}

/// Value of the a-function at `w`.
///
/// # Safety
/// `kl` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_kl_a_value(kl: *const CellredKl, w: usize, out: *mut usize) -> CellredStatus {
    guard(|| {
        let k = kl.as_ref().ok_or_else(|| null("kl"))?;
        check_index(k, w)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = k.kl.a(w);
        Ok(())
    })
}

/// `dim V(lambda)` as a decimal string, `lambda` in fundamental-weight
/// coordinates.
///
/// # Safety
/// `cartan_type` must be a NUL-terminated string, `coords` valid for `len`
/// reads and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_weyl_dim(
    cartan_type: *const c_char,
    coords: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> CellredStatus {
    guard(|| {
        let t = read_type(cartan_type)?;
        if coords.is_null() && len > 0 {
            return Err(null("coords"));
        }
        if len != t.rank() {
            set_error(format!("{t} needs {} coordinates, got {len}", t.rank()));
            return Err(CellredStatus::InvalidInput);
        }
        let lambda = Weight(if len == 0 { Vec::new() } else { std::slice::from_raw_parts(coords, len).to_vec() });
        let d = build_root_system(t).weyl_dim(&lambda).map_err(fail)?;
        write_string(out, d.to_string())
    })
}

/// The SL3 incidence experiment at `p` as JSON.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_sl3_json(p: u64, with_orbits: bool, out: *mut *mut c_char) -> CellredStatus {
    guard(|| {
        let report = sl3lab::run_sl3(p, with_orbits).map_err(fail)?;
        let json = serde_json::to_string(&report).map_err(|e| fail(Error::Io(e.to_string())))?;
        write_string(out, json)
    })
}

/// A computed table (`"klpoly"`, `"cells"`, `"gamma"`, `"cwe"`, `"delta"`) as JSON.
///
/// # Safety
/// Both strings must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cellred_table_json(
    cartan_type: *const c_char,
    what: *const c_char,
    out: *mut *mut c_char,
) -> CellredStatus {
    guard(|| {
        let t = read_type(cartan_type)?;
        let what = read_str(what, "what")?;
        let table = Table::from_name(what).ok_or_else(|| {
            set_error(format!("unknown table `{what}`"));
            CellredStatus::InvalidInput
        })?;
        let value = dump_table(table, t).map_err(fail)?;
        write_string(out, value.to_string())
    })
}
