//! C ABI over the relcomm engine.
//!
//! Groups and spectra are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`RelcommStatus`]; on failure the message is available from
//! [`relcomm_last_error_message`] until the next call on the same thread.
//! Strings handed out by the library must be released with
//! [`relcomm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use relcomm::classifier::verify_with_spectrum;
use relcomm::commdeg::{comm_degree, degree_spectrum, DegreeSpectrum};
use relcomm::group::DEFAULT_ORDER_CAP;
use relcomm::lattice::SubgroupLattice;
use relcomm::spec::parse_group_spec;
use relcomm::{Error, FiniteGroup};
use serde_json::json;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelcommStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    CapExceeded = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// Opaque finite group.
pub struct RelcommGroup {
    inner: FiniteGroup,
}

/// Opaque degree spectrum.
pub struct RelcommSpectrum {
    inner: DegreeSpectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RelcommStatus {
    if e.is_cap() {
        RelcommStatus::CapExceeded
    } else {
        RelcommStatus::InvalidInput
    }
}

/// Runs `f` with error bookkeeping and panic containment.
fn guarded(f: impl FnOnce() -> Result<(), (RelcommStatus, String)>) -> RelcommStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RelcommStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RelcommStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (RelcommStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (RelcommStatus, String) {
    (RelcommStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RelcommStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RelcommStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn group_ref<'a>(g: *const RelcommGroup) -> Result<&'a FiniteGroup, (RelcommStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null_err("group"))
}

fn give_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).expect("no interior NUL");
    unsafe { *out = c.into_raw() };
}

/// Message for the most recent failure on this thread, or null.
#[no_mangle]
pub extern "C" fn relcomm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a group from a JSON group spec.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_group_from_json(json: *const c_char, out: *mut *mut RelcommGroup) -> RelcommStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let text = read_str(json, "json")?;
        let spec = parse_group_spec(text).map_err(lib_err)?;
        let g = spec.build(DEFAULT_ORDER_CAP).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RelcommGroup { inner: g }));
        Ok(())
    })
}

/// Builds a group from a row-major `n × n` multiplication table.
///
/// # Safety
/// `table` must point at `n * n` readable entries and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn relcomm_group_from_table(
    table: *const usize,
    n: usize,
    out: *mut *mut RelcommGroup,
) -> RelcommStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        if table.is_null() {
            return Err(null_err("table"));
        }
        let len = n
            .checked_mul(n)
            .ok_or((RelcommStatus::OutOfRange, "n is too large".to_string()))?;
        let flat = std::slice::from_raw_parts(table, len);
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        let g = FiniteGroup::from_table(&rows, None).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RelcommGroup { inner: g }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn relcomm_group_free(g: *mut RelcommGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_group_order(g: *const RelcommGroup, out: *mut usize) -> RelcommStatus {
    guarded(|| {
        let g = group_ref(g)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = g.order();
        Ok(())
    })
}

/// `d(G)` as a `"num/den"` string.
///
/// # Safety
/// `g` must be a live group handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_comm_degree(g: *const RelcommGroup, out: *mut *mut c_char) -> RelcommStatus {
    guarded(|| {
        let g = group_ref(g)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        give_string(comm_degree(g).to_string(), out);
        Ok(())
    })
}

/// Degree spectrum, building the subgroup lattice under `cap`.
///
/// # Safety
/// `g` must be a live group handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_spectrum(
    g: *const RelcommGroup,
    cap: usize,
    out: *mut *mut RelcommSpectrum,
) -> RelcommStatus {
    guarded(|| {
        let g = group_ref(g)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let l = SubgroupLattice::build(g, cap).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RelcommSpectrum {
            inner: degree_spectrum(g, &l),
        }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn relcomm_spectrum_free(s: *mut RelcommSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of distinct values; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live spectrum handle.
#[no_mangle]
pub unsafe extern "C" fn relcomm_spectrum_len(s: *const RelcommSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.inner.len())
}

/// Value `index` (0 is `1/1`, decreasing) as a `"num/den"` string.
///
/// # Safety
/// `s` must be a live spectrum handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_spectrum_value(
    s: *const RelcommSpectrum,
    index: usize,
    out: *mut *mut c_char,
) -> RelcommStatus {
    guarded(|| {
        let s = s.as_ref().ok_or_else(|| null_err("spectrum"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = s.inner.values.get(index).ok_or_else(|| {
            (
                RelcommStatus::OutOfRange,
                format!("index {index} out of range for {} values", s.inner.len()),
            )
        })?;
        give_string(v.to_string(), out);
        Ok(())
    })
}

/// Classification report as a JSON object with `caseTag`, `predicted`,
/// `spectrum` and `verdict`.
///
/// # Safety
/// `g` must be a live group handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relcomm_classify_json(
    g: *const RelcommGroup,
    cap: usize,
    out: *mut *mut c_char,
) -> RelcommStatus {
    guarded(|| {
        let g = group_ref(g)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let l = SubgroupLattice::build(g, cap).map_err(lib_err)?;
        let r = verify_with_spectrum(g, &l, degree_spectrum(g, &l)).map_err(lib_err)?;
        let strings = |v: &[relcomm::rational::Rat]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let doc = json!({
            "order": r.order,
            "centerOrder": r.center_order,
            "caseTag": r.case,
            "predicted": strings(&r.predicted),
            "spectrum": strings(&r.computed.values),
            "verdict": r.verdict,
        });
        give_string(doc.to_string(), out);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn relcomm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
