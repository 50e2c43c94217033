//! C ABI for the popdist engine.
//!
//! Series values are returned as opaque `PopdistSeries` handles; every
//! fallible call returns a [`PopdistStatus`] and stores a human-readable
//! message retrievable through [`popdist_last_error`]. Strings returned by
//! `*_to_json`, `*_to_text` and `popdist_schroder_decimal` are owned by the
//! caller and must be released with [`popdist_string_free`]; handles with
//! [`popdist_series_free`].
//!
//! The matching C header is generated into `include/popdist.h` at build
//! time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use popdist::closed_forms::{self, ClosedFormId};
use popdist::oracle;
use popdist::perm::PopPattern;
use popdist::separable::schroder;
use popdist::series::TruncSeries;
use popdist::solver;
use popdist::verify;
use popdist::Error;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PopdistStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LimitExceeded = 3,
}

/// Which series the solver should produce.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PopdistMode {
    Full = 0,
    Uv = 1,
    Counting = 2,
}

/// Opaque handle around a truncated distribution series.
pub struct PopdistSeries {
    inner: TruncSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_for(err: &Error) -> PopdistStatus {
    match err {
        Error::EnumerationLimit { .. } | Error::LengthLimit { .. } => PopdistStatus::LimitExceeded,
        _ => PopdistStatus::InvalidArgument,
    }
}

fn deliver(
    result: popdist::Result<TruncSeries>,
    out: *mut *mut PopdistSeries,
) -> PopdistStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return PopdistStatus::NullPointer;
    }
    match result {
        Ok(series) => {
            clear_error();
            let handle = Box::new(PopdistSeries { inner: series });
            unsafe { *out = Box::into_raw(handle) };
            PopdistStatus::Ok
        }
        Err(err) => {
            unsafe { *out = std::ptr::null_mut() };
            let code = status_for(&err);
            set_error(err.to_string());
            code
        }
    }
}

/// Message for the most recent failure on this thread, or null after a
/// success. The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn popdist_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |message| message.as_ptr())
    })
}

/// Solve the functional-equation system for F_k at the given truncation
/// order and mode, producing a fresh series handle in `*out`.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn popdist_solve(
    k: usize,
    order: usize,
    mode: PopdistMode,
    out: *mut *mut PopdistSeries,
) -> PopdistStatus {
    let result = match mode {
        PopdistMode::Full => solver::solve_fk(k, order).map(|r| r.full),
        PopdistMode::Uv => solver::solve_fk_uv(k, order),
        PopdistMode::Counting => solver::solve_fk_counting(k, order),
    };
    deliver(result, out)
}

/// Expand a closed form by name ("F2", "F4_xu", "S_tpq", ...).
///
/// # Safety
/// `id` must point to a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn popdist_closed_expand(
    id: *const c_char,
    order: usize,
    out: *mut *mut PopdistSeries,
) -> PopdistStatus {
    if id.is_null() {
        set_error("id pointer is null".into());
        return PopdistStatus::NullPointer;
    }
    let text = match CStr::from_ptr(id).to_str() {
        Ok(text) => text,
        Err(_) => {
            set_error("id is not valid UTF-8".into());
            return PopdistStatus::InvalidArgument;
        }
    };
    let result = ClosedFormId::parse(text).and_then(|id| closed_forms::expand(id, order));
    deliver(result, out)
}

/// Brute-force distribution series for the class avoiding the flat POP of
/// length k.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn popdist_oracle_series(
    k: usize,
    order: usize,
    out: *mut *mut PopdistSeries,
) -> PopdistStatus {
    deliver(oracle::oracle_series(k, order), out)
}

/// Number of stored monomials.
///
/// # Safety
/// `series` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn popdist_series_num_terms(series: *const PopdistSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    (*series).inner.num_terms()
}

/// Canonical JSON term list; caller frees with [`popdist_string_free`].
///
/// # Safety
/// `series` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn popdist_series_to_json(series: *const PopdistSeries) -> *mut c_char {
    if series.is_null() {
        return std::ptr::null_mut();
    }
    let json = (*series).inner.to_json_terms().to_string();
    CString::new(json).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Canonical text rendering; caller frees with [`popdist_string_free`].
///
/// # Safety
/// `series` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn popdist_series_to_text(series: *const PopdistSeries) -> *mut c_char {
    if series.is_null() {
        return std::ptr::null_mut();
    }
    CString::new((*series).inner.to_string()).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Release a series handle. Null is ignored.
///
/// # Safety
/// `series` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn popdist_series_free(series: *mut PopdistSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must originate from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn popdist_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// The n-th Schröder number as a decimal string; caller frees with
/// [`popdist_string_free`].
#[no_mangle]
pub extern "C" fn popdist_schroder_decimal(n: usize) -> *mut c_char {
    CString::new(schroder(n).to_string()).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Number of separable permutations of length n avoiding the flat POP of
/// length k; pass k = 0 for the unrestricted separable class.
///
/// # Safety
/// `out` must be null or point to writable storage for one u64.
#[no_mangle]
pub unsafe extern "C" fn popdist_class_count(n: usize, k: usize, out: *mut u64) -> PopdistStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return PopdistStatus::NullPointer;
    }
    let pop = if k == 0 {
        Ok(None)
    } else {
        PopPattern::flat(k).map(Some)
    };
    let result = pop.and_then(|pop| oracle::enumerate_class(n, pop.as_ref()));
    match result {
        Ok(class) => {
            clear_error();
            unsafe { *out = class.len() as u64 };
            PopdistStatus::Ok
        }
        Err(err) => {
            let code = status_for(&err);
            set_error(err.to_string());
            code
        }
    }
}

/// Run a named verification suite ("closed-vs-oracle", ..., "all"),
/// storing the number of failed checks in `*failures`.
///
/// # Safety
/// `suite` must point to a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn popdist_verify(
    suite: *const c_char,
    max_n: usize,
    failures: *mut usize,
) -> PopdistStatus {
    if suite.is_null() || failures.is_null() {
        set_error("null pointer argument".into());
        return PopdistStatus::NullPointer;
    }
    let name = match CStr::from_ptr(suite).to_str() {
        Ok(name) => name,
        Err(_) => {
            set_error("suite is not valid UTF-8".into());
            return PopdistStatus::InvalidArgument;
        }
    };
    match verify::run_suite(name, max_n) {
        Ok(checks) => {
            clear_error();
            *failures = checks.iter().filter(|c| !c.passed).count();
            PopdistStatus::Ok
        }
        Err(err) => {
            let code = status_for(&err);
            set_error(err.to_string());
            code
        }
    }
}
