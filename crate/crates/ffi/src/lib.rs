//! C ABI for triposlab.
//!
//! Structures cross the boundary as opaque handles built from fixture JSON.
//! Every function returns a `TlStatus`; results come back through out
//! parameters. Strings returned by the library must be released with
//! [`tl_string_free`], handles with their matching `*_free`. After a non-zero
//! status, [`tl_last_error_message`] describes the failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use triposlab::coded_tripos::CodedTripos;
use triposlab::extraction::{self, extract};
use triposlab::fixture::Fixture;
use triposlab::implicative::{self, induced_tripos, ImpAlgebra};
use triposlab::law_suite::{run_all, CheckBudget};

/// Status codes.
pub type TlStatus = i32;

pub const TL_OK: TlStatus = 0;
pub const TL_NULL_POINTER: TlStatus = 1;
pub const TL_INVALID_UTF8: TlStatus = 2;
pub const TL_PARSE_ERROR: TlStatus = 3;
pub const TL_INVALID_INPUT: TlStatus = 4;
pub const TL_WRONG_KIND: TlStatus = 5;
pub const TL_TOO_LARGE: TlStatus = 6;
pub const TL_NOT_VALID_ALGEBRA: TlStatus = 7;
pub const TL_PANIC: TlStatus = 99;

/// Opaque coded tripos.
pub struct TlTripos(CodedTripos);

/// Opaque implicative algebra.
pub struct TlAlgebra(ImpAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Error(TlStatus, String);

impl From<triposlab::fixture::FixtureError> for Error {
    fn from(e: triposlab::fixture::FixtureError) -> Self {
        use triposlab::fixture::FixtureError as F;
        let code = match e {
            F::Parse(_) | F::Io { .. } => TL_PARSE_ERROR,
            F::WrongKind { .. } => TL_WRONG_KIND,
            F::Tripos(_) | F::Algebra(_) => TL_INVALID_INPUT,
        };
        Error(code, e.to_string())
    }
}

impl From<extraction::ExtractError> for Error {
    fn from(e: extraction::ExtractError) -> Self {
        let code = match e {
            extraction::ExtractError::SigmaTooLarge(_) => TL_TOO_LARGE,
            extraction::ExtractError::Algebra(implicative::ImpError::NotValidAlgebra(_)) => {
                TL_NOT_VALID_ALGEBRA
            }
            _ => TL_INVALID_INPUT,
        };
        Error(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Error>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TL_OK,
        Ok(Err(Error(code, message))) => {
            set_error(message);
            code
        }
        Err(_) => {
            set_error("internal panic");
            TL_PANIC
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error(TL_NULL_POINTER, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Error(TL_INVALID_UTF8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Error> {
    p.as_ref()
        .ok_or_else(|| Error(TL_NULL_POINTER, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Error> {
    if out.is_null() {
        return Err(Error(TL_NULL_POINTER, "null out parameter".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    let c = CString::new(s).map_err(|e| Error(TL_INVALID_INPUT, e.to_string()))?;
    write_out(out, c.into_raw())
}

fn budget(max_ctx: usize, samples: usize, seed: u64) -> CheckBudget {
    CheckBudget {
        max_ctx,
        samples,
        seed,
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a tripos fixture.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_from_json(
    json: *const c_char,
    out: *mut *mut TlTripos,
) -> TlStatus {
    guard(|| {
        let t = Fixture::parse(read_str(json)?)?.validate()?.into_tripos()?;
        write_out(out, Box::into_raw(Box::new(TlTripos(t))))
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_free(t: *mut TlTripos) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Parses an algebra fixture.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_from_json(
    json: *const c_char,
    out: *mut *mut TlAlgebra,
) -> TlStatus {
    guard(|| {
        let a = Fixture::parse(read_str(json)?)?
            .validate()?
            .into_algebra()?;
        write_out(out, Box::into_raw(Box::new(TlAlgebra(a))))
    })
}

/// # Safety
/// `a` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_free(a: *mut TlAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Serializes a tripos as a fixture.
///
/// # Safety
/// `t` must be a live handle; `name` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_to_json(
    t: *const TlTripos,
    name: *const c_char,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let t = deref(t)?;
        write_string(out, Fixture::tripos(read_str(name)?, &t.0).to_json())
    })
}

/// Serializes an algebra as a fixture.
///
/// # Safety
/// `a` must be a live handle; `name` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_to_json(
    a: *const TlAlgebra,
    name: *const c_char,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let a = deref(a)?;
        write_string(out, Fixture::algebra(read_str(name)?, &a.0).to_json())
    })
}

/// Runs the law suite; writes the JSON report.
///
/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_run_laws(
    t: *const TlTripos,
    max_ctx: usize,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let t = deref(t)?;
        write_string(
            out,
            run_all(&t.0, &budget(max_ctx, samples, seed)).to_json(),
        )
    })
}

/// Extracts the implicative algebra of a tripos.
///
/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_extract(
    t: *const TlTripos,
    out: *mut *mut TlAlgebra,
) -> TlStatus {
    guard(|| {
        let e = extract(&deref(t)?.0)?;
        write_out(out, Box::into_raw(Box::new(TlAlgebra(e.algebra))))
    })
}

/// Isomorphism certificate followed by the code-transfer identities when
/// `|Σ|` allows; writes the JSON report.
///
/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_tripos_iso(
    t: *const TlTripos,
    max_ctx: usize,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let t = &deref(t)?.0;
        let mut report = extraction::iso_check(t, &budget(max_ctx, samples, seed))?;
        if t.sigma_size() <= extraction::MAX_TRANSFER_SIGMA {
            report.extend(extraction::check_extracted_codes(t)?);
        }
        write_string(out, report.to_json())
    })
}

/// Structure axioms and separator conditions; writes the JSON report.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_validate(
    a: *const TlAlgebra,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| write_string(out, implicative::validate(&deref(a)?.0).to_json()))
}

/// The tripos induced by a valid algebra.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_induce(
    a: *const TlAlgebra,
    out: *mut *mut TlTripos,
) -> TlStatus {
    guard(|| {
        let t = induced_tripos(&deref(a)?.0).map_err(extraction::ExtractError::from)?;
        write_out(out, Box::into_raw(Box::new(TlTripos(t))))
    })
}

/// Induce, extract and certify against the induced tripos; writes the JSON report.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tl_algebra_roundtrip(
    a: *const TlAlgebra,
    max_ctx: usize,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let report = extraction::roundtrip(&deref(a)?.0, &budget(max_ctx, samples, seed))?;
        write_string(out, report.to_json())
    })
}
