//! C interface to the cubic threefold analysis.
//!
//! Handles are opaque. Every fallible call returns a [`TfStatus`]; the message
//! of the last failure on the calling thread is available from [`tf_last_error`].
//! Strings returned by the library are released with [`tf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use threefold::forms::{CubicForm, Form};
use threefold::pipeline::{parse_commands, run, Command, LineMode, Report, Request, DEFAULT_SAMPLE};
use threefold::tracker::TrackerSettings;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or non-cubic polynomial.
    ParseError = 3,
    /// Unknown command name or bad tracker settings.
    InvalidArgument = 4,
    /// The report was produced but some command failed.
    PipelineError = 5,
    /// The report was produced but an invariant was violated.
    CertificationFailure = 6,
    /// The requested value is absent from the report.
    Unavailable = 7,
    Panic = 8,
}

/// A parsed cubic form in x0..x4 with rational coefficients.
pub struct TfCubic {
    form: CubicForm,
}

/// The result of [`tf_analyze`].
pub struct TfReport {
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn fail(status: TfStatus, msg: impl Into<String>) -> TfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> TfStatus) -> TfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            fail(TfStatus::Panic, msg.unwrap_or_else(|| "panic".into()))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, TfStatus> {
    if p.is_null() {
        return Err(fail(TfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TfStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn tf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `text`, e.g. "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", into `*out`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tf_cubic_parse(text: *const c_char, out: *mut *mut TfCubic) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match str_arg(text) {
            Ok(t) => t.trim(),
            Err(s) => return s,
        };
        match Form::parse_cubic(text) {
            Ok(form) => {
                *out = Box::into_raw(Box::new(TfCubic { form }));
                TfStatus::Ok
            }
            Err(e) => fail(TfStatus::ParseError, e.render(text)),
        }
    })
}

/// # Safety
/// `cubic` is NULL or came from [`tf_cubic_parse`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn tf_cubic_free(cubic: *mut TfCubic) {
    if !cubic.is_null() {
        drop(Box::from_raw(cubic));
    }
}

/// Canonical text of the form; free with [`tf_string_free`]. NULL on a null handle.
///
/// # Safety
/// `cubic` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_cubic_to_string(cubic: *const TfCubic) -> *mut c_char {
    match cubic.as_ref() {
        Some(c) => into_c(c.form.to_string()),
        None => {
            set_error("null cubic");
            ptr::null_mut()
        }
    }
}

/// Runs the comma-separated `commands` (NULL for all) with the given seed.
/// `settings_json` is NULL or a JSON object of tracker settings overriding the defaults.
///
/// A report is stored in `*out` whenever the status is Ok, PipelineError or
/// CertificationFailure.
///
/// # Safety
/// `cubic` is a live handle; string arguments are NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tf_analyze(
    cubic: *const TfCubic,
    commands: *const c_char,
    seed: u64,
    settings_json: *const c_char,
    out: *mut *mut TfReport,
) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(cubic) = cubic.as_ref() else { return fail(TfStatus::NullPointer, "null cubic") };
        let commands = if commands.is_null() {
            Command::ALL.into_iter().collect()
        } else {
            match str_arg(commands).map(parse_commands) {
                Ok(Ok(c)) => c,
                Ok(Err(e)) => return fail(TfStatus::InvalidArgument, e),
                Err(s) => return s,
            }
        };
        let settings = if settings_json.is_null() {
            TrackerSettings::default()
        } else {
            let text = match str_arg(settings_json) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match serde_json::from_str::<TrackerSettings>(text) {
                Ok(s) => s,
                Err(e) => return fail(TfStatus::InvalidArgument, format!("tracker settings: {e}")),
            }
        };
        if let Err(e) = settings.validate() {
            return fail(TfStatus::InvalidArgument, e.to_string());
        }
        let req = Request { form: cubic.form.clone(), commands, seed, settings, lines: LineMode::Sample(DEFAULT_SAMPLE) };
        let report = run(&req);
        let status = if !report.violations.is_empty() {
            fail(TfStatus::CertificationFailure, report.violations.join("; "))
        } else if report.failed() {
            fail(TfStatus::PipelineError, "a command failed; see the report")
        } else {
            TfStatus::Ok
        };
        *out = Box::into_raw(Box::new(TfReport { report }));
        status
    })
}

/// # Safety
/// `report` is NULL or came from [`tf_analyze`] and was not freed.
#[no_mangle]
pub unsafe extern "C" fn tf_report_free(report: *mut TfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The JSON report; free with [`tf_string_free`]. NULL on a null handle.
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_report_json(report: *const TfReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c(r.report.to_json()),
        None => {
            set_error("null report");
            ptr::null_mut()
        }
    }
}

/// The defect σ, when computed.
///
/// # Safety
/// `report` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tf_report_sigma(report: *const TfReport, out: *mut u32) -> TfStatus {
    guard(|| {
        let (Some(r), false) = (report.as_ref(), out.is_null()) else { return fail(TfStatus::NullPointer, "null argument") };
        match r.report.sigma() {
            Some(s) => {
                *out = s as u32;
                TfStatus::Ok
            }
            None => fail(TfStatus::Unavailable, "σ was not computed or is undefined"),
        }
    })
}

/// Exit code the command-line tool would return for this report.
///
/// # Safety
/// `report` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_report_exit_code(report: *const TfReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.report.exit_code())
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
