//! C ABI over the iotarch library.
//!
//! Models travel as opaque handles; every other result is a status code
//! plus UTF-8 strings allocated by this library. Strings returned through
//! out-parameters must be released with [`iotarch_string_free`]; handles
//! with [`iotarch_model_free`]. On any non-OK status,
//! [`iotarch_last_error`] returns a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use iotarch::checker::{check_all, CheckerConfig};
use iotarch::semantics::{parse_scenario, run_scenario, SimError};
use iotarch::{dsl, eventb, SystemModel};

/// An immutable, validated system model.
pub struct IotArchModel {
    inner: SystemModel,
}

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IotArchStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The model text did not parse; see `iotarch_last_error`.
    ParseError = 3,
    /// The model failed the consistency rules required for the operation.
    Inconsistent = 4,
    /// The scenario was malformed or an event was rejected.
    ScenarioError = 5,
    /// A filesystem operation failed.
    IoError = 6,
    /// An argument was outside its valid range.
    InvalidArgument = 7,
    /// The library panicked; this is a bug worth reporting.
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<Vec<u8>>) {
    let stored = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = stored);
}

fn fail(status: IotArchStatus, message: impl Into<Vec<u8>>) -> IotArchStatus {
    set_last_error(message);
    status
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next call into this library from the
/// same thread. Never free it.
#[no_mangle]
pub extern "C" fn iotarch_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string. Never free it.
#[no_mangle]
pub extern "C" fn iotarch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library. Null is accepted.
///
/// # Safety
/// `text` must be a pointer previously returned through an out-parameter of
/// this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn iotarch_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Frees a model handle. Null is accepted.
///
/// # Safety
/// `model` must come from [`iotarch_parse`] and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_free(model: *mut IotArchModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn read_utf8<'a>(text: *const c_char) -> Result<&'a str, IotArchStatus> {
    if text.is_null() {
        return Err(fail(IotArchStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(IotArchStatus::InvalidUtf8, e.to_string()))
}

fn export_string(out: *mut *mut c_char, text: String) -> IotArchStatus {
    // Interior NULs cannot occur: the library only produces UTF-8 text
    // derived from identifiers and integers.
    let exported = CString::new(text).expect("library output has no interior NUL");
    unsafe { *out = exported.into_raw() };
    IotArchStatus::Ok
}

fn guard(body: impl FnOnce() -> IotArchStatus) -> IotArchStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(IotArchStatus::Panic, "internal panic"),
    }
}

unsafe fn model_ref<'a>(model: *const IotArchModel) -> Result<&'a SystemModel, IotArchStatus> {
    model
        .as_ref()
        .map(|m| &m.inner)
        .ok_or_else(|| fail(IotArchStatus::NullArgument, "null model handle"))
}

/// Parses model text into a handle stored in `out_model`.
///
/// On `PARSE_ERROR` the error message lists every fault with its
/// line:column location.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_model` must be a valid
/// pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn iotarch_parse(
    text: *const c_char,
    out_model: *mut *mut IotArchModel,
) -> IotArchStatus {
    guard(|| {
        if out_model.is_null() {
            return fail(IotArchStatus::NullArgument, "null out_model");
        }
        let text = match read_utf8(text) {
            Ok(text) => text,
            Err(status) => return status,
        };
        match dsl::parse_system(text) {
            Ok(model) => {
                *out_model = Box::into_raw(Box::new(IotArchModel { inner: model }));
                IotArchStatus::Ok
            }
            Err(errors) => {
                let listing = errors
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n");
                fail(IotArchStatus::ParseError, listing)
            }
        }
    })
}

/// Writes the canonical text form of the model into `out_text`.
///
/// # Safety
/// `model` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_format(
    model: *const IotArchModel,
    out_text: *mut *mut c_char,
) -> IotArchStatus {
    guard(|| {
        if out_text.is_null() {
            return fail(IotArchStatus::NullArgument, "null out_text");
        }
        match model_ref(model) {
            Ok(sys) => export_string(out_text, dsl::format_system(sys)),
            Err(status) => status,
        }
    })
}

/// Runs every consistency rule.
///
/// The report is written to `out_report` (line-oriented text, or JSON
/// records when `structured` is set) and the functioning verdict to
/// `out_consistent`. The status is OK even for inconsistent models; the
/// verdict is data, not an error.
///
/// # Safety
/// `model` must be a live handle; `out_report` and `out_consistent` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_check(
    model: *const IotArchModel,
    strict_functional: bool,
    structured: bool,
    out_report: *mut *mut c_char,
    out_consistent: *mut bool,
) -> IotArchStatus {
    guard(|| {
        if out_report.is_null() || out_consistent.is_null() {
            return fail(IotArchStatus::NullArgument, "null out parameter");
        }
        let sys = match model_ref(model) {
            Ok(sys) => sys,
            Err(status) => return status,
        };
        let cfg = CheckerConfig {
            strict_functional,
            ..CheckerConfig::default()
        };
        let report = check_all(sys, cfg);
        *out_consistent = report.functioning_consistent;
        let rendered = if structured {
            report.to_structured()
        } else {
            report.to_text()
        };
        export_string(out_report, rendered)
    })
}

/// Runs a scenario (`tick sensorId value` lines) and writes the trace wire
/// text to `out_trace`.
///
/// Returns `INCONSISTENT` when the model fails the consistency gate and
/// `SCENARIO_ERROR` when the scenario is malformed or an event is rejected.
///
/// # Safety
/// `model` must be a live handle; `scenario` must be NUL-terminated;
/// `out_trace` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_simulate(
    model: *const IotArchModel,
    scenario: *const c_char,
    out_trace: *mut *mut c_char,
) -> IotArchStatus {
    guard(|| {
        if out_trace.is_null() {
            return fail(IotArchStatus::NullArgument, "null out_trace");
        }
        let sys = match model_ref(model) {
            Ok(sys) => sys,
            Err(status) => return status,
        };
        let scenario = match read_utf8(scenario) {
            Ok(text) => text,
            Err(status) => return status,
        };
        let events = match parse_scenario(scenario) {
            Ok(events) => events,
            Err(e) => return fail(IotArchStatus::ScenarioError, e.to_string()),
        };
        let events: Vec<_> = events.into_iter().map(|entry| entry.event).collect();
        match run_scenario(sys, &events) {
            Ok(trace) => export_string(out_trace, trace.to_wire()),
            Err(e @ SimError::Inconsistent { .. }) => fail(IotArchStatus::Inconsistent, e.to_string()),
            Err(e @ SimError::Event { .. }) => fail(IotArchStatus::ScenarioError, e.to_string()),
        }
    })
}

/// Number of Event-B instance contexts generated per model.
#[no_mangle]
pub extern "C" fn iotarch_eventb_context_count() -> usize {
    3
}

/// Writes the name and text of one generated Event-B context
/// (index 0..`iotarch_eventb_context_count()`).
///
/// # Safety
/// `model` must be a live handle; `out_name` and `out_text` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_eventb_context(
    model: *const IotArchModel,
    index: usize,
    out_name: *mut *mut c_char,
    out_text: *mut *mut c_char,
) -> IotArchStatus {
    guard(|| {
        if out_name.is_null() || out_text.is_null() {
            return fail(IotArchStatus::NullArgument, "null out parameter");
        }
        let sys = match model_ref(model) {
            Ok(sys) => sys,
            Err(status) => return status,
        };
        let contexts = eventb::emit_contexts(sys);
        let Some(context) = contexts.into_iter().nth(index) else {
            return fail(
                IotArchStatus::InvalidArgument,
                format!("context index {index} out of range"),
            );
        };
        *out_name = ptr::null_mut();
        *out_text = ptr::null_mut();
        let status = export_string(out_name, context.name);
        if status != IotArchStatus::Ok {
            return status;
        }
        export_string(out_text, context.text)
    })
}

/// Writes the three instance contexts plus the generic layer into
/// `out_dir`, creating it if needed.
///
/// # Safety
/// `model` must be a live handle; `out_dir` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn iotarch_model_emit_eventb(
    model: *const IotArchModel,
    out_dir: *const c_char,
) -> IotArchStatus {
    guard(|| {
        let sys = match model_ref(model) {
            Ok(sys) => sys,
            Err(status) => return status,
        };
        let dir = match read_utf8(out_dir) {
            Ok(dir) => dir,
            Err(status) => return status,
        };
        match eventb::write_to_dir(sys, Path::new(dir)) {
            Ok(_) => IotArchStatus::Ok,
            Err(e) => fail(IotArchStatus::IoError, e.to_string()),
        }
    })
}
