//! C ABI over the dk2 engine.
//!
//! Every fallible entry point returns a [`Dk2Status`] and writes its result through an out
//! pointer. Objects cross the boundary as opaque handles that must be released with the matching
//! `*_free` function; strings returned to C are released with [`dk2_string_free`]. When a call fails,
//! [`dk2_last_error`] describes why on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dk2_core::cli::{self, Report};
use dk2_core::dkalg::Element;
use dk2_core::series::{drinfeld_phi, PhiVariant, Series};
use dk2_core::Dk2Error;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dk2Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The command line was rejected, or asked for help or the version.
    Usage = 3,
    /// Text input could not be parsed.
    Parse = 4,
    /// The engine reported an error while computing.
    Engine = 5,
    /// The engine panicked. This is a bug.
    Panic = 6,
}

/// A finished verification report.
pub struct Dk2Report {
    report: Report,
}

/// An element of the Drinfeld-Kohno 2-algebra with exact coefficients.
pub struct Dk2Element {
    elem: Element,
}

/// A truncated power series in ħ with exact coefficients.
pub struct Dk2Series {
    series: Series,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn engine_status(e: &Dk2Error) -> Dk2Status {
    set_error(e.to_string());
    match e {
        Dk2Error::Parse(_) => Dk2Status::Parse,
        _ => Dk2Status::Engine,
    }
}

/// Runs `body`, converting panics into [`Dk2Status::Panic`].
fn guard(body: impl FnOnce() -> Dk2Status) -> Dk2Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => {
            if s == Dk2Status::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            Dk2Status::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Dk2Status> {
    if p.is_null() {
        set_error("null string argument");
        return Err(Dk2Status::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|e| {
        set_error(format!("invalid UTF-8: {e}"));
        Dk2Status::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the most recent failed call on this thread, or an empty string.
///
/// The pointer stays valid until the next dk2 call on the same thread.
#[no_mangle]
pub extern "C" fn dk2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Engine version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dk2_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a dk2 function that documents ownership transfer, and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dk2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a `dk2` command line such as `{"dk2", "check", "relations", "--n", "3"}` and stores the
/// report in `*out`. Output flags like `--out` and `--text` are accepted but nothing is printed.
///
/// # Safety
/// `argv` must point to `argc` valid NUL-terminated strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk2_run(argv: *const *const c_char, argc: usize, out: *mut *mut Dk2Report) -> Dk2Status {
    guard(|| {
        if argv.is_null() || out.is_null() {
            set_error("null argument");
            return Dk2Status::NullArgument;
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            match read_str(*argv.add(i)) {
                Ok(s) => args.push(s.to_string()),
                Err(s) => return s,
            }
        }
        let parsed = match cli::parse_args(args) {
            Ok(c) => c,
            Err(msg) => {
                set_error(msg);
                return Dk2Status::Usage;
            }
        };
        match cli::run(&parsed) {
            Ok(report) => {
                write_out(out, Dk2Report { report });
                Dk2Status::Ok
            }
            Err(e) => engine_status(&e),
        }
    })
}

/// Process exit code the `dk2` binary would return for this report: 0 pass, 3 finding, 2 failure.
///
/// # Safety
/// `report` must be a live handle from [`dk2_run`].
#[no_mangle]
pub unsafe extern "C" fn dk2_report_exit_code(report: *const Dk2Report) -> i32 {
    match report.as_ref() {
        Some(r) => r.report.exit_code(),
        None => 2,
    }
}

/// The report as pretty-printed JSON. Free the result with [`dk2_string_free`]. Returns null for a
/// null handle.
///
/// # Safety
/// `report` must be null or a live handle from [`dk2_run`].
#[no_mangle]
pub unsafe extern "C" fn dk2_report_json(report: *const Dk2Report) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(serde_json::to_string_pretty(&r.report).expect("serializable")),
        None => std::ptr::null_mut(),
    }
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle from [`dk2_run`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dk2_report_free(report: *mut Dk2Report) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parses an element in ambient `n` (for example `"2*a12.a23 + (-1)*[|l123|]"`) into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk2_element_parse(n: u8, text: *const c_char, out: *mut *mut Dk2Element) -> Dk2Status {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return Dk2Status::NullArgument;
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match Element::parse(n, s) {
            Ok(elem) => {
                write_out(out, Dk2Element { elem });
                Dk2Status::Ok
            }
            Err(e) => engine_status(&e),
        }
    })
}

/// Stores the boundary ∂x in `*out` as a new handle.
///
/// # Safety
/// `x` must be a live element handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk2_element_boundary(x: *const Dk2Element, out: *mut *mut Dk2Element) -> Dk2Status {
    guard(|| match (x.as_ref(), out.is_null()) {
        (Some(x), false) => {
            write_out(out, Dk2Element { elem: x.elem.boundary() });
            Dk2Status::Ok
        }
        _ => {
            set_error("null argument");
            Dk2Status::NullArgument
        }
    })
}

/// True when the element is exactly zero. A null handle counts as zero.
///
/// # Safety
/// `x` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn dk2_element_is_zero(x: *const Dk2Element) -> bool {
    x.as_ref().is_none_or(|x| x.elem.is_zero())
}

/// Canonical text of an element. Free the result with [`dk2_string_free`].
///
/// # Safety
/// `x` must be null or a live element handle.
#[no_mangle]
pub unsafe extern "C" fn dk2_element_to_string(x: *const Dk2Element) -> *mut c_char {
    match x.as_ref() {
        Some(x) => into_c_string(x.elem.to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Releases an element. Null is ignored.
///
/// # Safety
/// `x` must be null or an element handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dk2_element_free(x: *mut Dk2Element) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Builds the Drinfeld associator Φ(t12, t23) through ħ^`order` in the named variant
/// (`"direct"`, `"compactA"` or `"compactB"`).
///
/// # Safety
/// `variant` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk2_phi(order: usize, variant: *const c_char, out: *mut *mut Dk2Series) -> Dk2Status {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return Dk2Status::NullArgument;
        }
        let v: PhiVariant = match read_str(variant).map(str::parse) {
            Ok(Ok(v)) => v,
            Ok(Err(e)) => return engine_status(&e),
            Err(st) => return st,
        };
        let (x, y) = (Element::a(2, 1, 2), Element::a(2, 2, 3));
        match drinfeld_phi(&x, &y, order, v) {
            Ok(series) => {
                write_out(out, Dk2Series { series });
                Dk2Status::Ok
            }
            Err(e) => engine_status(&e),
        }
    })
}

/// Truncation order of a series, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn dk2_series_order(s: *const Dk2Series) -> usize {
    s.as_ref().map_or(0, |s| s.series.order())
}

/// Coefficients as a JSON object `{"h^0": "...", ...}`. Free the result with [`dk2_string_free`].
///
/// # Safety
/// `s` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn dk2_series_json(s: *const Dk2Series) -> *mut c_char {
    match s.as_ref() {
        Some(s) => into_c_string(serde_json::to_string(&s.series.to_text_map()).expect("serializable")),
        None => std::ptr::null_mut(),
    }
}

/// Releases a series. Null is ignored.
///
/// # Safety
/// `s` must be null or a series handle that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dk2_series_free(s: *mut Dk2Series) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
