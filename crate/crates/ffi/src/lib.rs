//! C interface to the nashdcf command engine.
//!
//! Engines are opaque handles. Every call returns a [`NashStatus`]; on
//! failure a message is available from [`nash_last_error`] on the same
//! thread. Strings handed out by the library must be released with
//! [`nash_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nashdcf::cli::Engine;
use nashdcf::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NashStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// The script ran, but at least one command reported an error.
    CommandFailed = 3,
    Io = 4,
    VersionMismatch = 5,
    CorruptRecord = 6,
    Truncated = 7,
    Engine = 8,
    Panic = 9,
}

/// Opaque engine handle.
pub struct NashEngine {
    inner: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NashStatus {
    set_error(&e.to_string());
    match e {
        Error::Io(_) => NashStatus::Io,
        Error::VersionMismatch { .. } => NashStatus::VersionMismatch,
        Error::CorruptRecord { .. } => NashStatus::CorruptRecord,
        Error::Truncated { .. } => NashStatus::Truncated,
        _ => NashStatus::Engine,
    }
}

fn guard(f: impl FnOnce() -> NashStatus) -> NashStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            NashStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, NashStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(NashStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        NashStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// A new engine, or null on allocation failure.
#[no_mangle]
pub extern "C" fn nash_engine_new() -> *mut NashEngine {
    catch_unwind(|| Box::into_raw(Box::new(NashEngine { inner: Engine::new() }))).unwrap_or(ptr::null_mut())
}

/// # Safety
/// `engine` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nash_engine_free(engine: *mut NashEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Run a script. `*output` receives the printed lines (free with
/// [`nash_string_free`]) and `*errors` the number of failed commands; either
/// pointer may be null.
///
/// # Safety
/// `engine` must be a live handle and `script` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nash_engine_run(
    engine: *mut NashEngine,
    script: *const c_char,
    output: *mut *mut c_char,
    errors: *mut usize,
) -> NashStatus {
    guard(|| {
        let Some(e) = engine.as_mut() else {
            set_error("null engine");
            return NashStatus::NullArgument;
        };
        let src = match str_arg(script) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let r = e.inner.run(src);
        if !errors.is_null() {
            *errors = r.errors;
        }
        if !output.is_null() {
            *output = to_c(r.text());
        }
        if r.errors > 0 {
            set_error(&format!("{} command(s) failed", r.errors));
            NashStatus::CommandFailed
        } else {
            NashStatus::Ok
        }
    })
}

/// Write the session to `path`.
///
/// # Safety
/// `engine` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nash_engine_save(engine: *const NashEngine, path: *const c_char) -> NashStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            set_error("null engine");
            return NashStatus::NullArgument;
        };
        let path = match str_arg(path) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match e.inner.save(path) {
            Ok(()) => NashStatus::Ok,
            Err(err) => status_of(&err),
        }
    })
}

/// The session as text in `*out`.
///
/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nash_engine_save_string(engine: *const NashEngine, out: *mut *mut c_char) -> NashStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            set_error("null engine");
            return NashStatus::NullArgument;
        };
        if out.is_null() {
            set_error("null output pointer");
            return NashStatus::NullArgument;
        }
        match e.inner.save_string() {
            Ok(s) => {
                *out = to_c(s);
                NashStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Replay a session file into a new engine stored in `*out`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nash_engine_load(path: *const c_char, out: *mut *mut NashEngine) -> NashStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return NashStatus::NullArgument;
        }
        let path = match str_arg(path) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match Engine::load(path) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(NashEngine { inner }));
                NashStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Message for the last failure on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn nash_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nash_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn nash_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
