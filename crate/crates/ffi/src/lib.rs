//! C interface to `cleantext`.
//!
//! Every fallible function returns a [`CtStatus`]; on failure a message is
//! available from [`ct_last_error`] until the next call on the same thread.
//! Strings handed out by this library must be released with
//! [`ct_string_free`], cleaners with [`ct_cleaner_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use cleantext::pipeline::{CleanConfig, Cleaner};
use cleantext::strdist;
use cleantext::textprep::{RawDocument, SourceFormat};
use cleantext::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    Config = 5,
    NoPhoneticContent = 6,
    Panic = 7,
}

impl From<&Error> for CtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Io { .. } => CtStatus::Io,
            Error::Parse { .. } => CtStatus::Parse,
            Error::Config(_) => CtStatus::Config,
            Error::NoPhoneticContent(_) => CtStatus::NoPhoneticContent,
        }
    }
}

/// Opaque cleaner handle.
pub struct CtCleaner {
    inner: Cleaner,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(CtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CtStatus::from(&e), e.to_string())
    }
}

fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> CtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CtStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CtStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(CtStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CtStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn to_c(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(CtStatus::InvalidUtf8, "output contains NUL".into()))
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(CtStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Creates a cleaner from a TOML configuration file and stores it in `*out`.
///
/// # Safety
/// `config_path` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ct_cleaner_new(config_path: *const c_char, out: *mut *mut CtCleaner) -> CtStatus {
    guarded(|| {
        check_out(out, "out")?;
        let path = read_str(config_path, "config_path")?;
        let config = CleanConfig::load(Path::new(path))?;
        let cleaner = Cleaner::from_config(&config)?;
        *out = Box::into_raw(Box::new(CtCleaner { inner: cleaner }));
        Ok(())
    })
}

/// Cleans plain `text`. The cleaned text goes to `*out_text`; when
/// `out_report` is not null a JSON report goes to `*out_report`.
///
/// # Safety
/// `cleaner` must come from [`ct_cleaner_new`]; `text` must be a valid
/// NUL-terminated string; `out_text` must be valid; `out_report` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn ct_cleaner_clean(
    cleaner: *const CtCleaner,
    text: *const c_char,
    out_text: *mut *mut c_char,
    out_report: *mut *mut c_char,
) -> CtStatus {
    guarded(|| {
        check_out(out_text, "out_text")?;
        let Some(cleaner) = cleaner.as_ref() else {
            return Err(Failure(CtStatus::NullPointer, "cleaner is null".into()));
        };
        let text = read_str(text, "text")?;
        let doc = RawDocument::new("ffi", text, SourceFormat::Plain);
        let (cleaned, doc_report) = cleaner.inner.clean_document(&doc);
        let report_json = if out_report.is_null() {
            None
        } else {
            let mut report = cleaner.inner.new_report();
            report.push(doc_report);
            Some(to_c(report.to_json())?)
        };
        *out_text = to_c(cleaned)?;
        if let Some(r) = report_json {
            *out_report = r;
        }
        Ok(())
    })
}

/// # Safety
/// `cleaner` must be null or come from [`ct_cleaner_new`], and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ct_cleaner_free(cleaner: *mut CtCleaner) {
    if !cleaner.is_null() {
        drop(Box::from_raw(cleaner));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ct_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Damerau-Levenshtein distance between `a` and `b`, counted in
/// characters.
///
/// # Safety
/// `a` and `b` must be valid NUL-terminated strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ct_edit_distance(a: *const c_char, b: *const c_char, out: *mut usize) -> CtStatus {
    guarded(|| {
        check_out(out, "out")?;
        let (a, b) = (read_str(a, "a")?, read_str(b, "b")?);
        *out = strdist::edit_distance(a, b);
        Ok(())
    })
}

/// # Safety
/// `word` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ct_soundex_key(word: *const c_char, out: *mut *mut c_char) -> CtStatus {
    guarded(|| {
        check_out(out, "out")?;
        let key = strdist::soundex_key(read_str(word, "word")?)?;
        *out = to_c(key.as_str().to_string())?;
        Ok(())
    })
}

/// # Safety
/// `word` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ct_phonetic_key(word: *const c_char, out: *mut *mut c_char) -> CtStatus {
    guarded(|| {
        check_out(out, "out")?;
        let key = strdist::phonetic_key(read_str(word, "word")?)?;
        *out = to_c(key.as_str().to_string())?;
        Ok(())
    })
}
