//! C ABI over the prymograph library.
//!
//! Graphs are parsed from the same JSON the CLI reads and held behind the
//! opaque [`PgGraph`] handle; every computation returns its result as a
//! JSON (or DOT) string allocated by this library. Calls report a
//! [`PgStatus`]; on anything but `PG_STATUS_OK` a human-readable message is
//! available from [`pg_last_error_message`] until the next failing call on
//! the same thread.
//!
//! Ownership rules: handles from [`pg_graph_parse`] are released with
//! [`pg_graph_free`]; strings written through `out` parameters are released
//! with [`pg_string_free`]. Passing them to anything else (including
//! `free`) is undefined behavior.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use prymograph::cover;
use prymograph::degrees;
use prymograph::error::Error;
use prymograph::fiber;
use prymograph::graph::QuasistableModel;
use prymograph::io;
use prymograph::{DualGraph, EdgeSubset};

/// A parsed graph. Opaque: create with `pg_graph_parse`, release with
/// `pg_graph_free`.
pub struct PgGraph {
    inner: DualGraph,
}

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    InvalidGraph = 1,
    NotStable = 2,
    NotEulerian = 3,
    CapExceeded = 4,
    BadT = 5,
    TooManyComponents = 6,
    HypothesisNotMet = 7,
    SpaceTooLarge = 8,
    Disconnected = 9,
    SplitInvalid = 10,
    Overflow = 11,
    Parse = 12,
    Io = 13,
    NullArgument = 14,
    Utf8 = 15,
    Panic = 16,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean: String = message.chars().map(|c| if c == '\0' { ' ' } else { c }).collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> PgStatus {
    match e {
        Error::InvalidGraph(_) => PgStatus::InvalidGraph,
        Error::NotStable(_) => PgStatus::NotStable,
        Error::NotEulerian(_) => PgStatus::NotEulerian,
        Error::CapExceeded { .. } => PgStatus::CapExceeded,
        Error::BadT(_) => PgStatus::BadT,
        Error::TooManyComponents { .. } => PgStatus::TooManyComponents,
        Error::HypothesisNotMet(_) => PgStatus::HypothesisNotMet,
        Error::SpaceTooLarge(_) => PgStatus::SpaceTooLarge,
        Error::Disconnected => PgStatus::Disconnected,
        Error::SplitInvalid(_) => PgStatus::SplitInvalid,
        Error::Overflow(_) => PgStatus::Overflow,
        Error::Parse(_) => PgStatus::Parse,
        Error::Io(_) => PgStatus::Io,
    }
}

fn fail(e: Error) -> PgStatus {
    let status = status_of(&e);
    set_error(&e.to_string());
    status
}

fn fail_null(what: &str) -> PgStatus {
    set_error(&format!("{what} must not be NULL"));
    PgStatus::NullArgument
}

/// Read a required C string argument.
///
/// # Safety
/// `p` must be NULL or a valid NUL-terminated string.
unsafe fn required_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, PgStatus> {
    if p.is_null() {
        return Err(fail_null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        PgStatus::Utf8
    })
}

/// Comma-separated edge names; NULL or empty means the empty set.
unsafe fn optional_names(p: *const c_char, what: &str) -> Result<Vec<String>, PgStatus> {
    if p.is_null() {
        return Ok(Vec::new());
    }
    let s = required_str(p, what)?;
    Ok(s.split(',').filter(|part| !part.is_empty()).map(str::to_string).collect())
}

fn write_string(out: *mut *mut c_char, text: String) -> PgStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            PgStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            PgStatus::Panic
        }
    }
}

fn guarded(body: impl FnOnce() -> PgStatus) -> PgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            PgStatus::Panic
        }
    }
}

/// Last failure message on this thread. Valid until the next failing call
/// on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn pg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a graph from JSON. On success writes a fresh handle to `out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_graph_parse(json: *const c_char, out: *mut *mut PgGraph) -> PgStatus {
    guarded(|| {
        if out.is_null() {
            return fail_null("out");
        }
        let text = match required_str(json, "json") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::parse_graph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PgGraph { inner: g }));
                PgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Release a graph handle. NULL is a no-op.
///
/// # Safety
/// `g` must be NULL or a handle from `pg_graph_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_graph_free(g: *mut PgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Release a string produced by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string written by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn graph_ref<'a>(g: *const PgGraph) -> Result<&'a DualGraph, PgStatus> {
    if g.is_null() {
        return Err(fail_null("graph"));
    }
    Ok(&(*g).inner)
}

/// Component structure of the square-root locus, as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_fiber_report(
    g: *const PgGraph,
    cap: u32,
    out: *mut *mut c_char,
) -> PgStatus {
    guarded(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let report = match fiber::prym_fiber(graph, cap) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        match io::to_pretty_json(&io::fiber_report_json(graph, &report)) {
            Ok(text) => write_string(out, text),
            Err(e) => fail(e),
        }
    })
}

/// Parity-refined multiplicity set, as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_spin_set(
    g: *const PgGraph,
    cap: u32,
    out: *mut *mut c_char,
) -> PgStatus {
    guarded(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let exps = match fiber::spin_multiplicity_set(graph, cap) {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let payload = io::SpinReportJson {
            first_betti: graph.betti1(),
            multiplicity_exponents: exps.iter().copied().collect(),
            multiplicity_set: fiber::l_values(&exps),
        };
        match io::to_pretty_json(&payload) {
            Ok(text) => write_string(out, text),
            Err(e) => fail(e),
        }
    })
}

/// Multidegrees and subcurve inequality certificates, as JSON. `sigma_csv`
/// is a comma-separated list of edge ids to blow up (NULL or "" for none).
///
/// # Safety
/// `g` must be a live handle; `sigma_csv` NULL or a valid string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_degrees(
    g: *const PgGraph,
    sigma_csv: *const c_char,
    t: i64,
    out: *mut *mut c_char,
) -> PgStatus {
    guarded(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let names = match optional_names(sigma_csv, "sigma_csv") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let result = (|| {
            let blown = EdgeSubset::from_names(graph, &names)?;
            let model = QuasistableModel::new(graph.clone(), blown)?;
            let md = degrees::prym_multidegree(&model, t)?;
            let certs = degrees::basic_inequality_check(&md)?;
            io::to_pretty_json(&io::degrees_json(&md, &certs))
        })();
        match result {
            Ok(text) => write_string(out, text),
            Err(e) => fail(e),
        }
    })
}

/// Build the double cover over the blown set, as JSON. `monodromy_json` may
/// be NULL when exactly one valid choice exists.
///
/// # Safety
/// `g` must be a live handle; string arguments NULL or valid strings; `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_cover(
    g: *const PgGraph,
    sigma_csv: *const c_char,
    monodromy_json: *const c_char,
    out: *mut *mut c_char,
) -> PgStatus {
    guarded(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let names = match optional_names(sigma_csv, "sigma_csv") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let mono_text = if monodromy_json.is_null() {
            None
        } else {
            match required_str(monodromy_json, "monodromy_json") {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        let result = (|| {
            let blown = EdgeSubset::from_names(graph, &names)?;
            let data = match mono_text {
                Some(text) => {
                    let mj: io::MonodromyJson = serde_json::from_str(text)
                        .map_err(|e| Error::Parse(format!("monodromy JSON: {e}")))?;
                    io::monodromy_from_json(graph, &mj)?
                }
                None => {
                    let mut it = cover::enumerate_monodromies(
                        graph,
                        &blown,
                        cover::DEFAULT_MONODROMY_BITS,
                    )?;
                    let first = it.next().ok_or(Error::Disconnected)?;
                    if it.next().is_some() {
                        return Err(Error::SplitInvalid(
                            "several monodromy choices are valid here; pass monodromy_json".into(),
                        ));
                    }
                    first
                }
            };
            let cg = cover::build_cover(graph, &blown, &data)?;
            io::to_pretty_json(&io::cover_json(&cg))
        })();
        match result {
            Ok(text) => write_string(out, text),
            Err(e) => fail(e),
        }
    })
}

/// DOT rendering of the graph with the listed edges dashed.
///
/// # Safety
/// `g` must be a live handle; `sigma_csv` NULL or a valid string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_export_dot(
    g: *const PgGraph,
    sigma_csv: *const c_char,
    out: *mut *mut c_char,
) -> PgStatus {
    guarded(|| {
        let graph = match graph_ref(g) {
            Ok(x) => x,
            Err(s) => return s,
        };
        let names = match optional_names(sigma_csv, "sigma_csv") {
            Ok(n) => n,
            Err(s) => return s,
        };
        let result = (|| {
            let highlight = EdgeSubset::from_names(graph, &names)?;
            Ok(io::graph_dot(graph, &highlight))
        })();
        match result {
            Ok(text) => write_string(out, text),
            Err(e) => fail(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_values_are_stable() {
        assert_eq!(PgStatus::Ok as i32, 0);
        assert_eq!(PgStatus::Parse as i32, 12);
        assert_eq!(PgStatus::Panic as i32, 16);
    }
}
