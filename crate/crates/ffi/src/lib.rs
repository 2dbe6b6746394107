//! C interface to `delcode`.
//!
//! Every handle returned through an out-pointer is owned by the caller and
//! released with the matching `*_free` function. Functions return a
//! [`DelcodeStatus`]; on failure [`delcode_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use delcode::codes::{self, Code, GreedyOrder};
use delcode::graph::{self, DeletionGraph};
use delcode::lcsscs::{self, OptimalSet};
use delcode::{Error, Limits, Word};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelcodeStatus {
    Ok = 0,
    /// Malformed or out-of-range argument.
    Input = 1,
    /// Refused by an enumeration or size guard.
    Resource = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// Unexpected failure inside the library.
    Internal = 4,
}

/// A binary word.
pub struct DelcodeWord(Word);

/// A sorted set of optimal LCS, SCS or MCS strings.
pub struct DelcodeSet(OptimalSet);

/// A deletion code.
pub struct DelcodeCode(Code);

/// Summary of the k-deletion graph on words of length n.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DelcodeGraphStats {
    pub vertices: u64,
    pub edges: u64,
    pub max_degree: u64,
    pub triangles: u64,
    pub bollobas_bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: Error) -> DelcodeStatus {
    set_error(&e.to_string());
    match e {
        Error::Input(_) => DelcodeStatus::Input,
        Error::Resource(_) => DelcodeStatus::Resource,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard<F>(f: F) -> DelcodeStatus
where
    F: FnOnce() -> Result<(), DelcodeStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DelcodeStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal error");
            DelcodeStatus::Internal
        }
    }
}

fn null(what: &str) -> DelcodeStatus {
    set_error(&format!("{what} is null"));
    DelcodeStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, DelcodeStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut T, value: T, what: &str) -> Result<(), DelcodeStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn delcode_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a NUL-terminated 0/1 string.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_word_parse(
    text: *const c_char,
    out: *mut *mut DelcodeWord,
) -> DelcodeStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(Error::Input("text is not UTF-8".into())))?;
        let w = Word::parse(s).map_err(fail)?;
        store(out, Box::into_raw(Box::new(DelcodeWord(w))), "out")
    })
}

/// # Safety
/// `w` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn delcode_word_free(w: *mut DelcodeWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_word_len(w: *const DelcodeWord, out: *mut usize) -> DelcodeStatus {
    guard(|| store(out, deref(w, "w")?.0.len(), "out"))
}

/// Writes a newly allocated C string; release it with [`delcode_string_free`].
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_word_to_string(
    w: *const DelcodeWord,
    out: *mut *mut c_char,
) -> DelcodeStatus {
    guard(|| {
        let s = CString::new(deref(w, "w")?.0.to_string()).expect("0/1 text has no NUL");
        store(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn delcode_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_lcs_len(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut usize,
) -> DelcodeStatus {
    guard(|| {
        store(
            out,
            lcsscs::lcs_len(&deref(u, "u")?.0, &deref(v, "v")?.0),
            "out",
        )
    })
}

/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_scs_len(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut usize,
) -> DelcodeStatus {
    guard(|| {
        store(
            out,
            lcsscs::scs_len(&deref(u, "u")?.0, &deref(v, "v")?.0),
            "out",
        )
    })
}

/// Deletion distance of two words of equal length.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_deletion_distance(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut usize,
) -> DelcodeStatus {
    guard(|| {
        let d = lcsscs::deletion_distance(&deref(u, "u")?.0, &deref(v, "v")?.0).map_err(fail)?;
        store(out, d, "out")
    })
}

/// Number of distinct SCS strings, saturating at `UINT64_MAX`.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_scs_count(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut u64,
) -> DelcodeStatus {
    guard(|| {
        let c = lcsscs::scs_count(&deref(u, "u")?.0, &deref(v, "v")?.0);
        store(out, u64::try_from(c).unwrap_or(u64::MAX), "out")
    })
}

unsafe fn set_with(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut *mut DelcodeSet,
    f: fn(&Word, &Word, &Limits) -> delcode::Result<OptimalSet>,
) -> DelcodeStatus {
    guard(|| {
        let set = f(&deref(u, "u")?.0, &deref(v, "v")?.0, &Limits::default()).map_err(fail)?;
        store(out, Box::into_raw(Box::new(DelcodeSet(set))), "out")
    })
}

/// All distinct LCS strings.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_lcs_set(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut *mut DelcodeSet,
) -> DelcodeStatus {
    set_with(u, v, out, lcsscs::lcs_set_bounded)
}

/// All distinct SCS strings.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_scs_set(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut *mut DelcodeSet,
) -> DelcodeStatus {
    set_with(u, v, out, lcsscs::scs_set_bounded)
}

/// All minimal common supersequences.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_mcs_set(
    u: *const DelcodeWord,
    v: *const DelcodeWord,
    out: *mut *mut DelcodeSet,
) -> DelcodeStatus {
    set_with(u, v, out, lcsscs::mcs_set_bounded)
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_set_len(s: *const DelcodeSet, out: *mut usize) -> DelcodeStatus {
    guard(|| store(out, deref(s, "set")?.0.len(), "out"))
}

/// Copies the `index`-th string (lexicographic order) into a new word.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_set_get(
    s: *const DelcodeSet,
    index: usize,
    out: *mut *mut DelcodeWord,
) -> DelcodeStatus {
    guard(|| {
        let set = &deref(s, "set")?.0;
        let w = set.strings.get(index).ok_or_else(|| {
            fail(Error::Input(format!(
                "index {index} out of range ({} strings)",
                set.len()
            )))
        })?;
        store(out, Box::into_raw(Box::new(DelcodeWord(w.clone()))), "out")
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn delcode_set_free(s: *mut DelcodeSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Varshamov-Tenengolts code of length `n` and residue `residue`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_vt_code(
    n: usize,
    residue: usize,
    out: *mut *mut DelcodeCode,
) -> DelcodeStatus {
    guard(|| {
        let c = codes::vt_code(n, residue, &Limits::default()).map_err(fail)?;
        store(out, Box::into_raw(Box::new(DelcodeCode(c))), "out")
    })
}

/// Greedy code in lexicographic scan order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_greedy_code(
    n: usize,
    k: usize,
    out: *mut *mut DelcodeCode,
) -> DelcodeStatus {
    guard(|| {
        let c = codes::greedy_code(n, k, GreedyOrder::Lex, &Limits::default()).map_err(fail)?;
        store(out, Box::into_raw(Box::new(DelcodeCode(c))), "out")
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_code_len(c: *const DelcodeCode, out: *mut usize) -> DelcodeStatus {
    guard(|| store(out, deref(c, "code")?.0.len(), "out"))
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_code_get(
    c: *const DelcodeCode,
    index: usize,
    out: *mut *mut DelcodeWord,
) -> DelcodeStatus {
    guard(|| {
        let code = &deref(c, "code")?.0;
        let w = code.words.get(index).ok_or_else(|| {
            fail(Error::Input(format!(
                "index {index} out of range ({} words)",
                code.len()
            )))
        })?;
        store(out, Box::into_raw(Box::new(DelcodeWord(w.clone()))), "out")
    })
}

/// Whether all codewords are pairwise at deletion distance above `k`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_code_is_valid(
    c: *const DelcodeCode,
    out: *mut bool,
) -> DelcodeStatus {
    guard(|| {
        let ok = codes::is_valid_code(&deref(c, "code")?.0).map_err(fail)?;
        store(out, ok, "out")
    })
}

/// # Safety
/// `c` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn delcode_code_free(c: *mut DelcodeCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Exact statistics of the k-deletion graph on `{0,1}^n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delcode_graph_stats(
    n: usize,
    k: usize,
    out: *mut DelcodeGraphStats,
) -> DelcodeStatus {
    guard(|| {
        let s = DeletionGraph::new(n, k)
            .and_then(|g| g.stats(&Limits::default()))
            .map_err(fail)?;
        store(
            out,
            DelcodeGraphStats {
                vertices: s.vertices,
                edges: s.edges,
                max_degree: s.max_degree,
                triangles: s.triangles,
                bollobas_bound: s.bollobas_bound,
            },
            "out",
        )
    })
}

/// Independence lower bound from vertex count, maximum degree and triangle
/// count; zero triangles are evaluated as one.
#[no_mangle]
pub extern "C" fn delcode_bollobas_bound(vertices: u64, max_degree: u64, triangles: u64) -> f64 {
    graph::bollobas_bound(vertices, max_degree, triangles)
}
