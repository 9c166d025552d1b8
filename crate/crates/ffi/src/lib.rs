//! C interface. Problems are opaque `BiasProblem` handles built from the
//! same JSON the command line reads; every call returns a `BiasStatus`, and
//! the message for the most recent failure on the calling thread is
//! available from `bias_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use biasalg::cli::{self, Args};
use biasalg::input::ProblemInput;
use biasalg::{BiasAlgebra, Error, Subset};
use clap::Parser;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    HypothesisViolated = 4,
    TooLarge = 5,
    CheckFailed = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque handle to a matroid with a linear class.
pub struct BiasProblem {
    algebra: BiasAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: BiasStatus, message: impl Into<String>) -> BiasStatus {
    set_error(message);
    status
}

fn status_of(e: &Error) -> BiasStatus {
    match e {
        Error::HypothesisViolated(_) | Error::LoopPresent(_) | Error::LoopContraction(_) => {
            BiasStatus::HypothesisViolated
        }
        Error::TooLarge(_) => BiasStatus::TooLarge,
        _ => BiasStatus::InvalidInput,
    }
}

fn from_error(e: Error) -> BiasStatus {
    fail(status_of(&e), e.to_string())
}

fn guarded(body: impl FnOnce() -> BiasStatus) -> BiasStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(BiasStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BiasStatus> {
    if p.is_null() {
        return Err(fail(BiasStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(BiasStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn give_string(text: String, out: *mut *mut c_char) -> BiasStatus {
    match CString::new(text) {
        Ok(s) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = s.into_raw() };
            BiasStatus::Ok
        }
        Err(_) => fail(BiasStatus::InvalidInput, "output contains a NUL byte"),
    }
}

/// Build a problem from JSON. On success `*out` owns a handle to be released
/// with `bias_problem_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_from_json(json: *const c_char, out: *mut *mut BiasProblem) -> BiasStatus {
    guarded(|| {
        if out.is_null() {
            return fail(BiasStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = ProblemInput::from_json(text)
            .and_then(|input| input.resolve())
            .and_then(|problem| {
                let class = problem.class()?;
                Ok(BiasAlgebra::new(problem.matroid, class))
            });
        match built {
            Ok(algebra) => {
                *out = Box::into_raw(Box::new(BiasProblem { algebra }));
                BiasStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `problem` must be null or a handle from `bias_problem_from_json` that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_free(problem: *mut BiasProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Size of the ground set.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_ground_size(problem: *const BiasProblem, out: *mut usize) -> BiasStatus {
    guarded(|| {
        let (Some(p), false) = (problem.as_ref(), out.is_null()) else {
            return fail(BiasStatus::NullPointer, "null argument");
        };
        *out = p.algebra.matroid().ground().len();
        BiasStatus::Ok
    })
}

/// Total dimension of the algebra.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_dim(problem: *const BiasProblem, out: *mut usize) -> BiasStatus {
    guarded(|| {
        let (Some(p), false) = (problem.as_ref(), out.is_null()) else {
            return fail(BiasStatus::NullPointer, "null argument");
        };
        *out = p.algebra.dim();
        BiasStatus::Ok
    })
}

/// Graded dimensions. Writes `*len` entries into `buf` if `capacity`
/// suffices; otherwise returns `BIAS_STATUS_BUFFER_TOO_SMALL` with `*len`
/// set to the required size. `buf` may be null when `capacity` is 0.
///
/// # Safety
/// `problem` must be a live handle, `len` a valid pointer and `buf` valid
/// for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_graded_dims(
    problem: *const BiasProblem,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> BiasStatus {
    guarded(|| {
        let (Some(p), false) = (problem.as_ref(), len.is_null()) else {
            return fail(BiasStatus::NullPointer, "null argument");
        };
        let dims = p.algebra.poincare_polynomial();
        *len = dims.len();
        if capacity < dims.len() {
            return fail(BiasStatus::BufferTooSmall, format!("need {} entries", dims.len()));
        }
        if buf.is_null() {
            return fail(BiasStatus::NullPointer, "null buffer");
        }
        ptr::copy_nonoverlapping(dims.as_ptr(), buf, dims.len());
        BiasStatus::Ok
    })
}

/// Expansion of `e_X` in the NBC basis as a JSON array of
/// `{"set": [...], "coefficient": c}`. The elements are read as a set, so
/// the monomial is taken in increasing order. Free the string with
/// `bias_string_free`.
///
/// # Safety
/// `elements` must be valid for `count` reads (or null with `count` 0);
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_expand(
    problem: *const BiasProblem,
    elements: *const u32,
    count: usize,
    out: *mut *mut c_char,
) -> BiasStatus {
    guarded(|| {
        let (Some(p), false) = (problem.as_ref(), out.is_null()) else {
            return fail(BiasStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        if elements.is_null() && count > 0 {
            return fail(BiasStatus::NullPointer, "null element array");
        }
        let list: &[u32] = if count == 0 { &[] } else { std::slice::from_raw_parts(elements, count) };
        let n = p.algebra.matroid().n();
        let set = match Subset::try_from_elements(list.iter().map(|&x| x as usize), n) {
            Ok(s) => s,
            Err(x) => return fail(BiasStatus::InvalidInput, format!("element {x} outside 1..={n}")),
        };
        let expansion = p.algebra.straighten(set);
        give_string(serde_json::to_string(&expansion).expect("serializable"), out)
    })
}

/// Check the deletion-contraction sequence at `element`. `*passed` is 1 when
/// every part of the check holds and 0 otherwise.
///
/// # Safety
/// `problem` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bias_problem_check_sequence(
    problem: *const BiasProblem,
    element: u32,
    passed: *mut i32,
) -> BiasStatus {
    guarded(|| {
        let (Some(p), false) = (problem.as_ref(), passed.is_null()) else {
            return fail(BiasStatus::NullPointer, "null argument");
        };
        match p.algebra.check_exact_sequence(element as usize) {
            Ok(report) => {
                *passed = i32::from(report.passed());
                BiasStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Run a command-line command, e.g. `{"dim"}` or `{"expand", "--set", "2,3"}`,
/// on `input_json` (which may be null for `suite` over the bundled corpus).
/// `*report` receives the JSON report and `*exit_code` the exit code the
/// command line would use. A report is produced even when the command's
/// checks fail; the status is then `BIAS_STATUS_CHECK_FAILED`.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `input_json` must be null
/// or NUL-terminated; `report` and `exit_code` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bias_run_command(
    argv: *const *const c_char,
    argc: usize,
    input_json: *const c_char,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> BiasStatus {
    guarded(|| {
        if report.is_null() || exit_code.is_null() || (argv.is_null() && argc > 0) {
            return fail(BiasStatus::NullPointer, "null argument");
        }
        *report = ptr::null_mut();
        let mut words = vec!["biasalg".to_string()];
        for i in 0..argc {
            match read_str(*argv.add(i)) {
                Ok(w) => words.push(w.to_string()),
                Err(s) => return s,
            }
        }
        let args = match Args::try_parse_from(&words) {
            Ok(a) => a,
            Err(e) => return fail(BiasStatus::InvalidInput, e.to_string()),
        };
        let text = if input_json.is_null() {
            None
        } else {
            match read_str(input_json) {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        let (out, code) = cli::run_with_input(&args, text);
        *exit_code = code;
        let status = give_string(out.render(args.json_indent), report);
        match (status, code) {
            (BiasStatus::Ok, cli::EXIT_OK) => BiasStatus::Ok,
            (BiasStatus::Ok, cli::EXIT_CHECK_FAILED) => fail(BiasStatus::CheckFailed, "a check failed; see the report"),
            (BiasStatus::Ok, _) => {
                let message = out.results["error"]["message"].as_str().unwrap_or("command failed");
                fail(BiasStatus::InvalidInput, message)
            },
            (s, _) => s,
        }
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bias_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bias_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
