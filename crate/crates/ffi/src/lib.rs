//! C ABI over `meetdet`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Every call returns a [`MeetdetStatus`]; on
//! failure the message is kept per thread and read back with
//! [`meetdet_last_error`]. Strings returned through out-parameters are
//! freed with [`meetdet_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use meetdet::closedform::GroundedFunction;
use meetdet::eval::{self, Instance, Method};
use meetdet::hyperdet::{FMap, Hypermatrix};
use meetdet::lattice::{parse_poset, MeetSemilattice, Poset};
use meetdet::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetdetStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed input text or a string that is not UTF-8.
    Parse = 2,
    /// A method precondition, enumeration guard or size check failed.
    Precondition = 3,
    /// The library panicked; this is a bug.
    Internal = 4,
}

pub struct MeetdetLattice {
    poset: Poset,
    semilattice: Option<MeetSemilattice>,
}

pub struct MeetdetHypermatrix {
    inner: Hypermatrix,
}

pub struct MeetdetGrounded {
    inner: GroundedFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, recording any error or panic for `meetdet_last_error`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MeetdetStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MeetdetStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            MeetdetStatus::NullArgument
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("{what} is not valid UTF-8"));
            MeetdetStatus::Parse
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e.exit_code() {
                2 => MeetdetStatus::Parse,
                _ => MeetdetStatus::Precondition,
            }
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| (*s).to_owned())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            MeetdetStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn out_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// `"sign"`, `"one"`, or the body of a table file; null means `"sign"`.
unsafe fn parse_fmap(p: *const c_char) -> Result<FMap, Failure> {
    if p.is_null() {
        return Ok(FMap::SignProduct);
    }
    Ok(match read_str(p, "fmap")? {
        "sign" => FMap::SignProduct,
        "one" => FMap::ConstantOne,
        table => FMap::parse_table(table)?,
    })
}

unsafe fn parse_method(p: *const c_char) -> Result<Method, Failure> {
    Ok(read_str(p, "method")?.parse()?)
}

/// Message of the last failed call on this thread, or null if it
/// succeeded. The caller frees the copy with `meetdet_string_free`.
#[no_mangle]
pub extern "C" fn meetdet_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn meetdet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses poset text (`poset <n>`, `label`, `cover` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_parse(text: *const c_char, out: *mut *mut MeetdetLattice) -> MeetdetStatus {
    guard(|| {
        let slot = out_mut(out, "out")?;
        *slot = ptr::null_mut();
        let poset = parse_poset(read_str(text, "text")?)?;
        let semilattice = MeetSemilattice::new(poset.clone()).ok();
        *slot = Box::into_raw(Box::new(MeetdetLattice { poset, semilattice }));
        Ok(())
    })
}

/// # Safety
/// `l` must come from `meetdet_lattice_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_free(l: *mut MeetdetLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_len(l: *const MeetdetLattice, out: *mut usize) -> MeetdetStatus {
    guard(|| {
        *out_mut(out, "out")? = handle(l, "lattice")?.poset.len();
        Ok(())
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_is_meet_semilattice(
    l: *const MeetdetLattice,
    out: *mut bool,
) -> MeetdetStatus {
    guard(|| {
        *out_mut(out, "out")? = handle(l, "lattice")?.semilattice.is_some();
        Ok(())
    })
}

/// Index of the meet of `a` and `b`.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_meet(
    l: *const MeetdetLattice,
    a: usize,
    b: usize,
    out: *mut usize,
) -> MeetdetStatus {
    guard(|| {
        let l = handle(l, "lattice")?;
        l.poset.check_index(a)?;
        l.poset.check_index(b)?;
        let sl = l.semilattice.as_ref().ok_or_else(|| Error::MethodNotApplicable {
            method: "meet".into(),
            needs: "a meet-semilattice".into(),
        })?;
        *out_mut(out, "out")? = sl.meet(a, b);
        Ok(())
    })
}

/// `μ(x, y)`.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_lattice_mobius(
    l: *const MeetdetLattice,
    x: usize,
    y: usize,
    out: *mut i64,
) -> MeetdetStatus {
    guard(|| {
        let l = handle(l, "lattice")?;
        l.poset.check_index(x)?;
        l.poset.check_index(y)?;
        *out_mut(out, "out")? = l.poset.mobius_matrix().get(x, y);
        Ok(())
    })
}

/// Parses hypermatrix text (`hypermatrix <n> <k>` then `n^k` scalars).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_hypermatrix_parse(
    text: *const c_char,
    out: *mut *mut MeetdetHypermatrix,
) -> MeetdetStatus {
    guard(|| {
        let slot = out_mut(out, "out")?;
        *slot = ptr::null_mut();
        let inner = Hypermatrix::parse(read_str(text, "text")?)?;
        *slot = Box::into_raw(Box::new(MeetdetHypermatrix { inner }));
        Ok(())
    })
}

/// # Safety
/// `m` must come from `meetdet_hypermatrix_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meetdet_hypermatrix_free(m: *mut MeetdetHypermatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Evaluates by `method` (`brute`, `expand`, `cayley`, `det1`) and writes
/// the canonical value text to `value`. `fmap` is `"sign"`, `"one"`, a
/// table body, or null for `"sign"`.
///
/// # Safety
/// `m` must be a live handle; string arguments NUL-terminated; `value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_hypermatrix_eval(
    m: *const MeetdetHypermatrix,
    method: *const c_char,
    fmap: *const c_char,
    force: bool,
    value: *mut *mut c_char,
) -> MeetdetStatus {
    guard(|| {
        let slot = out_mut(value, "value")?;
        *slot = ptr::null_mut();
        let inst = Instance::Hyper(handle(m, "hypermatrix")?.inner.clone());
        let report = eval::run(parse_method(method)?, &inst, &parse_fmap(fmap)?, force)?;
        *slot = owned_string(report.value.to_string());
        Ok(())
    })
}

/// Parses a grounded function. The poset is given as text; the path in
/// the `gf` header line is ignored.
///
/// # Safety
/// Both strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_grounded_parse(
    gf_text: *const c_char,
    poset_text: *const c_char,
    out: *mut *mut MeetdetGrounded,
) -> MeetdetStatus {
    guard(|| {
        let slot = out_mut(out, "out")?;
        *slot = ptr::null_mut();
        let poset_text = read_str(poset_text, "poset_text")?;
        let inner = GroundedFunction::parse(read_str(gf_text, "gf_text")?, |_| parse_poset(poset_text))?;
        *slot = Box::into_raw(Box::new(MeetdetGrounded { inner }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from `meetdet_grounded_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn meetdet_grounded_free(g: *mut MeetdetGrounded) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Evaluates the order-`k` meet hypermatrix of `g` by any method name.
///
/// # Safety
/// `g` must be a live handle; string arguments NUL-terminated; `value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn meetdet_grounded_eval(
    g: *const MeetdetGrounded,
    k: usize,
    method: *const c_char,
    fmap: *const c_char,
    force: bool,
    value: *mut *mut c_char,
) -> MeetdetStatus {
    guard(|| {
        let slot = out_mut(value, "value")?;
        *slot = ptr::null_mut();
        let inst = Instance::Meet {
            gf: handle(g, "grounded")?.inner.clone(),
            k,
        };
        let report = eval::run(parse_method(method)?, &inst, &parse_fmap(fmap)?, force)?;
        *slot = owned_string(report.value.to_string());
        Ok(())
    })
}
