//! C ABI over the `pericat` engine.
//!
//! Every fallible call returns a [`PericatStatus`]; on failure the message is
//! available from [`pericat_last_error`] on the same thread. Weights and
//! characters cross the boundary as opaque handles, strings as
//! NUL-terminated UTF-8 owned by the library and released with
//! [`pericat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pericat::formal_char::theta_char;
use pericat::gl_mult::{parabolic_verma_simple_mult, verma_simple_mult};
use pericat::linkage::{block_count, block_label, same_block};
use pericat::pe3_tables::tilting_character;
use pericat::root_data::parse_q;
use pericat::weyl_hecke::{kl_polynomial, Permutation};
use pericat::{Basis, Error, FormalChar, Parabolic, Weight};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PericatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input: bad number, length mismatch, bad JSON.
    Parse = 3,
    NotWeaklyTypical = 4,
    NoTableEntry = 5,
    NonTerminating = 6,
    /// Any other well-formed query the engine rejects.
    Domain = 7,
    Panic = 8,
}

/// Opaque ρ-shifted weight.
pub struct PericatWeight(Weight);

/// Opaque formal character.
pub struct PericatChar(FormalChar);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null,
    Utf8,
    Engine(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Engine(e)
    }
}

fn status_of(e: &Error) -> PericatStatus {
    match e {
        Error::Parse(_)
        | Error::LengthMismatch { .. }
        | Error::InvalidComposition(_)
        | Error::Json(_)
        | Error::Io(_) => PericatStatus::Parse,
        Error::NotWeaklyTypical { .. } => PericatStatus::NotWeaklyTypical,
        Error::NoTableEntry { .. } => PericatStatus::NoTableEntry,
        Error::NonTerminating { .. } => PericatStatus::NonTerminating,
        _ => PericatStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PericatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PericatStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            PericatStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("argument is not valid UTF-8".into());
            PericatStatus::InvalidUtf8
        }
        Ok(Err(Fail::Engine(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            PericatStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn opt_str_arg<'a>(s: *const c_char) -> Result<Option<&'a str>, Fail> {
    if s.is_null() {
        Ok(None)
    } else {
        str_arg(s).map(Some)
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Utf8)?;
    put(out, c.into_raw())
}

fn parabolic_for(composition: Option<&str>, n: usize) -> Result<Parabolic, Error> {
    let p = match composition {
        None => Parabolic::borel(n),
        Some(s) => s.parse()?,
    };
    if p.n() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: p.n(),
        });
    }
    Ok(p)
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next call into the library from this thread; do not free.
#[no_mangle]
pub extern "C" fn pericat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pericat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a comma-separated weight such as `"-1,1/2,5"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_weight_parse(
    text: *const c_char,
    out: *mut *mut PericatWeight,
) -> PericatStatus {
    guard(|| {
        let w: Weight = str_arg(text)?.parse()?;
        put(out, Box::into_raw(Box::new(PericatWeight(w))))
    })
}

/// # Safety
/// `w` must come from [`pericat_weight_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pericat_weight_free(w: *mut PericatWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_weight_to_string(
    w: *const PericatWeight,
    out: *mut *mut c_char,
) -> PericatStatus {
    guard(|| put_string(out, deref(w)?.0.to_string()))
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_weight_rank(
    w: *const PericatWeight,
    out: *mut usize,
) -> PericatStatus {
    guard(|| put(out, deref(w)?.0.n()))
}

/// Block label as JSON, e.g. `[{"key":"0","size":3,"odd":1}]`.
///
/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_block_label_json(
    w: *const PericatWeight,
    out: *mut *mut c_char,
) -> PericatStatus {
    guard(|| {
        let json = serde_json::to_string(&block_label(&deref(w)?.0)).map_err(Error::from)?;
        put_string(out, json)
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_same_block(
    a: *const PericatWeight,
    b: *const PericatWeight,
    out: *mut bool,
) -> PericatStatus {
    guard(|| put(out, same_block(&deref(a)?.0, &deref(b)?.0)?))
}

/// Number of blocks for the class sizes `sizes[0..len]`.
///
/// # Safety
/// `sizes` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_block_count(
    sizes: *const usize,
    len: usize,
    out: *mut u64,
) -> PericatStatus {
    guard(|| {
        if sizes.is_null() {
            return Err(Fail::Null);
        }
        let p = Parabolic::new(std::slice::from_raw_parts(sizes, len).to_vec())?;
        put(out, block_count(&p))
    })
}

/// Parse a character from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_char_from_json(
    json: *const c_char,
    out: *mut *mut PericatChar,
) -> PericatStatus {
    guard(|| {
        let chi = FormalChar::from_json(str_arg(json)?)?;
        put(out, Box::into_raw(Box::new(PericatChar(chi))))
    })
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pericat_char_free(c: *mut PericatChar) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// JSON form of a character. The zero character is written in the ∇-basis.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_char_to_json(
    c: *const PericatChar,
    out: *mut *mut c_char,
) -> PericatStatus {
    guard(|| {
        let json = deref(c)?.0.to_json(&Basis::Nabla(Parabolic::borel(1)))?;
        put_string(out, json)
    })
}

/// Apply `θ_a`, with `a` a rational such as `"-1"` or `"3/2"`.
///
/// # Safety
/// `a` must be a NUL-terminated string, `c` a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_theta(
    a: *const c_char,
    c: *const PericatChar,
    out: *mut *mut PericatChar,
) -> PericatStatus {
    guard(|| {
        let a = parse_q(str_arg(a)?)?;
        let chi = theta_char(a, &deref(c)?.0)?;
        put(out, Box::into_raw(Box::new(PericatChar(chi))))
    })
}

/// `T^p_λ` in the ∇-basis. `parabolic` is a composition such as `"2,1"`,
/// or NULL for the Borel.
///
/// # Safety
/// `w` must be a live handle, `parabolic` NULL or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_tilting(
    w: *const PericatWeight,
    parabolic: *const c_char,
    out: *mut *mut PericatChar,
) -> PericatStatus {
    guard(|| {
        let w = &deref(w)?.0;
        let p = parabolic_for(opt_str_arg(parabolic)?, w.n())?;
        let chi = tilting_character(w, &p)?;
        put(out, Box::into_raw(Box::new(PericatChar(chi))))
    })
}

/// Coefficients of `P_{x,w}` as a JSON array, lowest degree first.
/// Permutations are one-line, e.g. `"3412"` or `"2,1,3"`.
///
/// # Safety
/// `x`, `w` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_kl_poly(
    x: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> PericatStatus {
    guard(|| {
        let x: Permutation = str_arg(x)?.parse()?;
        let w: Permutation = str_arg(w)?.parse()?;
        let poly = kl_polynomial(&x, &w)?;
        put_string(out, serde_json::to_string(&poly).map_err(Error::from)?)
    })
}

/// `[M(μ) : L(λ)]` for `gl(n)`, parabolic if `parabolic` is non-NULL.
///
/// # Safety
/// `verma`, `simple` must be live handles, `parabolic` NULL or
/// NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pericat_verma_mult(
    verma: *const PericatWeight,
    simple: *const PericatWeight,
    parabolic: *const c_char,
    out: *mut i64,
) -> PericatStatus {
    guard(|| {
        let mu = &deref(verma)?.0;
        let lambda = &deref(simple)?.0;
        let m = match opt_str_arg(parabolic)? {
            None => verma_simple_mult(mu, lambda)?,
            Some(s) => parabolic_verma_simple_mult(mu, lambda, &parabolic_for(Some(s), mu.n())?)?,
        };
        put(out, m)
    })
}
