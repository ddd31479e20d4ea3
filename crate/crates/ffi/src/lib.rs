//! C ABI over fanokit.
//!
//! Every fallible function returns an [`FkStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`fk_last_error`] on the same thread. Strings returned to the caller are
//! owned by them and must be released with [`fk_string_free`]; handles with
//! their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fanokit::bott::{bott_cohomology, BottResult, GrassmannianBundle};
use fanokit::field::PrimeField;
use fanokit::forms::{alpha4_as_form, classify_orbit, AltForm};
use fanokit::hodge::jacobian::hypersurface_hodge;
use fanokit::linalg::Matrix;
use fanokit::pfaffian::{pfaffian, SkewMatrix};
use fanokit::Error;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    InvalidWeight = 4,
    NoMatch = 5,
    Overflow = 6,
    Json = 7,
    Panic = 99,
}

/// Cohomology of a homogeneous bundle. `dim` is only meaningful when
/// `vanishing` is 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FkBottResult {
    pub vanishing: i32,
    pub degree: usize,
    pub dim: u64,
}

/// Orbit invariants. `name` is NUL-terminated.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FkOrbit {
    pub name: [c_char; 8],
    pub orbit_dim: usize,
    pub two_rank: usize,
    pub q_rank: usize,
}

/// Opaque alternating form on Q^n.
pub struct FkAltForm(AltForm);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> FkStatus {
    match err {
        Error::NotNonIncreasing(_)
        | Error::EmptyWeight
        | Error::NegativePart(_)
        | Error::LengthMismatch { .. }
        | Error::NotRankTwo(_) => FkStatus::InvalidWeight,
        Error::NoOrbitMatch { .. } => FkStatus::NoMatch,
        Error::Json(_) => FkStatus::Json,
        _ => FkStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (FkStatus, String)>) -> FkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FkStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FkStatus::Panic
        }
    }
}

fn lift(err: Error) -> (FkStatus, String) {
    (status_of(&err), err.to_string())
}

fn null() -> (FkStatus, String) {
    (FkStatus::NullPointer, "null pointer argument".into())
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], (FkStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (FkStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| (FkStatus::InvalidUtf8, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior NUL").into_raw()
}

/// Last error message on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn fk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Cohomology of Σ^quotient Q ⊗ Σ^sub S on Gr(m, n). `quotient` has n - m
/// entries (NULL means zero) and `sub` has m.
///
/// # Safety
/// Pointers must be valid for their lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_bott(
    m: usize,
    n: usize,
    quotient: *const i64,
    sub: *const i64,
    out: *mut FkBottResult,
) -> FkStatus {
    guard(|| {
        if out.is_null() || sub.is_null() {
            return Err(null());
        }
        if m == 0 || m >= n {
            return Err(lift(Error::InvalidGrassmannian { sub_rank: m, ambient_dim: n }));
        }
        let q = if quotient.is_null() { vec![0; n - m] } else { slice(quotient, n - m)?.to_vec() };
        let b = GrassmannianBundle::from_slices(n, m, &q, slice(sub, m)?).map_err(lift)?;
        *out = match bott_cohomology(&b) {
            BottResult::Vanishing => FkBottResult { vanishing: 1, degree: 0, dim: 0 },
            BottResult::Cohomology { degree, dim, .. } => FkBottResult {
                vanishing: 0,
                degree,
                dim: dim.to_u64().ok_or((FkStatus::Overflow, format!("dimension {dim} exceeds 64 bits")))?,
            },
        };
        Ok(())
    })
}

/// Hodge number h^{p,q} of a smooth degree-d hypersurface in P^n, p + q = n - 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_hypersurface_hodge(n: usize, d: usize, p: usize, q: usize, out: *mut u64) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let h = hypersurface_hodge(n, d).map_err(lift)?;
        *out = h.h(p, q).ok_or((FkStatus::InvalidArgument, format!("({p},{q}) is not a middle-degree entry")))?;
        Ok(())
    })
}

/// Parses a form from its JSON term list.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_from_json(json: *const c_char, space_dim: usize, out: *mut *mut FkAltForm) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let f = AltForm::from_json(str_arg(json)?, space_dim, None).map_err(lift)?;
        *out = Box::into_raw(Box::new(FkAltForm(f)));
        Ok(())
    })
}

/// The 4-form α₄ on Q^7.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_alpha4(out: *mut *mut FkAltForm) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = Box::into_raw(Box::new(FkAltForm(alpha4_as_form())));
        Ok(())
    })
}

/// Degree of the form, or 0 for NULL.
///
/// # Safety
/// `form` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_degree(form: *const FkAltForm) -> usize {
    form.as_ref().map_or(0, |f| f.0.degree())
}

/// JSON term list of the form; release with [`fk_string_free`].
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_to_json(form: *const FkAltForm, out: *mut *mut c_char) -> FkStatus {
    guard(|| {
        let (Some(f), false) = (form.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = into_c_string(f.0.to_json());
        Ok(())
    })
}

/// Orbit of a 3- or 4-form on Q^7.
///
/// # Safety
/// `form` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_classify(form: *const FkAltForm, out: *mut FkOrbit) -> FkStatus {
    guard(|| {
        let (Some(f), false) = (form.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let r = classify_orbit(&f.0).map_err(lift)?;
        let mut name = [0 as c_char; 8];
        for (slot, b) in name.iter_mut().zip(r.name.bytes().take(7)) {
            *slot = b as c_char;
        }
        *out = FkOrbit { name, orbit_dim: r.orbit_dim, two_rank: r.two_rank, q_rank: r.q_rank };
        Ok(())
    })
}

/// # Safety
/// `form` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fk_alt_form_free(form: *mut FkAltForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

unsafe fn skew(prime: u64, size: usize, entries: *const u64) -> Result<(PrimeField, SkewMatrix<u64>), (FkStatus, String)> {
    let field = PrimeField::new(prime).map_err(lift)?;
    let flat = slice(entries, size * size)?;
    let rows: Matrix<u64> = flat.chunks(size.max(1)).take(size).map(|r| r.iter().map(|v| v % prime).collect()).collect();
    let m = SkewMatrix::new(&field, rows).map_err(lift)?;
    Ok((field, m))
}

/// Rank over F_prime of a skew matrix given row-major.
///
/// # Safety
/// `entries` must hold size*size values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_skew_rank(prime: u64, size: usize, entries: *const u64, out: *mut usize) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let (field, m) = skew(prime, size, entries)?;
        *out = m.rank(&field);
        Ok(())
    })
}

/// Pfaffian over F_prime of an even-size skew matrix given row-major.
///
/// # Safety
/// `entries` must hold size*size values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn fk_pfaffian(prime: u64, size: usize, entries: *const u64, out: *mut u64) -> FkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let (field, m) = skew(prime, size, entries)?;
        *out = pfaffian(&field, &m).map_err(lift)?;
        Ok(())
    })
}
