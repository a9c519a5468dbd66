//! C interface. Fans and Picard groups are opaque handles released with
//! their `_free` functions; strings returned by the library are released
//! with `htriv_string_free`. Every fallible call returns an `HtStatus` and,
//! on failure, records a message readable with `htriv_last_error` on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use htriv::classify::{enumerate_h_trivial, has_infinitely_many_h_trivial, ClassifyOptions};
use htriv::cohomology::cohomology_dims;
use htriv::forbidden::{is_h_trivial, is_h_trivial_cross_checked};
use htriv::io::parse_fan_str;
use htriv::io::report::{classify_result, ReportDocument, ResultSection};
use htriv::{HtError, LatticeVector2, PicardGroup, StackyFan};
use num_rational::BigRational;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Domain = 5,
    OracleDisagreement = 6,
    Panic = 7,
}

/// A validated stacky fan.
pub struct HtFan {
    fan: StackyFan,
    basis: Option<Vec<usize>>,
}

/// A Picard group together with its fan.
pub struct HtPicard {
    pic: PicardGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: HtError) -> HtStatus {
    set_error(format!("{}: {e}", e.code()));
    match e.root() {
        HtError::Parse { .. } => HtStatus::Parse,
        HtError::InvalidArgument(_) => HtStatus::InvalidArgument,
        HtError::OracleDisagreement(_) => HtStatus::OracleDisagreement,
        _ => HtStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> HtStatus) -> HtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("E_PANIC: internal error".into());
            HtStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HtStatus> {
    if p.is_null() {
        set_error("E_NULL: null string argument".into());
        return Err(HtStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("E_UTF8: string argument is not UTF-8".into());
        HtStatus::InvalidUtf8
    })
}

fn null_error() -> HtStatus {
    set_error("E_NULL: null pointer argument".into());
    HtStatus::NullPointer
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn htriv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn htriv_version() -> *const c_char {
    concat!("htriv ", env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a fan from `n` vectors stored as `coords[2i], coords[2i+1]`.
///
/// # Safety
/// `coords` must point to `2 * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_fan_new(coords: *const i64, n: usize, out: *mut *mut HtFan) -> HtStatus {
    guard(|| {
        if coords.is_null() || out.is_null() {
            return null_error();
        }
        let c = std::slice::from_raw_parts(coords, 2 * n);
        let vectors = c.chunks(2).map(|p| LatticeVector2::new(p[0], p[1])).collect();
        let fan = try_status!(htriv::validate_fan(vectors).map_err(fail));
        *out = Box::into_raw(Box::new(HtFan { fan, basis: None }));
        HtStatus::Ok
    })
}

/// Parse fan-file JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_fan_from_json(json: *const c_char, out: *mut *mut HtFan) -> HtStatus {
    guard(|| {
        if out.is_null() {
            return null_error();
        }
        let t = try_status!(text(json));
        let f = try_status!(parse_fan_str(t).map_err(fail));
        *out = Box::into_raw(Box::new(HtFan { fan: f.fan, basis: f.basis }));
        HtStatus::Ok
    })
}

/// # Safety
/// `fan` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn htriv_fan_free(fan: *mut HtFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of rays, or 0 for NULL.
///
/// # Safety
/// `fan` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn htriv_fan_ray_count(fan: *const HtFan) -> usize {
    fan.as_ref().map_or(0, |f| f.fan.n())
}

/// Whether the fan has a pair of opposite rays, i.e. infinitely many H-trivial classes.
///
/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_fan_is_infinite(fan: *const HtFan, out: *mut bool) -> HtStatus {
    guard(|| {
        let (Some(f), false) = (fan.as_ref(), out.is_null()) else {
            return null_error();
        };
        *out = !f.fan.collinear_pairs().is_empty();
        HtStatus::Ok
    })
}

/// Picard group in the fan file's basis if it had one, else the default basis.
///
/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_new(fan: *const HtFan, out: *mut *mut HtPicard) -> HtStatus {
    guard(|| {
        let (Some(f), false) = (fan.as_ref(), out.is_null()) else {
            return null_error();
        };
        let pic = match &f.basis {
            Some(b) => try_status!(PicardGroup::with_basis(&f.fan, b).map_err(fail)),
            None => PicardGroup::new(&f.fan),
        };
        *out = Box::into_raw(Box::new(HtPicard { pic }));
        HtStatus::Ok
    })
}

/// Picard group with the divisors at 1-based ray indices `basis[0..len]` as coordinates.
///
/// # Safety
/// `fan` must be a live handle, `basis` must hold `len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_with_basis(
    fan: *const HtFan,
    basis: *const usize,
    len: usize,
    out: *mut *mut HtPicard,
) -> HtStatus {
    guard(|| {
        let (Some(f), false, false) = (fan.as_ref(), basis.is_null(), out.is_null()) else {
            return null_error();
        };
        let b = std::slice::from_raw_parts(basis, len);
        if b.contains(&0) {
            return fail(HtError::InvalidBasis("indices are 1-based".into()));
        }
        let b: Vec<usize> = b.iter().map(|i| i - 1).collect();
        let pic = try_status!(PicardGroup::with_basis(&f.fan, &b).map_err(fail));
        *out = Box::into_raw(Box::new(HtPicard { pic }));
        HtStatus::Ok
    })
}

/// # Safety
/// `pic` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_free(pic: *mut HtPicard) {
    if !pic.is_null() {
        drop(Box::from_raw(pic));
    }
}

/// Free rank, or 0 for NULL.
///
/// # Safety
/// `pic` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_free_rank(pic: *const HtPicard) -> usize {
    pic.as_ref().map_or(0, |p| p.pic.free_rank())
}

/// Number of torsion invariants, or 0 for NULL.
///
/// # Safety
/// `pic` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_torsion_count(pic: *const HtPicard) -> usize {
    pic.as_ref().map_or(0, |p| p.pic.torsion_invariants().len())
}

/// Cohomology dimensions h0, h1, h2 of a class written like "(1,0,-1)".
///
/// # Safety
/// `pic` must be a live handle, `class_text` NUL-terminated and `out` hold 3 values.
#[no_mangle]
pub unsafe extern "C" fn htriv_cohomology(pic: *const HtPicard, class_text: *const c_char, out: *mut u64) -> HtStatus {
    guard(|| {
        let (Some(p), false) = (pic.as_ref(), out.is_null()) else {
            return null_error();
        };
        let c = try_status!(p.pic.parse_class(try_status!(text(class_text))).map_err(fail));
        let d = try_status!(cohomology_dims(&p.pic, &c).map_err(fail));
        let o = std::slice::from_raw_parts_mut(out, 3);
        o.copy_from_slice(&[d.h0, d.h1, d.h2]);
        HtStatus::Ok
    })
}

/// Whether a class is H-trivial. With `cross_check`, both oracles run and a
/// disagreement returns `HT_STATUS_ORACLE_DISAGREEMENT`.
///
/// # Safety
/// `pic` must be a live handle, `class_text` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_is_h_trivial(
    pic: *const HtPicard,
    class_text: *const c_char,
    cross_check: bool,
    out: *mut bool,
) -> HtStatus {
    guard(|| {
        let (Some(p), false) = (pic.as_ref(), out.is_null()) else {
            return null_error();
        };
        let c = try_status!(p.pic.parse_class(try_status!(text(class_text))).map_err(fail));
        let r = if cross_check { is_h_trivial_cross_checked(&p.pic, &c) } else { is_h_trivial(&p.pic, &c) };
        *out = try_status!(r.map_err(fail));
        HtStatus::Ok
    })
}

/// Classification report as JSON (`htriv-report/1`). `radius` is an integer
/// or `p/q`. Release the string with `htriv_string_free`.
///
/// # Safety
/// `pic` must be a live handle, `radius` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn htriv_classify_json(
    pic: *const HtPicard,
    radius: *const c_char,
    certify: bool,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        let (Some(p), false) = (pic.as_ref(), out.is_null()) else {
            return null_error();
        };
        let r = try_status!(text(radius));
        let radius = try_status!(r
            .trim()
            .parse::<BigRational>()
            .map_err(|_| fail(HtError::InvalidArgument(format!("radius {r:?} is not a number")))));
        let options = ClassifyOptions { radius, certify, line_window: None };
        let report = try_status!(enumerate_h_trivial(&p.pic, &options).map_err(fail));
        let doc = ReportDocument::for_fan(None, &p.pic, ResultSection::Classify(classify_result(&report)));
        let s = CString::new(doc.to_json()).expect("JSON has no NUL bytes");
        *out = s.into_raw();
        HtStatus::Ok
    })
}

/// Whether the group's fan has infinitely many H-trivial classes.
///
/// # Safety
/// `pic` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn htriv_picard_is_infinite(pic: *const HtPicard) -> bool {
    pic.as_ref().is_some_and(|p| has_infinitely_many_h_trivial(&p.pic))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn htriv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
