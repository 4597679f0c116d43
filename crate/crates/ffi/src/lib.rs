//! C ABI over `poisson-forge`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`PfStatus`]; on failure the message is available from
//! [`pf_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use poisson_forge::cp3::{is_poisson_cp3, Method};
use poisson_forge::foliation::{bivector_of_form, pencil_form};
use poisson_forge::hp1::is_poisson_hp1;
use poisson_forge::parse::{parse_form, parse_mvec_of_grade, parse_poly};
use poisson_forge::{Error, MVec, Tensor2};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Grade = 4,
    NotInvariant = 5,
    NotReal = 6,
    InvalidInput = 7,
    Internal = 8,
}

/// A ℂ*-invariant holomorphic bivector on ℂ⁴.
pub struct PfBivector {
    tensor: Tensor2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PfCp3Verdict {
    pub poisson: bool,
    pub nontrivial: bool,
    pub bracket_zero_on_c4: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PfHp1Verdict {
    pub poisson: bool,
    pub phi_fixed: bool,
    pub cp3_poisson: bool,
    pub nontrivial: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(PfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnknownIdentifier { .. } => PfStatus::Syntax,
            Error::GradeMismatch { .. } | Error::GradeZero => PfStatus::Grade,
            Error::NotInvariant { .. } => PfStatus::NotInvariant,
            Error::NotPhiFixed => PfStatus::NotReal,
            Error::InvalidForm(_) | Error::InvalidPoly(_) | Error::TensorJson(_) | Error::UnknownFixture(_) | Error::BadChart(_) => {
                PfStatus::InvalidInput
            }
            Error::DimensionMismatch { .. } | Error::ZeroPoint => PfStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PfStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PfStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PfStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn handle_arg<'a>(p: *const PfBivector, what: &str) -> Result<&'a PfBivector, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s).expect("rendered text has no nul bytes").into_raw()
}

fn publish(out: &mut *mut PfBivector, w: &MVec) -> Result<(), Failure> {
    let tensor = Tensor2::from_mvec(w)?;
    *out = Box::into_raw(Box::new(PfBivector { tensor }));
    Ok(())
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a bivector such as `"z0*z1*d2/\d3"`.
///
/// # Safety
/// `src` must be null or a nul-terminated string; `out` must be null or
/// point to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_parse(src: *const c_char, out: *mut *mut PfBivector) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let w = parse_mvec_of_grade(str_arg(src, "src")?, 2)?;
        publish(out, &w)
    })
}

/// Reads a bivector from its coefficient-tensor JSON.
///
/// # Safety
/// As for [`pf_bivector_parse`].
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_from_json(json: *const c_char, out: *mut *mut PfBivector) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let tensor = Tensor2::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(PfBivector { tensor }));
        Ok(())
    })
}

/// Builds the bivector of a degree-3 one-form such as `"z1^3*dz0 - z0*z1^2*dz1"`.
///
/// # Safety
/// As for [`pf_bivector_parse`].
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_from_form(form: *const c_char, out: *mut *mut PfBivector) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let omega = parse_form(str_arg(form, "form")?)?;
        publish(out, &bivector_of_form(&omega)?)
    })
}

/// Builds the bivector of the pencil spanned by two quadrics `f`, `g`.
///
/// # Safety
/// As for [`pf_bivector_parse`].
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_from_pencil(
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut PfBivector,
) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let f = parse_poly(str_arg(f, "f")?)?;
        let g = parse_poly(str_arg(g, "g")?)?;
        publish(out, &bivector_of_form(&pencil_form(&f, &g)?)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `b` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_free(b: *mut PfBivector) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Renders the bivector; release the string with [`pf_string_free`].
///
/// # Safety
/// `b` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_render(b: *const PfBivector, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = string_out(handle_arg(b, "bivector")?.tensor.to_mvec().to_string());
        Ok(())
    })
}

/// Renders the coefficient-tensor JSON; release with [`pf_string_free`].
///
/// # Safety
/// As for [`pf_bivector_render`].
#[no_mangle]
pub unsafe extern "C" fn pf_bivector_to_json(b: *const PfBivector, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = string_out(handle_arg(b, "bivector")?.tensor.to_json()?);
        Ok(())
    })
}

/// Renders the Schouten bracket `[a, b]`; release with [`pf_string_free`].
///
/// # Safety
/// `a`, `b` must be live handles or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pf_bracket(a: *const PfBivector, b: *const PfBivector, out: *mut *mut c_char) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let a = handle_arg(a, "a")?.tensor.to_mvec();
        let b = handle_arg(b, "b")?.tensor.to_mvec();
        *out = string_out(MVec::schouten(&a, &b)?.to_string());
        Ok(())
    })
}

/// Poisson test on complex projective 3-space.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pf_check_cp3(b: *const PfBivector, out: *mut PfCp3Verdict) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let v = is_poisson_cp3(&handle_arg(b, "bivector")?.tensor, Method::Quotient);
        *out = PfCp3Verdict {
            poisson: v.poisson,
            nontrivial: v.nontrivial,
            bracket_zero_on_c4: v.bracket_zero_on_c4,
        };
        Ok(())
    })
}

/// Poisson test on the quaternionic projective line.
///
/// # Safety
/// As for [`pf_check_cp3`].
#[no_mangle]
pub unsafe extern "C" fn pf_check_hp1(b: *const PfBivector, out: *mut PfHp1Verdict) -> PfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let v = is_poisson_hp1(&handle_arg(b, "bivector")?.tensor);
        *out = PfHp1Verdict {
            poisson: v.poisson,
            phi_fixed: v.phi_fixed,
            cp3_poisson: v.cp3_poisson,
            nontrivial: v.nontrivial,
        };
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn pf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        pf_string_free(s);
        out
    }

    unsafe fn last_error() -> String {
        CStr::from_ptr(pf_last_error()).to_str().unwrap().to_owned()
    }

    #[test]
    fn parse_render_check() {
        unsafe {
            let mut b = ptr::null_mut();
            assert_eq!(pf_bivector_parse(c("z0*z1*d2/\\d3").as_ptr(), &mut b), PfStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(pf_bivector_render(b, &mut s), PfStatus::Ok);
            assert_eq!(take(s), "z0*z1*d2/\\d3");
            let mut v = PfCp3Verdict::default();
            assert_eq!(pf_check_cp3(b, &mut v), PfStatus::Ok);
            assert!(v.poisson && v.nontrivial && v.bracket_zero_on_c4);
            pf_bivector_free(b);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut b = ptr::null_mut();
            assert_eq!(pf_bivector_parse(c("z0*d1 +").as_ptr(), &mut b), PfStatus::Syntax);
            assert!(b.is_null());
            assert!(last_error().contains("column"));
            assert_eq!(pf_bivector_parse(c("z0*d1").as_ptr(), &mut b), PfStatus::Grade);
            assert_eq!(pf_bivector_parse(c("zb0*z1*d2/\\d3").as_ptr(), &mut b), PfStatus::NotInvariant);
            assert_eq!(pf_bivector_parse(ptr::null(), &mut b), PfStatus::NullArgument);
            assert_eq!(pf_check_cp3(ptr::null(), ptr::null_mut()), PfStatus::NullArgument);
            let bad = [0xffu8, 0];
            assert_eq!(pf_bivector_parse(bad.as_ptr().cast(), &mut b), PfStatus::InvalidUtf8);
            pf_bivector_free(ptr::null_mut());
            pf_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn pencil_and_hp1() {
        unsafe {
            let mut b = ptr::null_mut();
            let st = pf_bivector_from_pencil(c("z0^2 + z1^2").as_ptr(), c("z2^2 + z3^2").as_ptr(), &mut b);
            assert_eq!(st, PfStatus::Ok);
            let mut v = PfCp3Verdict::default();
            pf_check_cp3(b, &mut v);
            assert!(v.poisson && v.nontrivial);
            let mut h = PfHp1Verdict::default();
            assert_eq!(pf_check_hp1(b, &mut h), PfStatus::Ok);
            assert_eq!(h.cp3_poisson, v.poisson);
            assert_eq!(h.poisson, h.phi_fixed && h.cp3_poisson);
            pf_bivector_free(b);
            let st = pf_bivector_from_pencil(c("z0").as_ptr(), c("z1^2").as_ptr(), &mut b);
            assert_eq!(st, PfStatus::InvalidInput);
        }
    }

    #[test]
    fn json_round_trip_and_bracket() {
        unsafe {
            let mut a = ptr::null_mut();
            pf_bivector_parse(c("z0*z1*d2/\\d3 + z2^2*d0/\\d1").as_ptr(), &mut a);
            let mut j = ptr::null_mut();
            assert_eq!(pf_bivector_to_json(a, &mut j), PfStatus::Ok);
            let mut b = ptr::null_mut();
            assert_eq!(pf_bivector_from_json(j, &mut b), PfStatus::Ok);
            pf_string_free(j);
            let (mut ra, mut rb) = (ptr::null_mut(), ptr::null_mut());
            pf_bivector_render(a, &mut ra);
            pf_bivector_render(b, &mut rb);
            assert_eq!(take(ra), take(rb));
            let mut s = ptr::null_mut();
            assert_eq!(pf_bracket(a, b, &mut s), PfStatus::Ok);
            let expected = {
                let w = parse_mvec_of_grade("z0*z1*d2/\\d3 + z2^2*d0/\\d1", 2).unwrap();
                MVec::schouten(&w, &w).unwrap().to_string()
            };
            assert_eq!(take(s), expected);
            pf_bivector_free(a);
            pf_bivector_free(b);
        }
    }

    #[test]
    fn version_is_a_c_string() {
        let v = unsafe { CStr::from_ptr(pf_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
