//! C ABI for the balancing verifier.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `*_free`. Every string returned through an out-pointer is
//! NUL-terminated UTF-8 and must be released with [`tb_string_free`]. On a
//! status other than `TB_STATUS_OK`/`TB_STATUS_VIOLATION`, out-pointers are left untouched
//! and [`tb_last_error`] describes the failure as a JSON `{error, detail}`
//! object.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropbal::balance::{check_curve, Overall};
use tropbal::complex::{embed_faces, locate};
use tropbal::fixtures::{fixture, FixtureName};
use tropbal::io::{
    curve_from_json, parse_point, to_pretty_json, AlphaOutput, AnnuliFile, CurveFile, Degeneration,
    ErrorObject, FixtureOutput, LocateOutput, SkeletonOutput,
};
use tropbal::{Error, TropicalCurve};

/// Parsed degeneration: intersection complex plus α data.
pub struct TbDegeneration(Degeneration);

/// Parsed tropical curve.
pub struct TbCurve(TropicalCurve);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbStatus {
    Ok = 0,
    /// `tb_check` finished and at least one vertex violates the condition.
    Violation = 1,
    ErrNullPointer = 2,
    ErrUtf8 = 3,
    ErrJson = 4,
    ErrParse = 5,
    ErrInvalid = 6,
    ErrNotInSkeleton = 7,
    ErrUnknownName = 8,
    ErrNotInvertible = 9,
    ErrMissingData = 10,
    ErrRelationViolated = 11,
    ErrValidation = 12,
    ErrIo = 13,
    ErrPanic = 14,
}

impl From<&Error> for TbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => TbStatus::ErrParse,
            Error::Json(_) => TbStatus::ErrJson,
            Error::Io(_) => TbStatus::ErrIo,
            Error::NotInSkeleton(_) | Error::SegmentLeavesSkeleton(_) => TbStatus::ErrNotInSkeleton,
            Error::UnknownStratum(_)
            | Error::UnknownComponent(_)
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::UnknownFixture(_) => TbStatus::ErrUnknownName,
            Error::NotInvertible { .. } => TbStatus::ErrNotInvertible,
            Error::MissingFunction(_) | Error::MissingCycleData(_) => TbStatus::ErrMissingData,
            Error::RelationViolated(_) => TbStatus::ErrRelationViolated,
            Error::Validation(_) => TbStatus::ErrValidation,
            _ => TbStatus::ErrInvalid,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(code: &str, detail: String) {
    let obj = ErrorObject {
        error: code.to_string(),
        detail,
    };
    let text = serde_json::to_string(&obj).unwrap_or_default();
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(TbStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_last_error(e.code(), e.to_string());
        Failure(TbStatus::from(&e))
    }
}

fn fail(status: TbStatus, code: &str, detail: &str) -> Failure {
    set_last_error(code, detail.to_string());
    Failure(status)
}

/// Runs `body`, turning errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<TbStatus, Failure>) -> TbStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status))) => status,
        Err(_) => {
            set_last_error("E_PANIC", "internal panic".into());
            TbStatus::ErrPanic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(
            TbStatus::ErrNullPointer,
            "E_NULL",
            &format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            TbStatus::ErrUtf8,
            "E_UTF8",
            &format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| {
        fail(
            TbStatus::ErrNullPointer,
            "E_NULL",
            &format!("{what} is null"),
        )
    })
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(
            TbStatus::ErrNullPointer,
            "E_NULL",
            "output pointer is null",
        ));
    }
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text)
        .map_err(|_| fail(TbStatus::ErrInvalid, "E_INVALID", "output contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses a degeneration document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_degeneration_from_json(
    json: *const c_char,
    strict: bool,
    out: *mut *mut TbDegeneration,
) -> TbStatus {
    guard(|| {
        check_out(out)?;
        let deg = Degeneration::from_json(str_arg(json, "json")?, strict)?;
        *out = Box::into_raw(Box::new(TbDegeneration(deg)));
        Ok(TbStatus::Ok)
    })
}

/// # Safety
/// `deg` must come from [`tb_degeneration_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn tb_degeneration_free(deg: *mut TbDegeneration) {
    if !deg.is_null() {
        drop(Box::from_raw(deg));
    }
}

/// Parses a curve document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_curve_from_json(
    json: *const c_char,
    out: *mut *mut TbCurve,
) -> TbStatus {
    guard(|| {
        check_out(out)?;
        let curve = curve_from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(TbCurve(curve)));
        Ok(TbStatus::Ok)
    })
}

/// # Safety
/// `curve` must come from [`tb_curve_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn tb_curve_free(curve: *mut TbCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Checks every vertex and writes the report as JSON.
///
/// Returns `TB_STATUS_OK` when all vertices are balanced, `TB_STATUS_VIOLATION` when some
/// vertex is not, and `TB_STATUS_ERR_VALIDATION` when the inputs are invalid.
///
/// # Safety
/// Handles must be live; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_check(
    deg: *const TbDegeneration,
    curve: *const TbCurve,
    strict: bool,
    report_json: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        check_out(report_json)?;
        let deg = &ref_arg(deg, "degeneration")?.0;
        let curve = &ref_arg(curve, "curve")?.0;
        let report = check_curve(&deg.complex, &deg.cycle_data, curve, strict);
        if report.overall == Overall::HasErrors {
            return Err(Error::Validation(report.errors).into());
        }
        put_string(report_json, to_pretty_json(&report))?;
        Ok(match report.overall {
            Overall::HasViolation => TbStatus::Violation,
            _ => TbStatus::Ok,
        })
    })
}

/// Writes the α matrix of the stratum named by `stratum` (e.g. `"D0,D1"`).
///
/// # Safety
/// `deg` must be live; `stratum` NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_alpha(
    deg: *const TbDegeneration,
    stratum: *const c_char,
    out_json: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        check_out(out_json)?;
        let deg = &ref_arg(deg, "degeneration")?.0;
        let (s, data) = deg.stratum_data(str_arg(stratum, "stratum")?)?;
        let out = AlphaOutput {
            stratum: deg.complex.names(&s),
            alpha: &data.alpha,
        };
        put_string(out_json, to_pretty_json(&out))?;
        Ok(TbStatus::Ok)
    })
}

/// Writes the face containing `point` (e.g. `"D0=1/2,D1=1/2"`).
///
/// # Safety
/// `deg` must be live; `point` NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_locate(
    deg: *const TbDegeneration,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        check_out(out_json)?;
        let deg = &ref_arg(deg, "degeneration")?.0;
        let p = parse_point(str_arg(point, "point")?)?;
        let face = locate(&deg.complex, &p)?;
        let out = LocateOutput {
            face: deg.complex.names(&face),
        };
        put_string(out_json, to_pretty_json(&out))?;
        Ok(TbStatus::Ok)
    })
}

/// Writes the embedded maximal faces of the skeleton.
///
/// # Safety
/// `deg` must be live; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_skeleton(
    deg: *const TbDegeneration,
    out_json: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        check_out(out_json)?;
        let deg = &ref_arg(deg, "degeneration")?.0;
        let out = SkeletonOutput::new(&deg.complex, embed_faces(&deg.complex)?);
        put_string(out_json, to_pretty_json(&out))?;
        Ok(TbStatus::Ok)
    })
}

/// Computes edge weights from an annulus document.
///
/// # Safety
/// `annuli_json` NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_weights(
    annuli_json: *const c_char,
    out_json: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        check_out(out_json)?;
        let out = AnnuliFile::from_json(str_arg(annuli_json, "annuli_json")?)?.weights()?;
        put_string(out_json, to_pretty_json(&out))?;
        Ok(TbStatus::Ok)
    })
}

/// Writes a built-in example as `{degeneration, curve, annuli}`.
///
/// # Safety
/// `name` NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_fixture(name: *const c_char, out_json: *mut *mut c_char) -> TbStatus {
    guard(|| {
        check_out(out_json)?;
        let name: FixtureName = str_arg(name, "name")?.parse()?;
        let fx = fixture(name);
        let deg_file = fx.degeneration.to_file();
        let curve_file = CurveFile::from(&fx.curve);
        let out = FixtureOutput {
            degeneration: &deg_file,
            curve: &curve_file,
            annuli: &fx.annuli,
        };
        put_string(out_json, to_pretty_json(&out))?;
        Ok(TbStatus::Ok)
    })
}

/// JSON `{error, detail}` for the last failure on this thread, or null.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn tb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn tb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
