//! C ABI over the `cheeger` crate.
//!
//! Regions are opaque handles created by `cheeger_region_*` constructors and released
//! with `cheeger_region_free`. Every call returns a [`CheegerCode`]; the message of the
//! last failure on the calling thread is available from `cheeger_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cheeger::constructor::{build_self_cheeger, fixture};
use cheeger::criterion::{check_self_cheeger, CheegerStatus, UniquenessRoute};
use cheeger::geom::json::to_json_string;
use cheeger::morphology::RegionSet;
use cheeger::oracle::cheeger_estimate;
use cheeger::{ArcPolygon, Error, Region};

/// Status code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheegerCode {
    Ok = 0,
    NullArgument = 1,
    BadUtf8 = 2,
    BadJson = 3,
    InvalidRegion = 4,
    BadParameter = 5,
    ConstructionFailed = 6,
    NumericalDegeneracy = 7,
    Panic = 8,
}

/// Self-Cheeger status.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheegerVerdictStatus {
    NotDetermined = 0,
    SelfCheeger = 1,
    MinimalCheeger = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheegerRoute {
    None = 0,
    Strict = 1,
    InteriorClosure = 2,
}

/// Plain-data summary of a self-Cheeger verdict. `h` is NaN when undetermined.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CheegerVerdictC {
    pub status: CheegerVerdictStatus,
    pub route: CheegerRoute,
    pub r: f64,
    pub h: f64,
    pub convex: bool,
    pub no_necks: bool,
    pub components: usize,
}

/// Opaque validated region.
pub struct CheegerRegion {
    inner: Region,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> CheegerCode {
    match e {
        Error::InvalidRegion(_) => CheegerCode::InvalidRegion,
        Error::Json(_) => CheegerCode::BadJson,
        Error::NumericalDegeneracy(_) => CheegerCode::NumericalDegeneracy,
        Error::DegenerateInnerSet | Error::ReachTooSmall(_) | Error::NotSimplyConnected | Error::Disconnected(_) => {
            CheegerCode::ConstructionFailed
        }
        _ => CheegerCode::BadParameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), CheegerCode>) -> CheegerCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CheegerCode::Ok,
        Ok(Err(c)) => c,
        Err(_) => {
            set_error("internal panic");
            CheegerCode::Panic
        }
    }
}

fn fail(e: Error) -> CheegerCode {
    set_error(&e.to_string());
    code_of(&e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CheegerCode> {
    if s.is_null() {
        set_error("null string argument");
        return Err(CheegerCode::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        CheegerCode::BadUtf8
    })
}

unsafe fn region_ref<'a>(r: *const CheegerRegion) -> Result<&'a Region, CheegerCode> {
    r.as_ref().map(|r| &r.inner).ok_or_else(|| {
        set_error("null region handle");
        CheegerCode::NullArgument
    })
}

fn null_out() -> CheegerCode {
    set_error("null output pointer");
    CheegerCode::NullArgument
}

fn give(region: Region, out: *mut *mut CheegerRegion) {
    unsafe { *out = Box::into_raw(Box::new(CheegerRegion { inner: region })) };
}

/// Message of the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn cheeger_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a shape JSON document into a region.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cheeger_region_from_json(json: *const c_char, out: *mut *mut CheegerRegion) -> CheegerCode {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        let text = read_str(json)?;
        let poly: ArcPolygon = serde_json::from_str(text).map_err(|e| fail(e.into()))?;
        give(Region::with_default_tolerance(poly).map_err(fail)?, out);
        Ok(())
    })
}

/// Builds a catalog shape; `params` may be null when `n_params` is zero.
///
/// # Safety
/// `name` must be NUL-terminated, `params` must point to `n_params` doubles, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_region_fixture(
    name: *const c_char,
    params: *const f64,
    n_params: usize,
    out: *mut *mut CheegerRegion,
) -> CheegerCode {
    guard(|| {
        if out.is_null() || (params.is_null() && n_params > 0) {
            return Err(null_out());
        }
        let name = read_str(name)?;
        let p = if n_params == 0 { &[][..] } else { std::slice::from_raw_parts(params, n_params) };
        give(fixture(name, p).map_err(fail)?, out);
        Ok(())
    })
}

/// Releases a region; null is ignored.
///
/// # Safety
/// `region` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cheeger_region_free(region: *mut CheegerRegion) {
    if !region.is_null() {
        drop(Box::from_raw(region));
    }
}

/// # Safety
/// `region` must be a live handle and the output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_region_measures(
    region: *const CheegerRegion,
    area: *mut f64,
    perimeter: *mut f64,
) -> CheegerCode {
    guard(|| {
        let r = region_ref(region)?;
        if area.is_null() || perimeter.is_null() {
            return Err(null_out());
        }
        *area = r.area();
        *perimeter = r.perimeter();
        Ok(())
    })
}

/// Shape JSON of a region; free the string with `cheeger_string_free`.
///
/// # Safety
/// `region` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_region_to_json(region: *const CheegerRegion, out: *mut *mut c_char) -> CheegerCode {
    guard(|| {
        let r = region_ref(region)?;
        if out.is_null() {
            return Err(null_out());
        }
        let s = to_json_string(r).map_err(|e| fail(e.into()))?;
        *out = CString::new(s).map_err(|_| null_out())?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cheeger_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the rolling-disk test at `R = |Ω|/P(Ω)`.
///
/// # Safety
/// `region` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_check_self_cheeger(
    region: *const CheegerRegion,
    out: *mut CheegerVerdictC,
) -> CheegerCode {
    guard(|| {
        let r = region_ref(region)?;
        if out.is_null() {
            return Err(null_out());
        }
        let v = check_self_cheeger(r).map_err(fail)?;
        *out = CheegerVerdictC {
            status: match v.status {
                CheegerStatus::NotDetermined => CheegerVerdictStatus::NotDetermined,
                CheegerStatus::SelfCheeger => CheegerVerdictStatus::SelfCheeger,
                CheegerStatus::MinimalCheeger => CheegerVerdictStatus::MinimalCheeger,
            },
            route: match v.uniqueness_route {
                UniquenessRoute::None => CheegerRoute::None,
                UniquenessRoute::Strict => CheegerRoute::Strict,
                UniquenessRoute::InteriorClosure => CheegerRoute::InteriorClosure,
            },
            r: v.r,
            h: v.h.unwrap_or(f64::NAN),
            convex: v.convex_flag,
            no_necks: v.diagnostics.no_necks,
            components: v.diagnostics.components,
        };
        Ok(())
    })
}

/// Grid bracket `[h_lo, h_hi]` for the Cheeger constant.
///
/// # Safety
/// `region` must be a live handle and the output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_oracle_estimate(
    region: *const CheegerRegion,
    resolution: usize,
    h_lo: *mut f64,
    h_hi: *mut f64,
) -> CheegerCode {
    guard(|| {
        let r = region_ref(region)?;
        if h_lo.is_null() || h_hi.is_null() {
            return Err(null_out());
        }
        let e = cheeger_estimate(r, resolution).map_err(fail)?;
        *h_lo = e.h_lo;
        *h_hi = e.h_hi;
        Ok(())
    })
}

/// Builds the self-Cheeger set `ω ⊕ B_R` from a shape or region-set JSON for `ω`.
///
/// # Safety
/// `omega_json` must be NUL-terminated; `out` and `radius` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cheeger_construct(
    omega_json: *const c_char,
    out: *mut *mut CheegerRegion,
    radius: *mut f64,
) -> CheegerCode {
    guard(|| {
        if out.is_null() || radius.is_null() {
            return Err(null_out());
        }
        let text = read_str(omega_json)?;
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| fail(e.into()))?;
        let omega = if v.get("edges").is_some() {
            RegionSet::body(serde_json::from_value(v).map_err(|e| fail(e.into()))?)
        } else {
            serde_json::from_value(v).map_err(|e| fail(e.into()))?
        };
        let rep = build_self_cheeger(&omega).map_err(fail)?;
        *radius = rep.r;
        give(rep.big_omega, out);
        Ok(())
    })
}
