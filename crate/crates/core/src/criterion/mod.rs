//! Decision procedures: rolling disk, strict rolling disk, prescribed-curvature and
//! self-Cheeger verdicts, and the maximal minimizer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Region, TolerancePolicy};
use crate::morphology::{
    antipodal_at, closure_of_interior_equals, connected_components, dilate, erode, symmetric_difference_area, Engine,
    RegionSet,
};

/// Largest radius of a disk contained in the region.
pub fn inradius(region: &Region) -> Result<f64> {
    Ok(Engine::interior(region).max_radius())
}

/// Outcome of the rolling-disk test with its two ingredients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RollingDisk {
    pub holds: bool,
    pub no_necks: bool,
    pub opening_equal: bool,
    /// Number of path components of the inner parallel set.
    pub components: usize,
    /// `|open(Ω, R) Δ Ω| / |Ω|`.
    pub relative_symdiff: f64,
    #[serde(skip)]
    pub inner: RegionSet,
}

/// Rolling-disk property of radius `r`: no necks and `Ω = Ω_r ⊕ B_r`.
pub fn rolling_disk(region: &Region, r: f64) -> Result<RollingDisk> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::BadParameter(format!("radius must be positive, got {r}")));
    }
    let tol = region.tolerance();
    let inner = erode(region, r)?;
    if inner.is_empty() {
        return Ok(RollingDisk {
            holds: false,
            no_necks: false,
            opening_equal: false,
            components: 0,
            relative_symdiff: 1.0,
            inner,
        });
    }
    let components = connected_components(&inner, tol.tau_geom).count;
    let opened = dilate(&inner, r, tol)?;
    let rel = symmetric_difference_area(&opened, &RegionSet::from(region), tol) / region.area();
    let no_necks = components == 1;
    let opening_equal = rel <= tol.tau_set;
    Ok(RollingDisk {
        holds: no_necks && opening_equal,
        no_necks,
        opening_equal,
        components,
        relative_symdiff: rel,
        inner,
    })
}

/// Strict rolling-disk property: no disk of radius `r` touches the boundary at two
/// antipodal points.
pub fn strict_rolling_disk(region: &Region, r: f64) -> Result<bool> {
    let rd = rolling_disk(region, r)?;
    if !rd.holds {
        return Err(Error::PreconditionFailed(format!("rolling disk property of radius {r} does not hold")));
    }
    Ok(strict_given(region, r, &rd.inner))
}

fn strict_given(region: &Region, r: f64, inner: &RegionSet) -> bool {
    if !inner.curves.is_empty() {
        return false;
    }
    !antipodal_at(region, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PmcStatus {
    Minimizer,
    UniqueMinimizer,
    NotApplicable,
    NotDetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmcDiagnostics {
    pub no_necks: bool,
    /// Path components of the inner parallel set.
    pub components: usize,
    pub opening_equal: bool,
    pub relative_symdiff: f64,
    pub strict: bool,
    pub closure_of_interior: bool,
}

impl PmcDiagnostics {
    fn from_rolling(rd: &RollingDisk) -> Self {
        PmcDiagnostics {
            no_necks: rd.no_necks,
            components: rd.components,
            opening_equal: rd.opening_equal,
            relative_symdiff: rd.relative_symdiff,
            strict: false,
            closure_of_interior: false,
        }
    }

    fn empty() -> Self {
        PmcDiagnostics {
            no_necks: false,
            components: 0,
            opening_equal: false,
            relative_symdiff: f64::NAN,
            strict: false,
            closure_of_interior: false,
        }
    }
}

/// Verdict on whether a region minimizes `P(E) − κ|E|` among its subsets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmcVerdict {
    pub kappa: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub ratio: f64,
    pub status: PmcStatus,
    pub functional_value: f64,
    pub diagnostics: PmcDiagnostics,
    pub tolerances: TolerancePolicy,
}

pub fn check_prescribed_curvature(region: &Region, kappa: f64) -> Result<PmcVerdict> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::BadParameter(format!("kappa must be positive, got {kappa}")));
    }
    let tol = *region.tolerance();
    let (area, per) = (region.area(), region.perimeter());
    let r = 1.0 / kappa;
    let ratio = area / per;
    let functional_value = per - kappa * area;
    let mut diagnostics = PmcDiagnostics::empty();
    let status = if r > ratio + tol.tau_radius * ratio.max(1.0) {
        PmcStatus::NotApplicable
    } else {
        let rd = rolling_disk(region, r)?;
        diagnostics = PmcDiagnostics::from_rolling(&rd);
        if rd.holds {
            diagnostics.strict = strict_given(region, r, &rd.inner);
            diagnostics.closure_of_interior = closure_of_interior_equals(&rd.inner);
            if diagnostics.strict || diagnostics.closure_of_interior {
                PmcStatus::UniqueMinimizer
            } else {
                PmcStatus::Minimizer
            }
        } else {
            PmcStatus::NotDetermined
        }
    };
    Ok(PmcVerdict { kappa, r, ratio, status, functional_value, diagnostics, tolerances: tol })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheegerStatus {
    SelfCheeger,
    MinimalCheeger,
    NotDetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UniquenessRoute {
    Strict,
    InteriorClosure,
    None,
}

/// Verdict on whether a region is its own Cheeger set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheegerVerdict {
    #[serde(rename = "R")]
    pub r: f64,
    /// `1/R` when the verdict is determined.
    pub h: Option<f64>,
    pub status: CheegerStatus,
    pub uniqueness_route: UniquenessRoute,
    pub convex_flag: bool,
    pub area: f64,
    pub perimeter: f64,
    pub diagnostics: PmcDiagnostics,
    pub tolerances: TolerancePolicy,
}

impl CheegerVerdict {
    pub fn is_determined(&self) -> bool {
        self.status != CheegerStatus::NotDetermined
    }
}

pub fn check_self_cheeger(region: &Region) -> Result<CheegerVerdict> {
    let tol = *region.tolerance();
    let (area, perimeter) = (region.area(), region.perimeter());
    let r = area / perimeter;
    let rd = rolling_disk(region, r)?;
    let mut diagnostics = PmcDiagnostics::from_rolling(&rd);
    let (status, route, h) = if rd.holds {
        diagnostics.strict = strict_given(region, r, &rd.inner);
        diagnostics.closure_of_interior = closure_of_interior_equals(&rd.inner);
        let route = if diagnostics.strict {
            UniquenessRoute::Strict
        } else if diagnostics.closure_of_interior {
            UniquenessRoute::InteriorClosure
        } else {
            UniquenessRoute::None
        };
        let status =
            if route == UniquenessRoute::None { CheegerStatus::SelfCheeger } else { CheegerStatus::MinimalCheeger };
        (status, route, Some(1.0 / r))
    } else {
        (CheegerStatus::NotDetermined, UniquenessRoute::None, None)
    };
    Ok(CheegerVerdict {
        r,
        h,
        status,
        uniqueness_route: route,
        convex_flag: region.is_convex(),
        area,
        perimeter,
        diagnostics,
        tolerances: tol,
    })
}

/// Union of all minimizers of `P(E) − κ|E|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximalMinimizer {
    pub kappa: f64,
    pub set: RegionSet,
    pub area: f64,
    /// The minimizer is unique among subsets of positive area.
    pub unique: bool,
}

/// Maximal minimizer, certified by `κ ≥ P(Ω)/|Ω|`.
pub fn maximal_minimizer(region: &Region, kappa: f64) -> Result<MaximalMinimizer> {
    let bound = region.perimeter() / region.area();
    let tol = region.tolerance().tau_radius * bound.max(1.0);
    if kappa < bound - tol {
        return Err(Error::CertificateUnavailable { kappa, bound });
    }
    minimizer_unchecked(region, kappa)
}

/// Maximal minimizer, certified by an externally established upper bound `h_upper ≥ h_Ω`.
pub fn maximal_minimizer_with_bound(region: &Region, kappa: f64, h_upper: f64) -> Result<MaximalMinimizer> {
    if !(kappa >= h_upper) {
        return Err(Error::CertificateUnavailable { kappa, bound: h_upper });
    }
    minimizer_unchecked(region, kappa)
}

fn minimizer_unchecked(region: &Region, kappa: f64) -> Result<MaximalMinimizer> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::BadParameter(format!("kappa must be positive, got {kappa}")));
    }
    let r = 1.0 / kappa;
    let inner = erode(region, r)?;
    if inner.is_empty() {
        let inradius = inradius(region)?;
        return Err(Error::NoInscribedDisk { r, inradius });
    }
    if connected_components(&inner, region.tolerance().tau_geom).count != 1 {
        return Err(Error::NeckObstruction(r));
    }
    let set = dilate(&inner, r, region.tolerance())?;
    Ok(MaximalMinimizer { kappa, area: set.area(), unique: closure_of_interior_equals(&inner), set })
}
