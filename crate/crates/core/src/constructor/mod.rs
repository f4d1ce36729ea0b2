//! Self-Cheeger sets built as Minkowski sums `ω ⊕ B_R` with `|ω| = πR²`, and the
//! named fixture catalog.

mod fixtures;

pub use fixtures::{fixture, fixture_names, Fixture, FIXTURES};

use std::f64::consts::PI;

use serde::Serialize;

use crate::criterion::{check_self_cheeger, CheegerVerdict};
use crate::error::{Error, Result};
use crate::geom::{Point, Region, TolerancePolicy};
use crate::morphology::{closure_of_interior_equals, connected_components, dilate, Engine, RegionSet};

/// Outer Minkowski content: perimeter of the bodies plus twice the length of the
/// curves. Isolated points contribute nothing.
pub fn outer_minkowski_content(omega: &RegionSet) -> f64 {
    let loops: f64 = omega.loops().map(|l| l.perimeter()).sum();
    loops + 2.0 * omega.curve_length()
}

fn is_convex_set(omega: &RegionSet) -> bool {
    let pieces = omega.bodies.len() + omega.curves.len() + omega.points.len();
    if pieces != 1 || !omega.holes.is_empty() {
        return false;
    }
    if let Some(b) = omega.bodies.first() {
        return b.is_convex();
    }
    if let Some(c) = omega.curves.first() {
        return c.edges.len() == 1 && !c.edges[0].is_arc();
    }
    true
}

/// A point outside `ω` with two distinct nearest points of `ω`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReachWitness {
    pub point: Point,
    pub distance: f64,
    pub feet: [Point; 2],
}

fn nearest(omega: &RegionSet, p: Point) -> (Point, f64) {
    let mut best = (p, f64::INFINITY);
    for e in omega.edges() {
        let (q, _, d) = e.closest(p);
        if d < best.1 {
            best = (q, d);
        }
    }
    for &q in &omega.points {
        let d = q.dist(p);
        if d < best.1 {
            best = (q, d);
        }
    }
    best
}

/// Outward directions at the sample points of `ω` used by the ray search.
fn ray_seeds(omega: &RegionSet, per_edge: usize) -> Vec<(Point, Point)> {
    let mut seeds = Vec::new();
    let fan = |p: Point, seeds: &mut Vec<(Point, Point)>| {
        for k in 0..16 {
            seeds.push((p, Point::polar(k as f64 * PI / 8.0)));
        }
    };
    for l in omega.loops() {
        for e in &l.edges {
            for s in 1..per_edge {
                let t = s as f64 / per_edge as f64;
                seeds.push((e.point_at(t), -e.tangent_at(t).perp()));
            }
            fan(e.start(), &mut seeds);
        }
    }
    for c in &omega.curves {
        for e in &c.edges {
            for s in 1..per_edge {
                let t = s as f64 / per_edge as f64;
                let n = e.tangent_at(t).perp();
                seeds.push((e.point_at(t), n));
                seeds.push((e.point_at(t), -n));
            }
            fan(e.start(), &mut seeds);
        }
        fan(c.end(), &mut seeds);
    }
    for &p in &omega.points {
        fan(p, &mut seeds);
    }
    seeds
}

/// Sampled double-projection search: shoots normal rays from boundary samples and
/// returns a point at distance `≤ r` whose nearest point is not unique.
pub fn reach_witness(omega: &RegionSet, r: f64, per_edge: usize) -> Option<ReachWitness> {
    let scale = omega.scale();
    let eps = 1e-9 * scale;
    let mut best: Option<ReachWitness> = None;
    let s0 = 1e-4 * r.min(scale);
    for (foot, u) in ray_seeds(omega, per_edge.max(2)) {
        let lost = |s: f64| nearest(omega, foot + u * s).1 < s - eps;
        // rays outside the normal cone at `foot` lose clearance immediately
        if nearest(omega, foot + u * s0).1 < s0 * (1.0 - 1e-6) || !lost(r) {
            continue;
        }
        let (mut lo, mut hi) = (s0, r);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if lost(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let q = foot + u * hi;
        let (g, d) = nearest(omega, q);
        if best.as_ref().map_or(true, |b| d < b.distance) {
            best = Some(ReachWitness { point: q, distance: d, feet: [foot, g] });
        }
    }
    best
}

/// Whether every point within distance `r` of `ω` has a unique nearest point of `ω`.
pub fn reach_at_least(omega: &RegionSet, r: f64) -> bool {
    if omega.is_empty() || is_convex_set(omega) {
        return true;
    }
    let tau = TolerancePolicy::default().tau_geom;
    let eng = Engine::exterior(omega, r * (1.0 + 1e-9) + tau, tau);
    if eng.min_radius() <= r {
        return false;
    }
    reach_witness(omega, r, 32).is_none()
}

/// Certified self-Cheeger set `Ω = ω ⊕ B_R` together with Steiner's formula checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    #[serde(rename = "R")]
    pub r: f64,
    pub omega: RegionSet,
    #[serde(rename = "Omega")]
    pub big_omega: Region,
    #[serde(rename = "M_o")]
    pub m_o: f64,
    pub steiner_area_residual: f64,
    pub steiner_perimeter_residual: f64,
    pub verdict: CheegerVerdict,
    /// `ω` equals the closure of its interior.
    pub minimal: bool,
}

pub fn build_self_cheeger(omega: &RegionSet) -> Result<ConstructionReport> {
    build_self_cheeger_with(omega, TolerancePolicy::default())
}

pub fn build_self_cheeger_with(omega: &RegionSet, tol: TolerancePolicy) -> Result<ConstructionReport> {
    tol.check()?;
    let area = omega.area();
    if !(area > tol.tau_geom * omega.scale()) {
        return Err(Error::DegenerateInnerSet);
    }
    if !omega.holes.is_empty() || omega.curves.iter().any(|c| c.edges.len() > 1 && c.is_closed(tol.tau_geom)) {
        return Err(Error::NotSimplyConnected);
    }
    let comps = connected_components(omega, tol.tau_geom).count;
    if comps != 1 {
        return Err(Error::Disconnected(comps));
    }
    let r = (area / PI).sqrt();
    if !reach_at_least(omega, r + tol.tau_geom) {
        return Err(Error::ReachTooSmall(r));
    }
    let sum = dilate(omega, r, &tol)?;
    if !sum.holes.is_empty() {
        return Err(Error::NotSimplyConnected);
    }
    if sum.bodies.len() != 1 || !sum.is_full_bodied() {
        return Err(Error::Disconnected(sum.bodies.len()));
    }
    let big = Region::new(sum.bodies[0].clone(), tol)?;
    let m_o = outer_minkowski_content(omega);
    let steiner_area_residual = (big.area() - (area + r * m_o + PI * r * r)).abs();
    let steiner_perimeter_residual = (big.perimeter() - (m_o + 2.0 * PI * r)).abs();
    let verdict = check_self_cheeger(&big)?;
    if !verdict.is_determined() {
        return Err(Error::NumericalDegeneracy(format!(
            "rolling disk check failed on the built set (relative symmetric difference {:e})",
            verdict.diagnostics.relative_symdiff
        )));
    }
    Ok(ConstructionReport {
        r,
        omega: omega.clone(),
        big_omega: big,
        m_o,
        steiner_area_residual,
        steiner_perimeter_residual,
        verdict,
        minimal: closure_of_interior_equals(omega),
    })
}

impl ConstructionReport {
    pub fn h(&self) -> f64 {
        1.0 / self.r
    }
}
