mod common;

use std::f64::consts::PI;

use cheeger::constructor::{build_self_cheeger, fixture, fixture_names, reach_at_least};
use cheeger::criterion::{check_prescribed_curvature, check_self_cheeger, inradius, rolling_disk, strict_rolling_disk};
use cheeger::morphology::{dilate, erode, intersection_area, open, symmetric_difference_area, RegionSet};
use cheeger::{ArcPolygon, Location, Point, Region, TolerancePolicy};
use proptest::prelude::*;

use common::convex_arc_polygon;

fn catalog() -> impl Strategy<Value = &'static str> {
    prop::sample::select(fixture_names().collect::<Vec<_>>())
}

fn convex_polygon() -> impl Strategy<Value = ArcPolygon> {
    (3usize..=12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1.0f64..3.0, n),
                0.5f64..2.0,
                0.5f64..2.0,
                0.0f64..(2.0 * PI),
                prop::collection::vec(0.0f64..1.0, n),
            )
        })
        .prop_map(|(gaps, a, b, rot, bulges)| convex_arc_polygon(&gaps, a, b, rot, &bulges))
}

fn convex_region() -> impl Strategy<Value = Region> {
    convex_polygon().prop_map(|p| Region::with_default_tolerance(p).expect("generated polygon is valid"))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn perimeter(s: &RegionSet) -> f64 {
    s.loops().map(ArcPolygon::perimeter).sum()
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_polygons_are_convex(r in convex_region()) {
        prop_assert!(r.is_convex());
    }

    #[test]
    fn isoperimetric_inequality(r in convex_region()) {
        let (a, p) = (r.area(), r.perimeter());
        prop_assert!(p * p - 4.0 * PI * a > 1e-9 * p * p);
    }

    #[test]
    fn rigid_motions_preserve_measures(r in convex_region(), theta in 0.0f64..(2.0 * PI), tx in -50.0f64..50.0, ty in -50.0f64..50.0) {
        let m = r.transformed(1.0, theta, Point::new(tx, ty)).unwrap();
        prop_assert!(rel(m.area(), r.area()) <= 1e-9);
        prop_assert!(rel(m.perimeter(), r.perimeter()) <= 1e-9);
    }

    #[test]
    fn steiner_identity_on_convex_bodies(r in convex_region(), d in 0.01f64..3.0) {
        let sum = dilate(&RegionSet::from(&r), d, r.tolerance()).unwrap();
        prop_assert_eq!(sum.bodies.len(), 1);
        prop_assert!(sum.holes.is_empty());
        let (a, p) = (r.area(), r.perimeter());
        prop_assert!(rel(sum.area(), a + p * d + PI * d * d) <= 1e-7, "{} vs {}", sum.area(), a + p * d + PI * d * d);
        prop_assert!(rel(perimeter(&sum), p + 2.0 * PI * d) <= 1e-7);
    }

    #[test]
    fn convex_construction_round_trip(p in convex_polygon()) {
        let omega = RegionSet::body(p);
        let rep = build_self_cheeger(&omega).unwrap();
        prop_assert!(rel(omega.area(), PI * rep.r * rep.r) <= 1e-12);
        let scale = rep.big_omega.area();
        prop_assert!(rep.steiner_area_residual <= 1e-7 * scale);
        prop_assert!(rep.steiner_perimeter_residual <= 1e-7 * rep.big_omega.perimeter());
        prop_assert!(rep.verdict.is_determined());
        let inner = erode(&rep.big_omega, rep.r).unwrap();
        prop_assert!(rel(intersection_area(&inner, &omega, &tol()), omega.area()) <= 1e-7);
        let back = dilate(&inner, rep.r, &tol()).unwrap();
        prop_assert!(symmetric_difference_area(&back, &RegionSet::from(&rep.big_omega), &tol()) <= 1e-7 * scale);
    }

    #[test]
    fn convex_reach_is_unbounded(p in convex_polygon(), r in 0.01f64..100.0) {
        prop_assert!(reach_at_least(&RegionSet::body(p), r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn catalog_isoperimetric_inequality(name in catalog()) {
        let r = fixture(name, &[]).unwrap();
        let (a, p) = (r.area(), r.perimeter());
        if name == "disk" {
            prop_assert!(rel(p * p, 4.0 * PI * a) <= 1e-9);
        } else {
            prop_assert!(p * p - 4.0 * PI * a > 1e-9 * p * p);
        }
    }

    #[test]
    fn rigid_motions_preserve_verdicts(name in catalog(), theta in 0.0f64..(2.0 * PI), tx in -20.0f64..20.0, ty in -20.0f64..20.0) {
        let r = fixture(name, &[]).unwrap();
        let m = r.transformed(1.0, theta, Point::new(tx, ty)).unwrap();
        prop_assert!(rel(m.area(), r.area()) <= 1e-9);
        prop_assert!(rel(m.perimeter(), r.perimeter()) <= 1e-9);
        let (v, w) = (check_self_cheeger(&r).unwrap(), check_self_cheeger(&m).unwrap());
        prop_assert_eq!(v.status, w.status);
        prop_assert_eq!(v.uniqueness_route, w.uniqueness_route);
        prop_assert!(rel(w.r, v.r) <= 1e-9);
        prop_assert_eq!(v.diagnostics.components, w.diagnostics.components);
    }

    #[test]
    fn uniform_scaling(name in catalog(), k in 0usize..3) {
        let s = [0.5, 2.0, 3.0][k];
        let r = fixture(name, &[]).unwrap();
        let m = r.transformed(s, 0.0, Point::new(0.0, 0.0)).unwrap();
        prop_assert!(rel(m.area(), s * s * r.area()) <= 1e-12);
        prop_assert!(rel(m.perimeter(), s * r.perimeter()) <= 1e-12);
        let (v, w) = (check_self_cheeger(&r).unwrap(), check_self_cheeger(&m).unwrap());
        prop_assert_eq!(v.status, w.status);
        if let (Some(h), Some(g)) = (v.h, w.h) {
            prop_assert!(rel(g, h / s) <= 1e-9);
        }
    }

    #[test]
    fn erosion_is_monotone(name in catalog(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let r = fixture(name, &[]).unwrap();
        let rho = inradius(&r).unwrap();
        let (a, b) = (u.min(v) * rho, u.max(v) * rho);
        let (ea, eb) = (erode(&r, a).unwrap(), erode(&r, b).unwrap());
        let lost = eb.area() - intersection_area(&eb, &ea, r.tolerance());
        prop_assert!(lost.abs() <= 1e-7 * r.area(), "{lost}");
        let lower_dim = eb.curves.iter().flat_map(|c| c.edges.iter().map(|e| e.midpoint())).chain(eb.points.iter().copied());
        for p in lower_dim {
            prop_assert!(ea.contains(p, 1e-7));
        }
        prop_assert!(eb.area() <= ea.area() + 1e-12 * r.area());
    }

    #[test]
    fn opening_is_anti_extensive_and_idempotent(name in catalog(), u in 0.02f64..1.0) {
        let r = fixture(name, &[]).unwrap();
        let d = u * inradius(&r).unwrap();
        let o = open(&r, d).unwrap();
        let scale = r.area();
        let outside = o.area() - intersection_area(&o, &RegionSet::from(&r), r.tolerance());
        prop_assert!(outside.abs() <= 1e-7 * scale, "{outside}");
        prop_assert!(o.area() <= scale * (1.0 + 1e-12));
        prop_assert!(o.holes.is_empty());
        for b in &o.bodies {
            let piece = Region::with_default_tolerance(b.clone()).unwrap();
            let oo = open(&piece, d).unwrap();
            prop_assert!(symmetric_difference_area(&oo, &RegionSet::body(b.clone()), &tol()) <= 1e-7 * scale);
        }
    }

    #[test]
    fn erosion_agrees_with_boundary_distance(name in catalog(), u in 0.05f64..0.95, samples in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 40)) {
        let r = fixture(name, &[]).unwrap();
        let d = u * inradius(&r).unwrap();
        let e = erode(&r, d).unwrap();
        let bb = r.bbox();
        for (sx, sy) in samples {
            let p = Point::new(bb.min.x + sx * bb.width(), bb.min.y + sy * bb.height());
            if r.contains(p) != Location::Inside {
                continue;
            }
            let dist = r.boundary_distance(p);
            if (dist - d).abs() <= 1e-7 {
                continue;
            }
            prop_assert_eq!(e.contains(p, 0.0), dist > d, "{:?} at distance {} vs {}", p, dist, d);
        }
    }

    #[test]
    fn rolling_disk_at_r_gives_strictness_below(name in catalog(), u in 0.05f64..0.98) {
        let r = fixture(name, &[]).unwrap();
        let big = r.area() / r.perimeter();
        if rolling_disk(&r, big).unwrap().holds {
            let small = u * big;
            prop_assert!(rolling_disk(&r, small).unwrap().holds);
            prop_assert!(strict_rolling_disk(&r, small).unwrap());
        }
    }

    #[test]
    fn constructed_sets_are_strict_below_their_radius(p in convex_polygon(), u in 0.05f64..0.98) {
        let rep = build_self_cheeger(&RegionSet::body(p)).unwrap();
        prop_assert!(rolling_disk(&rep.big_omega, rep.r).unwrap().holds);
        prop_assert!(strict_rolling_disk(&rep.big_omega, u * rep.r).unwrap());
    }

    #[test]
    fn reach_is_monotone(name in catalog(), u in 0.01f64..2.0, v in 0.0f64..1.0) {
        let omega = RegionSet::from(&fixture(name, &[]).unwrap());
        if reach_at_least(&omega, u) {
            prop_assert!(reach_at_least(&omega, u * v));
        }
    }

    #[test]
    fn functional_value_identity(name in catalog(), kappa in 0.1f64..20.0) {
        let r = fixture(name, &[]).unwrap();
        let v = check_prescribed_curvature(&r, kappa).unwrap();
        let expected = r.perimeter() - r.area() / (1.0 / kappa);
        prop_assert!((v.functional_value - expected).abs() <= 1e-12 * r.perimeter().max(1.0));
    }

    #[test]
    fn construction_is_scale_equivariant(p in convex_polygon(), k in 0usize..2) {
        let s = [0.5, 2.0][k];
        let a = build_self_cheeger(&RegionSet::body(p.clone())).unwrap();
        let b = build_self_cheeger(&RegionSet::body(p.transformed(s, 0.0, Point::new(0.0, 0.0)))).unwrap();
        prop_assert!(rel(b.r, s * a.r) <= 1e-12);
        prop_assert!(rel(b.h(), a.h() / s) <= 1e-12);
    }
}
