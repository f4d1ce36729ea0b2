use super::levelset::{assemble, Tol};
use super::regionset::RegionSet;
use crate::error::{Error, Result};
use crate::geom::{turn_angle, Arc, ArcPolygon, Edge, Location, Offset, Point, Region, TolerancePolicy};

/// Slack on the distance predicate relative to the intersection tolerance.
const KEEP_FACTOR: f64 = 10.0;

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("radius must be finite and non-negative, got {r}")))
    }
}

/// Inner parallel set `{x ∈ Ω : dist(x, ∂Ω) ≥ r}`, lower-dimensional pieces included.
pub fn erode(region: &Region, r: f64) -> Result<RegionSet> {
    check_radius(r)?;
    let tol = region.tolerance();
    if r <= tol.tau_geom {
        return Ok(RegionSet::from(region));
    }
    let poly = region.outer().merged(tol.tau_geom);
    let lt = Tol::for_scale(tol.tau_geom, region.bbox().diagonal());
    let mut cands = Vec::new();
    let mut pts = Vec::new();
    push_offsets(&poly, r, lt.int, &mut cands, &mut pts);
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (&poly.edges[i], &poly.edges[(i + 1) % n]);
        let turn = turn_angle(a, b);
        if turn < -1e-12 {
            let start = a.end_tangent().perp().angle();
            cands.push(Edge::Arc(Arc::new(a.end(), r, start, turn)));
        }
    }
    let slack = KEEP_FACTOR * lt.int;
    let keep = |p: Point| {
        let d = poly.distance(p);
        d >= r - slack && poly.locate(p, 0.0) == Location::Inside
    };
    Ok(assemble(&cands, &pts, &keep, &lt))
}

/// Offsets towards the left by `d` (negative `d` goes right).
fn push_offsets(poly: &ArcPolygon, d: f64, tol: f64, cands: &mut Vec<Edge>, pts: &mut Vec<Point>) {
    for e in &poly.edges {
        push_offset(e, d, tol, cands, pts);
    }
}

fn push_offset(e: &Edge, d: f64, tol: f64, cands: &mut Vec<Edge>, pts: &mut Vec<Point>) {
    match e.offset(d, tol) {
        Offset::Edge(c) => cands.push(c),
        Offset::Point(p) => pts.push(p),
        Offset::None => {}
    }
}

/// Minkowski sum with the closed disk of radius `r`.
pub fn dilate(set: &RegionSet, r: f64, tol: &TolerancePolicy) -> Result<RegionSet> {
    check_radius(r)?;
    if set.is_empty() || r <= tol.tau_geom {
        return Ok(set.clone());
    }
    let lt = Tol::for_scale(tol.tau_geom, set.scale() + 2.0 * r);
    let mut cands = Vec::new();
    let mut pts = Vec::new();
    for l in set.loops() {
        push_offsets(l, -r, lt.int, &mut cands, &mut pts);
        let n = l.len();
        for i in 0..n {
            let (a, b) = (&l.edges[i], &l.edges[(i + 1) % n]);
            let turn = turn_angle(a, b);
            if turn > 1e-12 {
                let start = (-a.end_tangent().perp()).angle();
                cands.push(Edge::Arc(Arc::new(a.end(), r, start, turn)));
            }
        }
    }
    let mut discs: Vec<Point> = set.points.clone();
    for c in &set.curves {
        for e in &c.edges {
            push_offset(e, -r, lt.int, &mut cands, &mut pts);
            let mut left = Vec::new();
            push_offset(e, r, lt.int, &mut left, &mut pts);
            cands.extend(left.iter().map(Edge::reversed));
            discs.push(e.start());
        }
        discs.push(c.end());
    }
    let mut seen: Vec<Point> = Vec::new();
    for p in discs {
        if seen.iter().all(|q| q.dist(p) > lt.snap) {
            seen.push(p);
            cands.push(Edge::Arc(Arc::full_circle(p, r, 0.0, true)));
        }
    }
    let slack = KEEP_FACTOR * lt.int;
    let keep = |p: Point| set.distance(p) >= r - slack;
    Ok(assemble(&cands, &pts, &keep, &lt))
}

/// Morphological opening: erosion followed by dilation with the same disk.
pub fn open(region: &Region, r: f64) -> Result<RegionSet> {
    let e = erode(region, r)?;
    dilate(&e, r, region.tolerance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square() -> Region {
        Region::with_default_tolerance(ArcPolygon::from_vertices(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ]))
        .unwrap()
    }

    #[test]
    fn erode_square() {
        let e = erode(&square(), 0.25).unwrap();
        assert_eq!(e.bodies.len(), 1);
        assert!(e.curves.is_empty() && e.points.is_empty());
        assert!((e.area() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn erode_square_to_center_point() {
        let e = erode(&square(), 0.5).unwrap();
        assert!(e.bodies.is_empty() && e.curves.is_empty());
        assert_eq!(e.points.len(), 1);
        assert!(e.points[0].dist(Point::new(0.5, 0.5)) < 1e-9);
        assert!(erode(&square(), 0.5 + 1e-6).unwrap().is_empty());
    }

    #[test]
    fn dilate_point_and_segment() {
        let t = TolerancePolicy::default();
        let d = dilate(&RegionSet::point(Point::new(1.0, 1.0)), 1.0, &t).unwrap();
        assert!((d.area() - PI).abs() < 1e-12);
        let s = RegionSet::curve(vec![Edge::segment(Point::new(0.0, 0.0), Point::new(2.0, 0.0))]);
        let d = dilate(&s, 1.0, &t).unwrap();
        assert_eq!(d.bodies.len(), 1);
        assert!((d.area() - (PI + 4.0)).abs() < 1e-12);
    }

    #[test]
    fn open_square() {
        let o = open(&square(), 0.25).unwrap();
        assert_eq!(o.bodies.len(), 1);
        assert!((o.area() - (1.0 - (4.0 - PI) * 0.0625)).abs() < 1e-12);
    }
}
