use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::edge::{Arc, Edge};
use super::intersect::intersect;
use super::point::{BBox, Point};
use super::tolerance::TolerancePolicy;
use crate::error::{Error, Result};

/// Closed chain of segments and arcs. Valid polygons run counterclockwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcPolygon {
    pub edges: Vec<Edge>,
}

/// Point classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    Empty,
    NonFinite { edge: usize },
    DegenerateEdge { edge: usize },
    Gap { edge: usize, gap: f64 },
    SelfIntersection { first: usize, second: usize, at: Point },
    Orientation { signed_area: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        self.issues
            .iter()
            .map(|i| match i {
                ValidationIssue::Empty => "no edges".to_string(),
                ValidationIssue::NonFinite { edge } => format!("edge {edge} has non-finite data"),
                ValidationIssue::DegenerateEdge { edge } => format!("edge {edge} is degenerate"),
                ValidationIssue::Gap { edge, gap } => format!("not closed: gap {gap:e} after edge {edge}"),
                ValidationIssue::SelfIntersection { first, second, at } => {
                    format!("self-intersection between edges {first} and {second} at ({}, {})", at.x, at.y)
                }
                ValidationIssue::Orientation { signed_area } => {
                    format!("orientation is not counterclockwise (signed area {signed_area})")
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Signed turning angle at a joint between `a` and `b`, in `[-π, π]`.
///
/// Anti-parallel tangents (cusps) are resolved from short chords.
pub fn turn_angle(a: &Edge, b: &Edge) -> f64 {
    let ta = a.end_tangent();
    let tb = b.start_tangent();
    let cr = ta.cross(tb);
    let dt = ta.dot(tb);
    if dt < 0.0 && cr.abs() < 1e-7 {
        let v = a.end();
        let d = (1e-6 * a.length().min(b.length())).max(1e-12);
        let back = a.point_at(1.0 - d / a.length()) - v;
        let fwd = b.point_at(d / b.length()) - v;
        let interior = (back.angle() - fwd.angle()).rem_euclid(TAU);
        return PI - interior;
    }
    cr.atan2(dt)
}

/// Winding contribution of an edge around `p`, assuming `p` is off the edge.
fn edge_winding(e: &Edge, p: Point) -> f64 {
    match e {
        Edge::Segment(s) => {
            let a = s.from - p;
            let b = s.to - p;
            a.cross(b).atan2(a.dot(b))
        }
        Edge::Arc(arc) => {
            let a = e.start() - p;
            let b = e.end() - p;
            if (p - arc.center).norm() < arc.radius {
                if arc.is_full() {
                    return arc.sweep;
                }
                let raw = if arc.ccw() { b.angle() - a.angle() } else { a.angle() - b.angle() };
                let mut w = raw.rem_euclid(TAU);
                if w == 0.0 {
                    w = TAU;
                }
                w * arc.sweep.signum()
            } else if arc.is_full() {
                0.0
            } else {
                a.cross(b).atan2(a.dot(b))
            }
        }
    }
}

/// Winding number of a closed chain around `p` (not on the chain).
pub fn winding_number(edges: &[Edge], p: Point) -> i64 {
    let total: f64 = edges.iter().map(|e| edge_winding(e, p)).sum();
    (total / TAU).round() as i64
}

/// Signed area enclosed by a closed chain.
pub fn chain_area(edges: &[Edge]) -> f64 {
    edges.iter().map(Edge::green).sum()
}

pub fn chain_distance(edges: &[Edge], p: Point) -> f64 {
    edges.iter().map(|e| e.distance(p)).fold(f64::INFINITY, f64::min)
}

pub fn chain_bbox(edges: &[Edge]) -> BBox {
    edges.iter().fold(BBox::EMPTY, |b, e| b.union(e.bbox()))
}

impl ArcPolygon {
    pub fn new(edges: Vec<Edge>) -> Self {
        ArcPolygon { edges }
    }

    /// Closed polygon through `pts` with straight sides.
    pub fn from_vertices(pts: &[Point]) -> Self {
        let n = pts.len();
        ArcPolygon::new((0..n).map(|i| Edge::segment(pts[i], pts[(i + 1) % n])).collect())
    }

    /// Full circle.
    pub fn circle(center: Point, radius: f64) -> Self {
        ArcPolygon::new(vec![Edge::Arc(Arc::full_circle(center, radius, 0.0, true))])
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn signed_area(&self) -> f64 {
        chain_area(&self.edges)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(Edge::length).sum()
    }

    pub fn bbox(&self) -> BBox {
        chain_bbox(&self.edges)
    }

    pub fn distance(&self, p: Point) -> f64 {
        chain_distance(&self.edges, p)
    }

    pub fn winding(&self, p: Point) -> i64 {
        winding_number(&self.edges, p)
    }

    /// Classification against the enclosed region, with a boundary band of `tol`.
    pub fn locate(&self, p: Point, tol: f64) -> Location {
        if self.distance(p) <= tol {
            Location::Boundary
        } else if self.winding(p) != 0 {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    pub fn reversed(&self) -> ArcPolygon {
        ArcPolygon::new(self.edges.iter().rev().map(Edge::reversed).collect())
    }

    pub fn transformed(&self, s: f64, theta: f64, t: Point) -> ArcPolygon {
        ArcPolygon::new(self.edges.iter().map(|e| e.transformed(s, theta, t)).collect())
    }

    /// Turning angle at the vertex ending edge `i`.
    /// Counterclockwise with no clockwise arcs and no reflex corners.
    pub fn is_convex(&self) -> bool {
        self.edges.iter().all(|e| e.as_arc().map_or(true, |c| c.ccw()))
            && (0..self.len()).all(|i| self.turn_at(i) >= -1e-9)
    }

    pub fn turn_at(&self, i: usize) -> f64 {
        let n = self.edges.len();
        turn_angle(&self.edges[i], &self.edges[(i + 1) % n])
    }

    pub fn validate(&self, tol: &TolerancePolicy) -> ValidationReport {
        let t = tol.tau_geom;
        let mut issues = Vec::new();
        let n = self.edges.len();
        if n == 0 {
            issues.push(ValidationIssue::Empty);
            return ValidationReport { valid: false, issues };
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_finite() {
                issues.push(ValidationIssue::NonFinite { edge: i });
                continue;
            }
            let bad = match e {
                Edge::Segment(s) => s.from.dist(s.to) <= t,
                Edge::Arc(a) => {
                    a.radius <= t || a.sweep == 0.0 || a.sweep.abs() > TAU + 1e-12 || a.radius * a.sweep.abs() <= t
                }
            };
            if bad {
                issues.push(ValidationIssue::DegenerateEdge { edge: i });
            }
        }
        if !issues.is_empty() {
            return ValidationReport { valid: false, issues };
        }
        if n == 1 {
            let a = self.edges[0].as_arc();
            if !a.is_some_and(|a| a.is_full()) {
                issues.push(ValidationIssue::Gap { edge: 0, gap: self.edges[0].end().dist(self.edges[0].start()) });
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let g = self.edges[i].end().dist(self.edges[j].start());
            if g > t {
                issues.push(ValidationIssue::Gap { edge: i, gap: g });
            }
        }
        if issues.is_empty() {
            let bbs: Vec<BBox> = self.edges.iter().map(|e| e.bbox().expanded(t)).collect();
            let band = 10.0 * t;
            'outer: for i in 0..n {
                for j in (i + 1)..n {
                    if !bbs[i].overlaps(&bbs[j]) {
                        continue;
                    }
                    let mut shared = Vec::new();
                    if j == i + 1 {
                        shared.push(self.edges[i].end());
                    }
                    if i == 0 && j == n - 1 {
                        shared.push(self.edges[i].start());
                    }
                    for p in intersect(&self.edges[i], &self.edges[j], t) {
                        if shared.iter().all(|q| q.dist(p) > band) {
                            issues.push(ValidationIssue::SelfIntersection { first: i, second: j, at: p });
                            break 'outer;
                        }
                    }
                    // folding back onto a neighbour leaves no crossing point
                    if !shared.is_empty() {
                        let (a, b) = if j == i + 1 { (i, j) } else { (j, i) };
                        let turn = turn_angle(&self.edges[a], &self.edges[b]);
                        if turn.abs() >= PI - 1e-12 && overlapping_start(&self.edges[a], &self.edges[b], t) {
                            issues.push(ValidationIssue::SelfIntersection {
                                first: i,
                                second: j,
                                at: self.edges[a].end(),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        if issues.is_empty() {
            let a = self.signed_area();
            if !(a > 0.0) {
                issues.push(ValidationIssue::Orientation { signed_area: a });
            }
        }
        ValidationReport { valid: issues.is_empty(), issues }
    }

    /// Replace segment endpoints by their neighbours' endpoints so the chain closes exactly.
    pub fn snapped(&self) -> ArcPolygon {
        let n = self.edges.len();
        let mut edges = self.edges.clone();
        for i in 0..n {
            let j = (i + 1) % n;
            let (ei, ej) = (edges[i], edges[j]);
            let joint = match (ei, ej) {
                (Edge::Arc(_), Edge::Segment(_)) => ei.end(),
                (Edge::Segment(_), Edge::Arc(_)) => ej.start(),
                (Edge::Segment(_), Edge::Segment(_)) => ei.end().lerp(ej.start(), 0.5),
                (Edge::Arc(_), Edge::Arc(_)) => continue,
            };
            if let Edge::Segment(s) = &mut edges[i] {
                s.to = joint;
            }
            if let Edge::Segment(s) = &mut edges[j] {
                s.from = joint;
            }
        }
        ArcPolygon::new(edges)
    }

    /// Merge consecutive collinear segments and consecutive co-circular arcs.
    pub fn merged(&self, tol: f64) -> ArcPolygon {
        ArcPolygon::new(merge_chain(&self.edges, tol, true))
    }
}

fn overlapping_start(a: &Edge, b: &Edge, t: f64) -> bool {
    let l = a.length().min(b.length());
    let d = 0.5 * l;
    let back = a.point_at(1.0 - d / a.length());
    let fwd = b.point_at(d / b.length());
    back.dist(fwd) <= t.max(1e-9 * l)
}

/// Whether `b` continues `a` as part of the same line or circle in the same direction.
pub fn continues(a: &Edge, b: &Edge, tol: f64) -> bool {
    if a.end().dist(b.start()) > tol {
        return false;
    }
    match (a, b) {
        (Edge::Segment(s), Edge::Segment(t)) => {
            let u = s.dir();
            let v = t.dir();
            u.dot(v) > 0.0 && (t.to - s.from).cross(u).abs() <= tol
        }
        (Edge::Arc(p), Edge::Arc(q)) => {
            p.center.dist(q.center) <= tol
                && (p.radius - q.radius).abs() <= tol
                && p.sweep.signum() == q.sweep.signum()
                && (p.sweep + q.sweep).abs() <= TAU + 1e-12
        }
        _ => false,
    }
}

fn join(a: &Edge, b: &Edge) -> Edge {
    match (a, b) {
        (Edge::Segment(s), Edge::Segment(t)) => Edge::segment(s.from, t.to),
        (Edge::Arc(p), Edge::Arc(q)) => Edge::arc(p.center, p.radius, p.start, p.sweep + q.sweep),
        _ => unreachable!(),
    }
}

/// Merge continuing neighbours in a chain; `closed` also merges across the wrap.
pub fn merge_chain(edges: &[Edge], tol: f64, closed: bool) -> Vec<Edge> {
    let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
    for e in edges {
        match out.last() {
            Some(l) if continues(l, e, tol) => {
                let j = join(l, e);
                *out.last_mut().unwrap() = j;
            }
            _ => out.push(*e),
        }
    }
    if closed {
        while out.len() > 1 && continues(out.last().unwrap(), &out[0], tol) {
            let l = out.pop().unwrap();
            out[0] = join(&l, &out[0]);
        }
    }
    out
}

/// A Jordan domain bounded by a valid counterclockwise arc-polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    outer: ArcPolygon,
    tol: TolerancePolicy,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.outer.serialize(s)
    }
}

impl Region {
    pub fn new(outer: ArcPolygon, tol: TolerancePolicy) -> Result<Region> {
        tol.check()?;
        let rep = outer.validate(&tol);
        if !rep.valid {
            return Err(Error::InvalidRegion(rep.summary()));
        }
        Ok(Region { outer: outer.snapped(), tol })
    }

    pub fn with_default_tolerance(outer: ArcPolygon) -> Result<Region> {
        Region::new(outer, TolerancePolicy::default())
    }

    pub fn outer(&self) -> &ArcPolygon {
        &self.outer
    }

    pub fn edges(&self) -> &[Edge] {
        &self.outer.edges
    }

    pub fn tolerance(&self) -> &TolerancePolicy {
        &self.tol
    }

    pub fn with_tolerance(&self, tol: TolerancePolicy) -> Result<Region> {
        Region::new(self.outer.clone(), tol)
    }

    pub fn validate(&self) -> ValidationReport {
        self.outer.validate(&self.tol)
    }

    pub fn area(&self) -> f64 {
        self.outer.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        self.outer.perimeter()
    }

    pub fn bbox(&self) -> BBox {
        self.outer.bbox()
    }

    pub fn contains(&self, p: Point) -> Location {
        self.outer.locate(p, self.tol.tau_geom)
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let d = self.outer.distance(p);
        if d <= self.tol.tau_geom {
            return d;
        }
        if self.outer.winding(p) != 0 {
            d
        } else {
            -d
        }
    }

    /// Non-negative distance from `p` to the boundary.
    pub fn unsigned_distance(&self, p: Point) -> f64 {
        self.outer.distance(p)
    }

    pub fn is_convex(&self) -> bool {
        self.outer.is_convex()
    }

    pub fn transformed(&self, s: f64, theta: f64, t: Point) -> Result<Region> {
        Region::new(self.outer.transformed(s, theta, t), self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ArcPolygon {
        ArcPolygon::from_vertices(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
    }

    #[test]
    fn square_is_valid() {
        assert!(square().validate(&TolerancePolicy::default()).valid);
    }

    #[test]
    fn open_chain_is_rejected() {
        let mut p = square();
        p.edges[3] = Edge::segment(Point::new(0.0, 1.0), Point::new(0.0, 0.5));
        let r = p.validate(&TolerancePolicy::default());
        assert!(!r.valid);
        assert!(matches!(r.issues[0], ValidationIssue::Gap { .. }));
    }

    #[test]
    fn figure_eight_is_rejected() {
        let p = ArcPolygon::from_vertices(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ]);
        let r = p.validate(&TolerancePolicy::default());
        assert!(r.issues.iter().any(|i| matches!(i, ValidationIssue::SelfIntersection { .. })));
    }

    #[test]
    fn clockwise_is_rejected() {
        let r = square().reversed().validate(&TolerancePolicy::default());
        assert!(matches!(r.issues[0], ValidationIssue::Orientation { .. }));
    }

    #[test]
    fn winding_inside_circle_segment() {
        // half disk: arc from 0 to π then the diameter back
        let p = ArcPolygon::new(vec![
            Edge::arc(Point::ORIGIN, 1.0, 0.0, PI),
            Edge::segment(Point::new(-1.0, 0.0), Point::new(1.0, 0.0)),
        ]);
        assert_eq!(p.winding(Point::new(0.0, 0.5)), 1);
        assert_eq!(p.winding(Point::new(0.0, -0.5)), 0);
        assert_eq!(p.winding(Point::new(0.9, 0.9)), 0);
        assert!((p.signed_area() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn full_circle_area_and_location() {
        let r = Region::with_default_tolerance(ArcPolygon::circle(Point::new(1.0, 2.0), 1.0)).unwrap();
        assert!((r.area() - PI).abs() < 1e-14);
        assert_eq!(r.contains(Point::new(1.0, 2.0)), Location::Inside);
        assert_eq!(r.contains(Point::new(2.0, 2.0)), Location::Boundary);
        assert!((r.boundary_distance(Point::new(3.0, 2.0)) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn merge_cocircular_quarters() {
        let q: Vec<Edge> = (0..4).map(|k| Edge::arc(Point::ORIGIN, 1.0, k as f64 * PI / 2.0, PI / 2.0)).collect();
        let m = merge_chain(&q, 1e-9, true);
        assert_eq!(m.len(), 1);
        assert!(m[0].as_arc().unwrap().is_full());
    }
}
