//! Tolerant intersection of segments and circular arcs.

use super::edge::{Arc, Edge, Segment};
use super::point::Point;

/// All points shared by `a` and `b`.
///
/// Crossings and tangencies are reported as single points; overlapping collinear or
/// co-circular pieces are reported through the endpoints of the overlap. Every returned
/// point lies within `tol` of both edges.
pub fn intersect(a: &Edge, b: &Edge, tol: f64) -> Vec<Point> {
    let mut out = Vec::new();
    if !a.bbox().expanded(tol).overlaps(&b.bbox().expanded(tol)) {
        return out;
    }
    for p in [a.start(), a.end()] {
        if b.distance(p) <= tol {
            push_unique(&mut out, p, tol);
        }
    }
    for p in [b.start(), b.end()] {
        if a.distance(p) <= tol {
            push_unique(&mut out, p, tol);
        }
    }
    let raw = match (a, b) {
        (Edge::Segment(s), Edge::Segment(t)) => seg_seg(s, t, tol),
        (Edge::Segment(s), Edge::Arc(c)) | (Edge::Arc(c), Edge::Segment(s)) => seg_arc(s, c, tol),
        (Edge::Arc(c), Edge::Arc(d)) => arc_arc(c, d, tol),
    };
    for p in raw {
        if a.distance(p) <= tol && b.distance(p) <= tol {
            push_unique(&mut out, p, tol);
        }
    }
    out
}

fn push_unique(v: &mut Vec<Point>, p: Point, tol: f64) {
    if v.iter().all(|q| q.dist(p) > tol) {
        v.push(p);
    }
}

fn line_dist(p: Point, a: Point, dir: Point) -> f64 {
    (p - a).cross(dir).abs()
}

fn seg_seg(s: &Segment, t: &Segment, tol: f64) -> Vec<Point> {
    let d1 = s.to - s.from;
    let d2 = t.to - t.from;
    let u1 = d1.normalized();
    if line_dist(t.from, s.from, u1) <= tol && line_dist(t.to, s.from, u1) <= tol {
        // collinear: endpoints already cover the overlap
        return Vec::new();
    }
    let den = d1.cross(d2);
    if den == 0.0 {
        return Vec::new();
    }
    let w = t.from - s.from;
    let ta = w.cross(d2) / den;
    vec![s.from + d1 * ta]
}

/// Intersections of the infinite line through `s` with the circle of `c`.
fn seg_arc(s: &Segment, c: &Arc, tol: f64) -> Vec<Point> {
    let u = s.dir();
    let f = s.from + u * (c.center - s.from).dot(u);
    let dist = f.dist(c.center);
    if (dist - c.radius).abs() <= tol {
        return vec![c.center + (f - c.center).normalized() * c.radius];
    }
    if dist > c.radius {
        return Vec::new();
    }
    let h = (c.radius * c.radius - dist * dist).sqrt();
    vec![f + u * h, f - u * h]
}

fn arc_arc(a: &Arc, b: &Arc, tol: f64) -> Vec<Point> {
    let v = b.center - a.center;
    let d = v.norm();
    if d <= tol {
        return Vec::new();
    }
    let u = v / d;
    let (r1, r2) = (a.radius, b.radius);
    if (d - (r1 + r2)).abs() <= tol {
        return vec![a.center + u * r1];
    }
    if (d - (r1 - r2).abs()).abs() <= tol {
        return if r1 >= r2 { vec![a.center + u * r1] } else { vec![a.center - u * r1] };
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - x * x).max(0.0).sqrt();
    let m = a.center + u * x;
    vec![m + u.perp() * h, m - u.perp() * h]
}
