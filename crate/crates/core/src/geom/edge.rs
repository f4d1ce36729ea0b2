use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::point::{BBox, Point};

/// Straight boundary element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

/// Circular arc stored as center, radius, start angle and signed sweep.
///
/// A positive sweep runs counterclockwise. `|sweep|` lies in `(0, 2π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub center: Point,
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

/// One boundary element: a segment or a circular arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Edge {
    Segment(Segment),
    Arc(Arc),
}

/// Result of offsetting an edge sideways.
#[derive(Clone, Copy, Debug)]
pub enum Offset {
    Edge(Edge),
    /// An arc collapsed onto its center.
    Point(Point),
    None,
}

/// Signed sweep from `from` to `to` in the requested direction, in `(0, 2π]` magnitude.
pub fn sweep_between(from: f64, to: f64, ccw: bool) -> f64 {
    let d = to - from;
    let s = if ccw { d.rem_euclid(TAU) } else { (-d).rem_euclid(TAU) };
    let s = if s < 1e-14 && d.abs() > 1e-12 { TAU } else { s };
    if ccw {
        s
    } else {
        -s
    }
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

impl Segment {
    pub fn new(from: Point, to: Point) -> Self {
        Segment { from, to }
    }

    pub fn dir(&self) -> Point {
        (self.to - self.from).normalized()
    }
}

impl Arc {
    pub fn new(center: Point, radius: f64, start: f64, sweep: f64) -> Self {
        Arc { center, radius, start, sweep }
    }

    /// Arc from `from_angle` to `to_angle` in the given direction.
    pub fn between(center: Point, radius: f64, from_angle: f64, to_angle: f64, ccw: bool) -> Self {
        Arc::new(center, radius, from_angle, sweep_between(from_angle, to_angle, ccw))
    }

    pub fn full_circle(center: Point, radius: f64, start: f64, ccw: bool) -> Self {
        Arc::new(center, radius, start, if ccw { TAU } else { -TAU })
    }

    #[inline]
    pub fn end_angle(&self) -> f64 {
        self.start + self.sweep
    }

    #[inline]
    pub fn ccw(&self) -> bool {
        self.sweep > 0.0
    }

    #[inline]
    pub fn point_at_angle(&self, theta: f64) -> Point {
        self.center + Point::polar(theta) * self.radius
    }

    pub fn is_full(&self) -> bool {
        (self.sweep.abs() - TAU).abs() < 1e-12
    }

    /// Fraction along the arc of the direction `theta`, when it lies within the swept
    /// range up to `tol_angle`.
    pub fn param_of_angle(&self, theta: f64, tol_angle: f64) -> Option<f64> {
        let w = self.sweep.abs();
        let d = ((theta - self.start) * self.sweep.signum()).rem_euclid(TAU);
        if d <= w + tol_angle {
            Some((d / w).min(1.0))
        } else if TAU - d <= tol_angle {
            Some(0.0)
        } else {
            None
        }
    }

    /// Angular distance from `theta` to the swept range (zero inside).
    pub fn angle_gap(&self, theta: f64) -> f64 {
        let w = self.sweep.abs();
        let d = ((theta - self.start) * self.sweep.signum()).rem_euclid(TAU);
        if d <= w {
            0.0
        } else {
            (d - w).min(TAU - d)
        }
    }

    pub fn mid_angle(&self) -> f64 {
        self.start + 0.5 * self.sweep
    }
}

impl Edge {
    pub fn segment(from: Point, to: Point) -> Edge {
        Edge::Segment(Segment::new(from, to))
    }

    pub fn arc(center: Point, radius: f64, start: f64, sweep: f64) -> Edge {
        Edge::Arc(Arc::new(center, radius, start, sweep))
    }

    pub fn arc_between(center: Point, radius: f64, from_angle: f64, to_angle: f64, ccw: bool) -> Edge {
        Edge::Arc(Arc::between(center, radius, from_angle, to_angle, ccw))
    }

    pub fn start(&self) -> Point {
        match self {
            Edge::Segment(s) => s.from,
            Edge::Arc(a) => a.point_at_angle(a.start),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Edge::Segment(s) => s.to,
            Edge::Arc(a) => a.point_at_angle(a.end_angle()),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Edge::Segment(s) => s.from.dist(s.to),
            Edge::Arc(a) => a.radius * a.sweep.abs(),
        }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, Edge::Arc(_))
    }

    pub fn as_arc(&self) -> Option<&Arc> {
        match self {
            Edge::Arc(a) => Some(a),
            _ => None,
        }
    }

    /// Point at fraction `t ∈ [0, 1]` of the edge.
    pub fn point_at(&self, t: f64) -> Point {
        match self {
            Edge::Segment(s) => s.from.lerp(s.to, t),
            Edge::Arc(a) => a.point_at_angle(a.start + t * a.sweep),
        }
    }

    pub fn midpoint(&self) -> Point {
        self.point_at(0.5)
    }

    /// Unit direction of travel at fraction `t`.
    pub fn tangent_at(&self, t: f64) -> Point {
        match self {
            Edge::Segment(s) => s.dir(),
            Edge::Arc(a) => {
                let u = Point::polar(a.start + t * a.sweep).perp();
                if a.ccw() {
                    u
                } else {
                    -u
                }
            }
        }
    }

    pub fn start_tangent(&self) -> Point {
        self.tangent_at(0.0)
    }

    pub fn end_tangent(&self) -> Point {
        self.tangent_at(1.0)
    }

    /// Signed curvature with respect to the direction of travel (positive when turning left).
    pub fn curvature(&self) -> f64 {
        match self {
            Edge::Segment(_) => 0.0,
            Edge::Arc(a) => a.sweep.signum() / a.radius,
        }
    }

    pub fn reversed(&self) -> Edge {
        match self {
            Edge::Segment(s) => Edge::segment(s.to, s.from),
            Edge::Arc(a) => Edge::arc(a.center, a.radius, a.end_angle(), -a.sweep),
        }
    }

    /// Sub-edge between fractions `t0` and `t1`.
    pub fn sub(&self, t0: f64, t1: f64) -> Edge {
        match self {
            Edge::Segment(s) => Edge::segment(s.from.lerp(s.to, t0), s.from.lerp(s.to, t1)),
            Edge::Arc(a) => Edge::arc(a.center, a.radius, a.start + t0 * a.sweep, (t1 - t0) * a.sweep),
        }
    }

    /// Nearest point on the edge, its fraction and the distance.
    pub fn closest(&self, p: Point) -> (Point, f64, f64) {
        match self {
            Edge::Segment(s) => {
                let d = s.to - s.from;
                let l2 = d.norm_sq();
                let t = if l2 > 0.0 { ((p - s.from).dot(d) / l2).clamp(0.0, 1.0) } else { 0.0 };
                let q = s.from.lerp(s.to, t);
                (q, t, q.dist(p))
            }
            Edge::Arc(a) => {
                let v = p - a.center;
                if v.norm_sq() > 0.0 {
                    if let Some(t) = a.param_of_angle(v.angle(), 0.0) {
                        let q = a.center + v.normalized() * a.radius;
                        return (q, t, q.dist(p));
                    }
                }
                let s = self.start();
                let e = self.end();
                let (ds, de) = (s.dist(p), e.dist(p));
                if ds <= de {
                    (s, 0.0, ds)
                } else {
                    (e, 1.0, de)
                }
            }
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.closest(p).2
    }

    /// Fraction of the point on the edge nearest to `p`.
    pub fn param_of(&self, p: Point) -> f64 {
        self.closest(p).1
    }

    /// Contribution `½∮(x dy − y dx)` of this edge to an enclosed area.
    pub fn green(&self) -> f64 {
        match self {
            Edge::Segment(s) => 0.5 * s.from.cross(s.to),
            Edge::Arc(a) => {
                let (t0, t1) = (a.start, a.end_angle());
                let r = a.radius;
                let c = a.center;
                0.5 * (r * r * a.sweep + r * (c.x * (t1.sin() - t0.sin()) - c.y * (t1.cos() - t0.cos())))
            }
        }
    }

    pub fn bbox(&self) -> BBox {
        let mut b = BBox::of_point(self.start());
        b.include(self.end());
        if let Edge::Arc(a) = self {
            for k in 0..4 {
                let th = k as f64 * FRAC_PI_2;
                if a.param_of_angle(th, 0.0).is_some() {
                    b.include(a.point_at_angle(th));
                }
            }
        }
        b
    }

    /// Offset by `d` towards the left of the direction of travel.
    pub fn offset(&self, d: f64, tol: f64) -> Offset {
        match self {
            Edge::Segment(s) => {
                let n = s.dir().perp() * d;
                Offset::Edge(Edge::segment(s.from + n, s.to + n))
            }
            Edge::Arc(a) => {
                let r = a.radius - d * a.sweep.signum();
                if r > tol {
                    Offset::Edge(Edge::arc(a.center, r, a.start, a.sweep))
                } else if r >= -tol {
                    Offset::Point(a.center)
                } else {
                    Offset::None
                }
            }
        }
    }

    /// Image under `p ↦ s·R(θ)p + t`.
    pub fn transformed(&self, s: f64, theta: f64, t: Point) -> Edge {
        let f = |p: Point| p.rotated(theta) * s + t;
        match self {
            Edge::Segment(g) => Edge::segment(f(g.from), f(g.to)),
            Edge::Arc(a) => Edge::arc(f(a.center), a.radius * s, a.start + theta, a.sweep),
        }
    }

    /// Points along the edge with at most `max_angle` turning between consecutive samples.
    pub fn sample(&self, max_angle: f64, out: &mut Vec<Point>) {
        match self {
            Edge::Segment(s) => out.push(s.from),
            Edge::Arc(a) => {
                let n = ((a.sweep.abs() / max_angle).ceil() as usize).max(1);
                for i in 0..n {
                    out.push(self.point_at(i as f64 / n as f64));
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Edge::Segment(s) => s.from.is_finite() && s.to.is_finite(),
            Edge::Arc(a) => a.center.is_finite() && a.radius.is_finite() && a.start.is_finite() && a.sweep.is_finite(),
        }
    }
}
