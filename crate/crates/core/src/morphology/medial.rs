//! Exact medial axis of a region (or of the complement of a compact set).
//!
//! Every boundary element is a *site*: a line (segment), a circle (arc) or a point
//! (reflex vertex). The set of points at distance `t` from a site is its offset curve:
//! `n·p = c + t` for a line and `|p − o| = α + βt` for a circle, with `β = −1` on the
//! concave side of an arc and `β = +1` on the convex side or for a point. Medial points
//! of radius `t` are intersections of two offsets at the same `t` that are closer to no
//! other site. Along a pair of sites the intersection moves continuously with `t`; its
//! validity only changes at tangencies, at triple equidistance events and where a foot
//! crosses a site endpoint, all of which are solved in closed form.

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::Serialize;

use super::regionset::RegionSet;
use crate::geom::{intersect, turn_angle, Arc, Edge, Location, Point, Region};

#[derive(Clone, Copy, Debug)]
pub(crate) enum SiteGeom {
    Line { a: Point, b: Point, n: Point, c: f64 },
    Circle { o: Point, alpha: f64, beta: f64, arc: Option<Arc> },
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Site {
    pub geom: SiteGeom,
}

/// Description of a site in the public medial-axis output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SiteRef {
    Segment { from: Point, to: Point },
    Arc { center: Point, radius: f64 },
    Vertex { at: Point },
}

impl Site {
    /// Site for `e` seen from its left side.
    pub fn from_edge(e: &Edge) -> Site {
        match e {
            Edge::Segment(s) => {
                let n = s.dir().perp();
                Site { geom: SiteGeom::Line { a: s.from, b: s.to, n, c: n.dot(s.from) } }
            }
            Edge::Arc(a) => {
                Site { geom: SiteGeom::Circle { o: a.center, alpha: a.radius, beta: -a.sweep.signum(), arc: Some(*a) } }
            }
        }
    }

    pub fn point(p: Point) -> Site {
        Site { geom: SiteGeom::Circle { o: p, alpha: 0.0, beta: 1.0, arc: None } }
    }

    pub fn describe(&self) -> SiteRef {
        match self.geom {
            SiteGeom::Line { a, b, .. } => SiteRef::Segment { from: a, to: b },
            SiteGeom::Circle { o, alpha, arc: Some(_), .. } => SiteRef::Arc { center: o, radius: alpha },
            SiteGeom::Circle { o, .. } => SiteRef::Vertex { at: o },
        }
    }

    /// Distance from `p` to the site as a closed set.
    pub fn distance(&self, p: Point) -> f64 {
        match self.geom {
            SiteGeom::Line { a, b, .. } => Edge::segment(a, b).distance(p),
            SiteGeom::Circle { arc: Some(a), .. } => Edge::Arc(a).distance(p),
            SiteGeom::Circle { o, .. } => o.dist(p),
        }
    }

    /// Nearest point of the site when it lies in the interior of the site's normal field.
    pub fn foot(&self, p: Point, tol: f64) -> Option<Point> {
        match self.geom {
            SiteGeom::Line { a, b, .. } => {
                let d = b - a;
                let l = d.norm();
                let s = (p - a).dot(d) / l;
                if s < -tol || s > l + tol {
                    None
                } else {
                    Some(a + d * (s.clamp(0.0, l) / l))
                }
            }
            SiteGeom::Circle { o, alpha, arc: Some(a), .. } => {
                let v = p - o;
                if v.norm() <= tol {
                    return None;
                }
                a.param_of_angle(v.angle(), tol / alpha).map(|_| o + v.normalized() * alpha)
            }
            SiteGeom::Circle { o, .. } => Some(o),
        }
    }

    /// Rays `E + t·m` traced by points whose foot is a site endpoint `E`.
    fn endpoint_rays(&self) -> Vec<(Point, Point)> {
        match self.geom {
            SiteGeom::Line { a, b, n, .. } => vec![(a, n), (b, n)],
            SiteGeom::Circle { o, alpha, beta, arc: Some(a) } if !a.is_full() => [a.start, a.end_angle()]
                .iter()
                .map(|&th| {
                    let u = Point::polar(th);
                    (o + u * alpha, u * beta)
                })
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Constant-radius branch: two sites whose offsets coincide at one level.
#[derive(Clone, Debug)]
pub(crate) struct ConstBranch {
    pub i: usize,
    pub j: usize,
    pub t: f64,
    pub pieces: Vec<Edge>,
}

/// Contiguous range of levels over which a pair intersection stays medial.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Run {
    pub i: usize,
    pub j: usize,
    pub root: usize,
    pub t0: f64,
    pub t1: f64,
}

/// A medial point found at a fixed level, with the sites realizing the distance.
#[derive(Clone, Debug)]
pub(crate) struct LevelPoint {
    pub p: Point,
    /// Set when the point lies on a constant-radius branch.
    pub on_constant: bool,
}

type Pred<'a> = Box<dyn Fn(Point) -> bool + 'a>;
type DistFn<'a> = Box<dyn Fn(Point) -> f64 + 'a>;

/// Medial structure of an open domain bounded by sites.
pub(crate) struct Engine<'a> {
    pub sites: Vec<Site>,
    inside: Pred<'a>,
    dist: DistFn<'a>,
    pub t_max: f64,
    /// Absolute geometric tolerance.
    pub tol: f64,
    /// Extent used to clip unbounded offsets.
    span: f64,
    center: Point,
}

fn push_turn_sites(edges: &[Edge], closed: bool, sites: &mut Vec<Site>, any_side: bool) {
    let n = edges.len();
    let m = if closed { n } else { n.saturating_sub(1) };
    for i in 0..m {
        let (a, b) = (&edges[i], &edges[(i + 1) % n]);
        let turn = turn_angle(a, b);
        if turn < -1e-12 || (any_side && turn > 1e-12) {
            sites.push(Site::point(a.end()));
        }
    }
}

impl<'a> Engine<'a> {
    /// Interior medial structure of a region.
    pub fn interior(region: &'a Region) -> Engine<'a> {
        let poly = region.outer().merged(region.tolerance().tau_geom);
        let mut sites: Vec<Site> = poly.edges.iter().map(Site::from_edge).collect();
        push_turn_sites(&poly.edges, true, &mut sites, false);
        let bb = region.bbox();
        let scale = bb.diagonal().max(1.0);
        let t_max = 0.5 * bb.width().min(bb.height());
        Engine {
            sites,
            inside: Box::new(move |p| region.contains(p) == Location::Inside),
            dist: Box::new(move |p| region.unsigned_distance(p)),
            t_max,
            tol: region.tolerance().tau_geom * scale * 10.0,
            span: bb.diagonal() + 1.0,
            center: bb.center(),
        }
    }

    /// Medial structure of the complement of a compact set, up to level `t_max`.
    pub fn exterior(set: &'a RegionSet, t_max: f64, tau_geom: f64) -> Engine<'a> {
        let mut sites = Vec::new();
        for l in set.loops() {
            let rev: Vec<Edge> = l.edges.iter().rev().map(Edge::reversed).collect();
            let rev = crate::geom::merge_chain(&rev, tau_geom, true);
            sites.extend(rev.iter().map(Site::from_edge));
            push_turn_sites(&rev, true, &mut sites, false);
        }
        for c in &set.curves {
            let closed = c.is_closed(tau_geom);
            for e in &c.edges {
                sites.push(Site::from_edge(e));
                sites.push(Site::from_edge(&e.reversed()));
            }
            push_turn_sites(&c.edges, closed, &mut sites, true);
            if !closed {
                sites.push(Site::point(c.start()));
                sites.push(Site::point(c.end()));
            }
        }
        sites.extend(set.points.iter().map(|&p| Site::point(p)));
        let bb = set.bbox().expanded(t_max);
        let scale = bb.diagonal().max(1.0);
        Engine {
            sites,
            inside: Box::new(move |p| set.distance(p) > tau_geom),
            dist: Box::new(move |p| set.distance(p)),
            t_max,
            tol: tau_geom * scale * 10.0,
            span: bb.diagonal() + 1.0,
            center: bb.center(),
        }
    }

    fn n(&self) -> usize {
        self.sites.len()
    }

    /// Intersections of the two offsets at level `t`, labelled by root.
    pub fn pair_points(&self, i: usize, j: usize, t: f64) -> [Option<Point>; 2] {
        let tol = self.tol;
        match (self.sites[i].geom, self.sites[j].geom) {
            (SiteGeom::Line { n: n1, c: c1, .. }, SiteGeom::Line { n: n2, c: c2, .. }) => {
                let det = n1.cross(n2);
                if det.abs() < 1e-12 {
                    return [None, None];
                }
                let (k1, k2) = (c1 + t, c2 + t);
                let x = (k1 * n2.y - k2 * n1.y) / det;
                let y = (n1.x * k2 - n2.x * k1) / det;
                [Some(Point::new(x, y)), None]
            }
            (SiteGeom::Line { n, c, .. }, SiteGeom::Circle { o, alpha, beta, .. })
            | (SiteGeom::Circle { o, alpha, beta, .. }, SiteGeom::Line { n, c, .. }) => {
                let r = alpha + beta * t;
                if r < -tol {
                    return [None, None];
                }
                let k = c + t;
                let s = k - n.dot(o);
                let f = o + n * s;
                let r = r.max(0.0);
                if (s.abs() - r).abs() <= tol {
                    return [Some(f), Some(f)];
                }
                if s.abs() > r {
                    return [None, None];
                }
                let h = (r * r - s * s).sqrt();
                let d = n.perp();
                let (p0, p1) = (f - d * h, f + d * h);
                if matches!(self.sites[i].geom, SiteGeom::Line { .. }) {
                    [Some(p0), Some(p1)]
                } else {
                    [Some(p1), Some(p0)]
                }
            }
            (
                SiteGeom::Circle { o: o1, alpha: a1, beta: b1, .. },
                SiteGeom::Circle { o: o2, alpha: a2, beta: b2, .. },
            ) => {
                let (r1, r2) = (a1 + b1 * t, a2 + b2 * t);
                if r1 < -tol || r2 < -tol {
                    return [None, None];
                }
                let (r1, r2) = (r1.max(0.0), r2.max(0.0));
                let v = o2 - o1;
                let d = v.norm();
                if d <= tol {
                    return [None, None];
                }
                let u = v / d;
                if (d - (r1 + r2)).abs() <= tol {
                    let p = o1 + u * r1;
                    return [Some(p), Some(p)];
                }
                if (d - (r1 - r2).abs()).abs() <= tol {
                    let p = if r1 >= r2 { o1 + u * r1 } else { o1 - u * r1 };
                    return [Some(p), Some(p)];
                }
                if d > r1 + r2 || d < (r1 - r2).abs() {
                    return [None, None];
                }
                let x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
                let h = (r1 * r1 - x * x).max(0.0).sqrt();
                let m = o1 + u * x;
                [Some(m - u.perp() * h), Some(m + u.perp() * h)]
            }
        }
    }

    /// Whether `p` at level `t` is a medial point realized by sites `i` and `j`.
    pub fn valid(&self, i: usize, j: usize, p: Point, t: f64) -> bool {
        let tol = self.tol;
        if !(self.inside)(p) {
            return false;
        }
        let (Some(f1), Some(f2)) = (self.sites[i].foot(p, tol), self.sites[j].foot(p, tol)) else {
            return false;
        };
        if f1.dist(f2) <= tol {
            return false;
        }
        if (f1.dist(p) - t).abs() > 10.0 * tol || (f2.dist(p) - t).abs() > 10.0 * tol {
            return false;
        }
        (self.dist)(p) >= t - tol
    }

    /// Levels (in `(0, t_max]`) where pair validity may change.
    fn pair_events(&self, i: usize, j: usize, out: &mut Vec<f64>) {
        let (si, sj) = (self.sites[i], self.sites[j]);
        let mut push = |t: f64| {
            if t.is_finite() && t > 0.0 && t <= self.t_max {
                out.push(t);
            }
        };
        for (a, b) in [(si, sj), (sj, si)] {
            if let SiteGeom::Circle { alpha, beta, .. } = a.geom {
                push(-alpha / beta);
            }
            for (e, m) in a.endpoint_rays() {
                match b.geom {
                    SiteGeom::Line { n, c, .. } => {
                        let den = n.dot(m) - 1.0;
                        if den.abs() > 1e-14 {
                            push((c - n.dot(e)) / den);
                        }
                    }
                    SiteGeom::Circle { o, alpha, beta, .. } => {
                        let w = e - o;
                        let den = 2.0 * (m.dot(w) - alpha * beta);
                        if den.abs() > 1e-14 {
                            push((alpha * alpha - w.norm_sq()) / den);
                        }
                    }
                }
            }
        }
        match (si.geom, sj.geom) {
            (SiteGeom::Line { .. }, SiteGeom::Line { .. }) => {}
            (SiteGeom::Line { n, c, .. }, SiteGeom::Circle { o, alpha, beta, .. })
            | (SiteGeom::Circle { o, alpha, beta, .. }, SiteGeom::Line { n, c, .. }) => {
                let q = n.dot(o) - c;
                if (1.0 + beta).abs() > 1e-14 {
                    push((q - alpha) / (1.0 + beta));
                }
                if (1.0 - beta).abs() > 1e-14 {
                    push((q + alpha) / (1.0 - beta));
                }
            }
            (
                SiteGeom::Circle { o: o1, alpha: a1, beta: b1, .. },
                SiteGeom::Circle { o: o2, alpha: a2, beta: b2, .. },
            ) => {
                let d = o1.dist(o2);
                for (sa, sb) in [(1.0, 1.0), (1.0, -1.0)] {
                    // r1 + sb·r2 = sa·d and its sign flips
                    for s in [1.0, -1.0] {
                        let den = b1 + sb * b2;
                        if den.abs() > 1e-14 {
                            push((s * sa * d - a1 - sb * a2) / den);
                        }
                    }
                }
            }
        }
    }

    /// Points equidistant (at a common level) from three sites.
    fn triple(&self, ids: [usize; 3]) -> Vec<(Point, f64)> {
        let mut rows: Vec<([f64; 3], f64)> = Vec::new();
        let mut circles: Vec<(Point, f64, f64)> = Vec::new();
        for &k in &ids {
            match self.sites[k].geom {
                SiteGeom::Line { n, c, .. } => rows.push(([n.x, n.y, -1.0], c)),
                SiteGeom::Circle { o, alpha, beta, .. } => circles.push((o, alpha, beta)),
            }
        }
        if let Some(&(o0, a0, b0)) = circles.first() {
            for &(o, a, b) in &circles[1..] {
                let d = o0 - o;
                rows.push((
                    [-2.0 * d.x, -2.0 * d.y, -2.0 * (a0 * b0 - a * b)],
                    -(o0.norm_sq() - a0 * a0 - o.norm_sq() + a * a),
                ));
            }
        }
        let mut out = Vec::new();
        if circles.is_empty() {
            if let Some(z) = solve3(&rows) {
                out.push((Point::new(z[0], z[1]), z[2]));
            }
            return out;
        }
        let (r1, b1) = rows[0];
        let (r2, b2) = rows[1];
        let v = cross3(r1, r2);
        let vn = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let rn = norm3(r1) * norm3(r2);
        if vn <= 1e-12 * rn {
            return out;
        }
        // particular solution z0 = Aᵀ (A Aᵀ)⁻¹ b
        let g11 = dot3(r1, r1);
        let g12 = dot3(r1, r2);
        let g22 = dot3(r2, r2);
        let det = g11 * g22 - g12 * g12;
        let l1 = (b1 * g22 - b2 * g12) / det;
        let l2 = (g11 * b2 - g12 * b1) / det;
        let z0 = [r1[0] * l1 + r2[0] * l2, r1[1] * l1 + r2[1] * l2, r1[2] * l1 + r2[2] * l2];
        let (o, a, b) = circles[0];
        let (px, py) = (z0[0] - o.x, z0[1] - o.y);
        let q = a + b * z0[2];
        let w = b * v[2];
        let qa = v[0] * v[0] + v[1] * v[1] - w * w;
        let qb = 2.0 * (px * v[0] + py * v[1] - q * w);
        let qc = px * px + py * py - q * q;
        for s in quadratic_roots(qa, qb, qc) {
            let z = [z0[0] + s * v[0], z0[1] + s * v[1], z0[2] + s * v[2]];
            if circles.iter().all(|&(_, a, b)| a + b * z[2] >= -self.tol) {
                out.push((Point::new(z[0], z[1]), z[2]));
            }
        }
        out
    }

    fn all_events(&self) -> HashMap<(usize, usize), Vec<f64>> {
        let n = self.n();
        let mut ev: HashMap<(usize, usize), Vec<f64>> = HashMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let e = ev.entry((i, j)).or_default();
                self.pair_events(i, j, e);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for (_, t) in self.triple([i, j, k]) {
                        if t > 0.0 && t <= self.t_max {
                            for key in [(i, j), (i, k), (j, k)] {
                                ev.get_mut(&key).unwrap().push(t);
                            }
                        }
                    }
                }
            }
        }
        ev
    }

    /// Level at which the offsets of `i` and `j` coincide, if they do.
    pub fn coincidence(&self, i: usize, j: usize) -> Option<f64> {
        let t = match (self.sites[i].geom, self.sites[j].geom) {
            (SiteGeom::Line { n: n1, c: c1, .. }, SiteGeom::Line { n: n2, c: c2, .. }) => {
                if n1.cross(n2).abs() < 1e-12 && n1.dot(n2) < 0.0 {
                    -(c1 + c2) / 2.0
                } else {
                    return None;
                }
            }
            (
                SiteGeom::Circle { o: o1, alpha: a1, beta: b1, .. },
                SiteGeom::Circle { o: o2, alpha: a2, beta: b2, .. },
            ) if o1.dist(o2) <= self.tol && b1 != b2 => (a2 - a1) / (b1 - b2),
            _ => return None,
        };
        (t > 0.0 && t <= self.t_max).then_some(t)
    }

    /// Pair runs over all site pairs.
    pub fn runs(&self) -> Vec<Run> {
        let ev = self.all_events();
        let n = self.n();
        let mut out = Vec::new();
        let eps = 1e-12 * self.span;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.coincidence(i, j).is_some() {
                    continue;
                }
                let mut ts = ev[&(i, j)].clone();
                ts.push(0.0);
                ts.push(self.t_max);
                ts.sort_by(f64::total_cmp);
                ts.dedup_by(|a, b| (*a - *b).abs() <= eps);
                let mut open: [Option<(f64, f64)>; 2] = [None, None];
                for w in ts.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let tm = 0.5 * (a + b);
                    let pts = self.pair_points(i, j, tm);
                    for r in 0..2 {
                        let ok = pts[r].is_some_and(|p| self.valid(i, j, p, tm))
                            && !(r == 1 && pts[0].zip(pts[1]).is_some_and(|(p, q)| p.dist(q) <= self.tol));
                        match (&mut open[r], ok) {
                            (Some(run), true) if (run.1 - a).abs() <= eps => run.1 = b,
                            (slot, true) => {
                                if let Some((t0, t1)) = slot.take() {
                                    out.push(Run { i, j, root: r, t0, t1 });
                                }
                                *slot = Some((a, b));
                            }
                            (slot, false) => {
                                if let Some((t0, t1)) = slot.take() {
                                    out.push(Run { i, j, root: r, t0, t1 });
                                }
                            }
                        }
                    }
                }
                for (r, slot) in open.iter().enumerate() {
                    if let Some((t0, t1)) = *slot {
                        out.push(Run { i, j, root: r, t0, t1 });
                    }
                }
            }
        }
        out
    }

    /// The offset of site `k` at level `t` as an edge, clipped to the working extent.
    fn offset_edge(&self, k: usize, t: f64) -> Option<Edge> {
        match self.sites[k].geom {
            SiteGeom::Line { n, c, .. } => {
                let base = self.center + n * (c + t - n.dot(self.center));
                let d = n.perp() * self.span;
                Some(Edge::segment(base - d, base + d))
            }
            SiteGeom::Circle { o, alpha, beta, .. } => {
                let r = alpha + beta * t;
                (r > self.tol).then(|| Edge::Arc(Arc::full_circle(o, r, 0.0, true)))
            }
        }
    }

    /// Valid portions of the coincident offset of sites `i` and `j` at level `t`.
    fn constant_pieces(&self, i: usize, j: usize, t: f64) -> Vec<Edge> {
        let cand = match (self.sites[i].geom, self.sites[j].geom) {
            (SiteGeom::Line { a, b, n, c }, SiteGeom::Line { a: a2, b: b2, .. }) => {
                let d = n.perp();
                let base = n * (c + t);
                let s: Vec<f64> = [a, b, a2, b2].iter().map(|p| p.dot(d)).collect();
                let lo = s[0].min(s[1]).max(s[2].min(s[3]));
                let hi = s[0].max(s[1]).min(s[2].max(s[3]));
                if hi - lo <= self.tol {
                    return Vec::new();
                }
                Edge::segment(base + d * lo, base + d * hi)
            }
            (SiteGeom::Circle { o, alpha, beta, .. }, _) => {
                let r = alpha + beta * t;
                if r <= self.tol {
                    return Vec::new();
                }
                Edge::Arc(Arc::full_circle(o, r, 0.0, true))
            }
            _ => return Vec::new(),
        };
        let mut params = Vec::new();
        for k in 0..self.n() {
            if k == i || k == j {
                continue;
            }
            if let Some(off) = self.offset_edge(k, t) {
                for p in intersect(&cand, &off, self.tol) {
                    params.push(cand.param_of(p));
                }
            }
        }
        for s in &self.sites {
            for (e, m) in s.endpoint_rays() {
                let p = e + m * t;
                if cand.distance(p) <= self.tol {
                    params.push(cand.param_of(p));
                }
            }
        }
        let mut pieces = Vec::new();
        super::levelset::split_edge(&cand, &mut params, 10.0 * self.tol, &mut pieces);
        let kept: Vec<Edge> = pieces.into_iter().filter(|e| self.valid(i, j, e.midpoint(), t)).collect();
        crate::geom::merge_chain(&kept, 10.0 * self.tol, false)
    }

    pub fn constant_branches(&self) -> Vec<ConstBranch> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(t) = self.coincidence(i, j) {
                    let pieces = self.constant_pieces(i, j, t);
                    if !pieces.is_empty() {
                        out.push(ConstBranch { i, j, t, pieces });
                    }
                }
            }
        }
        out
    }

    /// Centers of concave-side arcs that are medial points (radius = arc radius).
    pub fn centers(&self) -> Vec<(usize, Point, f64)> {
        self.sites
            .iter()
            .enumerate()
            .filter_map(|(k, s)| match s.geom {
                SiteGeom::Circle { o, alpha, beta, arc: Some(_) } if beta < 0.0 => {
                    ((self.inside)(o) && (self.dist)(o) >= alpha - self.tol).then_some((k, o, alpha))
                }
                _ => None,
            })
            .collect()
    }

    /// Medial points of radius `t`, computed directly at that level.
    pub fn points_at(&self, t: f64, tol_r: f64) -> Vec<LevelPoint> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(ts) = self.coincidence(i, j) {
                    if (ts - t).abs() <= tol_r {
                        for e in self.constant_pieces(i, j, ts) {
                            out.push(LevelPoint { p: e.midpoint(), on_constant: true });
                        }
                    }
                    continue;
                }
                for p in self.pair_points(i, j, t).into_iter().flatten() {
                    if self.valid(i, j, p, t) {
                        out.push(LevelPoint { p, on_constant: false });
                    }
                }
            }
        }
        for (_, o, a) in self.centers() {
            if (a - t).abs() <= tol_r {
                out.push(LevelPoint { p: o, on_constant: false });
            }
        }
        out
    }

    /// Angular contact intervals `(start, width)` of the disk of radius `t` centered at `p`.
    pub fn contacts(&self, p: Point, t: f64, tol: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for s in &self.sites {
            if (s.distance(p) - t).abs() > tol {
                continue;
            }
            match s.geom {
                SiteGeom::Circle { o, arc: Some(a), .. } if o.dist(p) <= tol => {
                    let (st, w) = if a.ccw() { (a.start, a.sweep) } else { (a.end_angle(), -a.sweep) };
                    out.push((st, w));
                }
                _ => {
                    let f = match s.geom {
                        SiteGeom::Line { a, b, .. } => Edge::segment(a, b).closest(p).0,
                        SiteGeom::Circle { arc: Some(a), .. } => Edge::Arc(a).closest(p).0,
                        SiteGeom::Circle { o, .. } => o,
                    };
                    out.push(((f - p).angle(), 0.0));
                }
            }
        }
        out
    }

    /// Largest medial radius.
    pub fn max_radius(&self) -> f64 {
        let mut m: f64 = 0.0;
        for r in self.runs() {
            m = m.max(r.t1);
        }
        for c in self.constant_branches() {
            m = m.max(c.t);
        }
        for (_, _, a) in self.centers() {
            m = m.max(a);
        }
        m
    }

    /// Smallest medial radius (the reach of the complement, for exterior engines).
    pub fn min_radius(&self) -> f64 {
        let mut m = f64::INFINITY;
        for r in self.runs() {
            m = m.min(r.t0);
        }
        for c in self.constant_branches() {
            m = m.min(c.t);
        }
        for (_, _, a) in self.centers() {
            m = m.min(a);
        }
        m
    }

    pub fn sample_run(&self, r: &Run, segments: usize) -> Vec<MedialPoint> {
        let mut pts = Vec::new();
        for s in 0..=segments {
            let t = r.t0 + (r.t1 - r.t0) * s as f64 / segments as f64;
            let t = t.max(0.0);
            if let Some(p) = self.pair_points(r.i, r.j, t)[r.root] {
                pts.push(MedialPoint { point: p, radius: t });
            }
        }
        pts
    }
}

/// Whether two angular intervals (given as start and non-negative width) contain
/// antipodal directions, up to `tol` radians.
pub(crate) fn antipodal(contacts: &[(f64, f64)], tol: f64) -> bool {
    for (k, &(s1, w1)) in contacts.iter().enumerate() {
        if w1 >= std::f64::consts::PI - tol {
            return true;
        }
        for &(s2, w2) in &contacts[k + 1..] {
            // does [s1 + π, s1 + π + w1] meet [s2, s2 + w2] on the circle?
            let d = (s2 - (s1 + std::f64::consts::PI)).rem_euclid(TAU);
            if d <= w1 + tol || TAU - d <= w2 + tol {
                return true;
            }
        }
    }
    false
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn solve3(rows: &[([f64; 3], f64)]) -> Option<[f64; 3]> {
    let (a, b, c) = (rows[0].0, rows[1].0, rows[2].0);
    let det = dot3(a, cross3(b, c));
    if det.abs() < 1e-12 * norm3(a) * norm3(b) * norm3(c) {
        return None;
    }
    let rhs = [rows[0].1, rows[1].1, rows[2].1];
    let col = |k: usize| -> f64 {
        let mut m = [a, b, c];
        for (r, row) in m.iter_mut().enumerate() {
            row[k] = rhs[r];
        }
        dot3(m[0], cross3(m[1], m[2])) / det
    };
    Some([col(0), col(1), col(2)])
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-13 * scale {
        return if b.abs() > 1e-13 * scale { vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -1e-12 * b * b.max(scale) {
        return Vec::new();
    }
    let sq = disc.max(0.0).sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// Centers of radius-`r` disks inside the region touching its boundary at two antipodal
/// points. Points on constant-radius branches are represented by one sample each.
pub fn antipodal_centers(region: &Region, r: f64) -> Vec<Point> {
    let eng = Engine::interior(region);
    let tol = region.tolerance();
    let tol_r = tol.tau_radius * r.max(1.0);
    let tol_c = (10.0 * eng.tol).max(tol_r);
    let mut out: Vec<Point> = Vec::new();
    for lp in eng.points_at(r, tol_r) {
        let hit = lp.on_constant || antipodal(&eng.contacts(lp.p, r, tol_c), tol.tau_geom / r);
        if hit && out.iter().all(|q| q.dist(lp.p) > tol_c) {
            out.push(lp.p);
        }
    }
    out
}

pub(crate) fn antipodal_at(region: &Region, r: f64) -> bool {
    !antipodal_centers(region, r).is_empty()
}

/// Sample of a medial branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MedialPoint {
    pub point: Point,
    pub radius: f64,
}

/// One branch: a curve of medial points together with the sites realizing them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Branch {
    pub points: Vec<MedialPoint>,
    pub sites: Vec<usize>,
}

/// Inner medial axis with its radius function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MedialAxis {
    pub sites: Vec<SiteRef>,
    pub branches: Vec<Branch>,
}

impl MedialAxis {
    pub fn max_radius(&self) -> f64 {
        self.branches.iter().flat_map(|b| b.points.iter()).map(|p| p.radius).fold(0.0, f64::max)
    }

    /// Total polyline length of all branches.
    pub fn length(&self) -> f64 {
        self.branches.iter().map(|b| b.points.windows(2).map(|w| w[0].point.dist(w[1].point)).sum::<f64>()).sum()
    }
}

/// Inner medial axis of a region.
pub fn medial_axis(region: &Region) -> MedialAxis {
    let eng = Engine::interior(region);
    let prune = region.tolerance().tau_geom;
    let mut branches = Vec::new();
    for r in eng.runs() {
        let points = eng.sample_run(&r, 16);
        let len: f64 = points.windows(2).map(|w| w[0].point.dist(w[1].point)).sum();
        if points.len() >= 2 && len > prune {
            branches.push(Branch { points, sites: vec![r.i, r.j] });
        }
    }
    for c in eng.constant_branches() {
        for e in &c.pieces {
            let k = 16;
            let points = (0..=k).map(|s| MedialPoint { point: e.point_at(s as f64 / k as f64), radius: c.t }).collect();
            branches.push(Branch { points, sites: vec![c.i, c.j] });
        }
    }
    for (k, o, a) in eng.centers() {
        branches.push(Branch { points: vec![MedialPoint { point: o, radius: a }], sites: vec![k] });
    }
    MedialAxis { sites: eng.sites.iter().map(Site::describe).collect(), branches }
}
