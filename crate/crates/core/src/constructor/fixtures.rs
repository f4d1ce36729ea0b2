use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{Arc, ArcPolygon, Edge, Point, Region};

/// A named fixture with its default parameters.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub defaults: &'static [f64],
    pub about: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "disk", params: &["radius"], defaults: &[1.0], about: "disk centered at the origin" },
    Fixture {
        name: "square",
        params: &["side"],
        defaults: &[1.0],
        about: "axis-aligned square with a corner at the origin",
    },
    Fixture { name: "rectangle", params: &["width", "height"], defaults: &[2.0, 1.0], about: "axis-aligned rectangle" },
    Fixture {
        name: "stadium",
        params: &["half_width", "length"],
        defaults: &[1.0, 2.0],
        about: "segment of the given length dilated by the half-width",
    },
    Fixture {
        name: "rounded_square",
        params: &["side", "corner_radius"],
        defaults: &[2.0, 0.6],
        about: "square with circular corners",
    },
    Fixture {
        name: "l_shape",
        params: &["size", "thickness"],
        defaults: &[2.0, 1.0],
        about: "L-shaped hexagon with one reentrant corner",
    },
    Fixture {
        name: "pinocchio",
        params: &["nose_length"],
        defaults: &[3.0],
        about: "unit face with one tendril whose half-width equals area/perimeter",
    },
    Fixture {
        name: "dumbo",
        params: &["nose_length"],
        defaults: &[3.0],
        about: "unit face with two opposite tendrils whose half-width equals area/perimeter",
    },
    Fixture { name: "cloud", params: &["nose_length"], defaults: &[3.0], about: "alias of dumbo" },
    Fixture {
        name: "double_bubble",
        params: &[],
        defaults: &[],
        about: "union of two unit disks whose neck half-width equals area/perimeter",
    },
    Fixture {
        name: "bowtie",
        params: &["neck_half_width"],
        defaults: &[0.3],
        about: "hexagonal bow-tie with filleted outer corners and a neck narrower than area/perimeter",
    },
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadFixtureParams(msg.into())
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(bad(format!("{name} must be positive, got {x}")))
    }
}

/// Builds the named fixture; empty `params` selects the defaults.
pub fn fixture(name: &str, params: &[f64]) -> Result<Region> {
    let entry = FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let p: Vec<f64> = if params.is_empty() { entry.defaults.to_vec() } else { params.to_vec() };
    if p.len() != entry.params.len() {
        return Err(bad(format!(
            "{name} takes {} parameter(s) ({}), got {}",
            entry.params.len(),
            entry.params.join(", "),
            p.len()
        )));
    }
    for (k, v) in entry.params.iter().zip(&p) {
        positive(k, *v)?;
    }
    let poly = match name {
        "disk" => ArcPolygon::circle(Point::new(0.0, 0.0), p[0]),
        "square" => rect(p[0], p[0]),
        "rectangle" => rect(p[0], p[1]),
        "stadium" => stadium(p[0], p[1]),
        "rounded_square" => {
            if p[1] > 0.5 * p[0] {
                return Err(bad("corner_radius must not exceed half the side"));
            }
            let s = p[0];
            let v = [Point::new(0.0, 0.0), Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s)];
            rounded_polygon(&v, &[p[1]; 4])?
        }
        "l_shape" => {
            let (s, t) = (p[0], p[1]);
            if t >= s {
                return Err(bad("thickness must be smaller than size"));
            }
            ArcPolygon::from_vertices(&[
                Point::new(0.0, 0.0),
                Point::new(s, 0.0),
                Point::new(s, t),
                Point::new(t, t),
                Point::new(t, s),
                Point::new(0.0, s),
            ])
        }
        "pinocchio" => tendrils(p[0], 1)?,
        "dumbo" | "cloud" => tendrils(p[0], 2)?,
        "double_bubble" => double_bubble(),
        "bowtie" => bowtie(p[0])?,
        _ => unreachable!(),
    };
    Region::with_default_tolerance(poly)
}

fn rect(w: f64, h: f64) -> ArcPolygon {
    ArcPolygon::from_vertices(&[Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)])
}

fn stadium(r: f64, len: f64) -> ArcPolygon {
    let h = 0.5 * len;
    ArcPolygon::new(vec![
        Edge::segment(Point::new(-h, -r), Point::new(h, -r)),
        Edge::arc(Point::new(h, 0.0), r, -0.5 * PI, PI),
        Edge::segment(Point::new(h, r), Point::new(-h, r)),
        Edge::arc(Point::new(-h, 0.0), r, 0.5 * PI, PI),
    ])
}

/// Counterclockwise polygon whose convex corners get tangent circular fillets of the
/// given radii (zero keeps the corner).
pub(crate) fn rounded_polygon(v: &[Point], radii: &[f64]) -> Result<ArcPolygon> {
    let n = v.len();
    let mut cuts: Vec<(Point, Point, Option<Arc>)> = Vec::with_capacity(n);
    for i in 0..n {
        let (prev, cur, next) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
        let (u_in, u_out) = ((cur - prev).normalized(), (next - cur).normalized());
        let turn = u_in.cross(u_out).atan2(u_in.dot(u_out));
        let rho = radii[i];
        if rho <= 0.0 {
            cuts.push((cur, cur, None));
            continue;
        }
        if turn <= 0.0 {
            return Err(bad(format!("fillet requested at a reflex corner {i}")));
        }
        let d = rho * (0.5 * turn).tan();
        if d > cur.dist(prev) || d > cur.dist(next) {
            return Err(bad(format!("fillet radius {rho} too large at corner {i}")));
        }
        let (t1, t2) = (cur - u_in * d, cur + u_out * d);
        let c = t1 + u_in.perp() * rho;
        cuts.push((t1, t2, Some(Arc::new(c, rho, (t1 - c).angle(), turn))));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let (_, t2, arc) = cuts[i];
        if let Some(a) = arc {
            edges.push(Edge::Arc(a));
        }
        let t1_next = cuts[(i + 1) % n].0;
        if t2.dist(t1_next) > 0.0 {
            edges.push(Edge::segment(t2, t1_next));
        }
    }
    Ok(ArcPolygon::new(edges))
}

/// Unit face with `count` (1 or 2) tendrils of half-width `w` along the x axis,
/// ending in semicircular caps centered at distance `len` from the origin.
fn tendril_shape(w: f64, len: f64, count: usize) -> ArcPolygon {
    let th = w.asin();
    let a = th.cos();
    let nose = |sgn: f64, edges: &mut Vec<Edge>| {
        edges.push(Edge::segment(Point::new(sgn * a, -sgn * w), Point::new(sgn * len, -sgn * w)));
        edges.push(Edge::arc(Point::new(sgn * len, 0.0), w, -sgn * 0.5 * PI, PI));
        edges.push(Edge::segment(Point::new(sgn * len, sgn * w), Point::new(sgn * a, sgn * w)));
    };
    let mut edges = Vec::new();
    if count == 1 {
        edges.push(Edge::arc(Point::new(0.0, 0.0), 1.0, th - PI, 2.0 * (PI - th)));
        nose(-1.0, &mut edges);
    } else {
        edges.push(Edge::arc(Point::new(0.0, 0.0), 1.0, th, PI - 2.0 * th));
        nose(-1.0, &mut edges);
        edges.push(Edge::arc(Point::new(0.0, 0.0), 1.0, PI + th, PI - 2.0 * th));
        nose(1.0, &mut edges);
    }
    ArcPolygon::new(edges)
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() {
        return Err(bad("no admissible width for these parameters"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo <= f64::EPSILON * mid {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn ratio(p: &ArcPolygon) -> f64 {
    p.signed_area() / p.perimeter()
}

fn tendrils(len: f64, count: usize) -> Result<ArcPolygon> {
    if len < 1.0 {
        return Err(bad("nose_length must be at least 1"));
    }
    let w = bisect(0.05, 0.95, |w| ratio(&tendril_shape(w, len, count)) - w)?;
    Ok(tendril_shape(w, len, count))
}

fn bubble_shape(a: f64) -> ArcPolygon {
    let b = (1.0 - a * a).sqrt();
    let psi = b.atan2(-a);
    ArcPolygon::new(vec![
        Edge::arc(Point::new(a, 0.0), 1.0, -psi, 2.0 * psi),
        Edge::arc(Point::new(-a, 0.0), 1.0, PI - psi, 2.0 * psi),
    ])
}

fn double_bubble() -> ArcPolygon {
    let a = bisect(0.3, 0.99, |a| ratio(&bubble_shape(a)) - (1.0 - a * a).sqrt()).expect("bracketed root");
    bubble_shape(a)
}

const BOWTIE_HALF_LENGTH: f64 = 4.0;
const BOWTIE_HALF_HEIGHT: f64 = 2.5;
const BOWTIE_FILLET: f64 = 1.0;

fn bowtie(h: f64) -> Result<ArcPolygon> {
    let (l, hh) = (BOWTIE_HALF_LENGTH, BOWTIE_HALF_HEIGHT);
    if h >= hh {
        return Err(bad(format!("neck_half_width must be below {hh}")));
    }
    let v = [
        Point::new(0.0, -h),
        Point::new(l, -hh),
        Point::new(l, hh),
        Point::new(0.0, h),
        Point::new(-l, hh),
        Point::new(-l, -hh),
    ];
    let f = BOWTIE_FILLET;
    let poly = rounded_polygon(&v, &[0.0, f, f, 0.0, f, f])?;
    let r = ratio(&poly);
    if h >= r {
        return Err(bad(format!("neck_half_width {h} must be below area/perimeter {r}")));
    }
    Ok(poly)
}
