use serde::Serialize;

use super::levelset::{PointIndex, Tol};
use super::ops::erode;
use super::regionset::RegionSet;
use crate::error::{Error, Result};
use crate::geom::{intersect, Edge, Point, Region};

/// One piece of a [`RegionSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Piece {
    Body(usize),
    Curve(usize),
    Point(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Components {
    pub count: usize,
    pub members: Vec<Vec<Piece>>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = i;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn edges_touch(a: &[Edge], b: &[Edge], tol: f64) -> bool {
    a.iter().any(|e| {
        let eb = e.bbox().expanded(tol);
        b.iter().any(|f| eb.overlaps(&f.bbox()) && !intersect(e, f, tol).is_empty())
    })
}

/// Path components of the union of all pieces.
pub fn connected_components(set: &RegionSet, tau_geom: f64) -> Components {
    let snap = Tol::for_scale(tau_geom, set.scale()).snap;
    let mut pieces = Vec::new();
    let mut edges: Vec<&[Edge]> = Vec::new();
    for (i, b) in set.bodies.iter().enumerate() {
        pieces.push(Piece::Body(i));
        edges.push(&b.edges);
    }
    for (i, c) in set.curves.iter().enumerate() {
        pieces.push(Piece::Curve(i));
        edges.push(&c.edges);
    }
    let ne = pieces.len();
    for i in 0..set.points.len() {
        pieces.push(Piece::Point(i));
    }
    let n = pieces.len();
    let mut dsu = Dsu((0..n).collect());
    for i in 0..ne {
        for j in (i + 1)..ne {
            if edges_touch(edges[i], edges[j], snap) {
                dsu.union(i, j);
            }
        }
    }
    for (k, p) in set.points.iter().enumerate() {
        for (i, es) in edges.iter().enumerate() {
            let near = es.iter().any(|e| e.distance(*p) <= snap);
            let inside = matches!(pieces[i], Piece::Body(_)) && crate::geom::winding_number(es, *p) != 0;
            if near || inside {
                dsu.union(ne + k, i);
            }
        }
        for (k2, q) in set.points.iter().enumerate().skip(k + 1) {
            if p.dist(*q) <= snap {
                dsu.union(ne + k, ne + k2);
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<Piece>> = Vec::new();
    for i in 0..n {
        let r = dsu.find(i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => members[k].push(pieces[i]),
            None => {
                roots.push(r);
                members.push(vec![pieces[i]]);
            }
        }
    }
    Components { count: members.len(), members }
}

/// Whether the inner parallel set at radius `r` is nonempty and path-connected.
pub fn no_necks(region: &Region, r: f64) -> Result<bool> {
    Ok(inner_components(region, r)?.1.count == 1)
}

pub(crate) fn inner_components(region: &Region, r: f64) -> Result<(RegionSet, Components)> {
    if !(r > 0.0) {
        return Err(Error::BadParameter(format!("radius must be positive, got {r}")));
    }
    let inner = erode(region, r)?;
    if inner.is_empty() {
        let inradius = crate::criterion::inradius(region)?;
        return Err(Error::NoInscribedDisk { r, inradius });
    }
    let c = connected_components(&inner, region.tolerance().tau_geom);
    Ok((inner, c))
}

/// Polyline inside the inner parallel set joining two inscribed-disk centers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectivityWitness {
    pub path: Vec<Point>,
}

/// Join `a` and `b` by a polyline whose vertices all lie in the inner parallel set at
/// radius `r`. `None` when they lie in different components.
pub fn connectivity_witness(region: &Region, r: f64, a: Point, b: Point) -> Result<Option<ConnectivityWitness>> {
    let tol = region.tolerance().tau_geom;
    let ok = |p: Point| region.boundary_distance(p) >= r - tol;
    for p in [a, b] {
        if !ok(p) {
            return Err(Error::PreconditionFailed(format!(
                "({}, {}) is not the center of an inscribed disk of radius {r}",
                p.x, p.y
            )));
        }
    }
    let inner = erode(region, r)?;
    let scale = region.bbox().diagonal();
    let h = scale / 256.0;
    let snap = Tol::for_scale(tol, scale).snap;

    let mut idx = PointIndex::new(snap);
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let add = |p: Point, idx: &mut PointIndex, adj: &mut Vec<Vec<usize>>| -> usize {
        let i = idx.find_or_insert(p);
        if i == adj.len() {
            adj.push(Vec::new());
        }
        i
    };
    let ia = add(a, &mut idx, &mut adj);
    let ib = add(b, &mut idx, &mut adj);
    let chains = inner.loops().map(|l| &l.edges[..]).chain(inner.curves.iter().map(|c| &c.edges[..]));
    for es in chains {
        let mut prev: Option<usize> = None;
        for e in es {
            let k = ((e.length() / h).ceil() as usize).max(1);
            for s in 0..=k {
                let i = add(e.point_at(s as f64 / k as f64), &mut idx, &mut adj);
                if let Some(p) = prev {
                    if p != i {
                        adj[p].push(i);
                        adj[i].push(p);
                    }
                }
                prev = Some(i);
            }
        }
    }
    for p in &inner.points {
        add(*p, &mut idx, &mut adj);
    }
    let pts = idx.points().to_vec();
    let visible = |p: Point, q: Point| {
        let k = ((p.dist(q) / h).ceil() as usize).max(1);
        (1..k).all(|s| ok(p.lerp(q, s as f64 / k as f64)))
    };
    for &s in &[ia, ib] {
        let mut order: Vec<usize> = (0..pts.len()).filter(|&j| j != s).collect();
        order.sort_by(|&i, &j| pts[i].dist(pts[s]).total_cmp(&pts[j].dist(pts[s])));
        for &j in order.iter().take(64) {
            if visible(pts[s], pts[j]) {
                adj[s].push(j);
                adj[j].push(s);
            }
        }
    }
    // breadth-first search
    let mut prev = vec![usize::MAX; pts.len()];
    prev[ia] = ia;
    let mut queue = std::collections::VecDeque::from([ia]);
    while let Some(u) = queue.pop_front() {
        if u == ib {
            break;
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if prev[ib] == usize::MAX {
        return Ok(None);
    }
    let mut nodes = vec![ib];
    while *nodes.last().unwrap() != ia {
        let u = *nodes.last().unwrap();
        nodes.push(prev[u]);
    }
    nodes.reverse();
    let mut path = vec![pts[nodes[0]]];
    for w in nodes.windows(2) {
        let (p, q) = (pts[w[0]], pts[w[1]]);
        let k = ((p.dist(q) / h).ceil() as usize).max(1);
        for s in 1..=k {
            path.push(p.lerp(q, s as f64 / k as f64));
        }
    }
    Ok(Some(ConnectivityWitness { path }))
}
