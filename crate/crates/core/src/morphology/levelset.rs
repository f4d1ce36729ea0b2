//! Assembly of a set from candidate boundary curves.
//!
//! Candidates are oriented with the set on their left. They are split at every mutual
//! intersection, filtered by a membership predicate evaluated at piece midpoints, and the
//! surviving pieces are stitched: coincident opposite pieces become 1-d curves, the rest
//! close into counterclockwise bodies and clockwise holes.

use std::collections::HashMap;
use std::f64::consts::TAU;

use super::regionset::{EdgeChain, RegionSet};
use crate::geom::{chain_area, intersect, merge_chain, ArcPolygon, BBox, Edge, Point};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Tol {
    /// Intersection tolerance.
    pub int: f64,
    /// Node clustering radius and minimal piece length.
    pub snap: f64,
}

impl Tol {
    pub fn for_scale(tau_geom: f64, scale: f64) -> Self {
        let int = tau_geom * scale.max(1.0);
        Tol { int, snap: 100.0 * int }
    }
}

/// Bucketed point lookup.
pub(crate) struct PointIndex {
    cell: f64,
    map: HashMap<(i64, i64), Vec<usize>>,
    pts: Vec<Point>,
}

impl PointIndex {
    pub fn new(radius: f64) -> Self {
        PointIndex { cell: radius.max(1e-300) * 2.0, map: HashMap::new(), pts: Vec::new() }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    /// Index of a stored point within `cell / 2` of `p`, if any.
    pub fn find(&self, p: Point) -> Option<usize> {
        let (kx, ky) = self.key(p);
        let r = self.cell * 0.5;
        let mut best: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = self.map.get(&(kx + dx, ky + dy)) {
                    for &i in v {
                        let d = self.pts[i].dist(p);
                        if d <= r && best.map_or(true, |(_, bd)| d < bd) {
                            best = Some((i, d));
                        }
                    }
                }
            }
        }
        best.map(|b| b.0)
    }

    pub fn insert(&mut self, p: Point) -> usize {
        let i = self.pts.len();
        self.pts.push(p);
        let k = self.key(p);
        self.map.entry(k).or_default().push(i);
        i
    }

    pub fn find_or_insert(&mut self, p: Point) -> usize {
        match self.find(p) {
            Some(i) => i,
            None => self.insert(p),
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.pts
    }
}

/// Split every candidate at its intersections with the others.
///
/// Returns the pieces and all intersection points found.
pub(crate) fn split_all(cands: &[Edge], tol: &Tol) -> (Vec<Edge>, Vec<Point>) {
    let n = cands.len();
    let boxes: Vec<BBox> = cands.iter().map(|c| c.bbox().expanded(tol.int)).collect();
    let mut params: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut hits = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            for p in intersect(&cands[i], &cands[j], tol.int) {
                params[i].push(cands[i].param_of(p));
                params[j].push(cands[j].param_of(p));
                hits.push(p);
            }
        }
    }
    let mut pieces = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        split_edge(c, &mut params[i], tol.snap, &mut pieces);
    }
    (pieces, hits)
}

pub(crate) fn split_edge(c: &Edge, params: &mut [f64], snap: f64, out: &mut Vec<Edge>) {
    let len = c.length();
    if len <= snap {
        return;
    }
    params.sort_by(f64::total_cmp);
    let mut cuts = vec![0.0];
    for &t in params.iter() {
        let last = *cuts.last().unwrap();
        if (t - last) * len > snap && (1.0 - t) * len > snap {
            cuts.push(t);
        }
    }
    cuts.push(1.0);
    for w in cuts.windows(2) {
        out.push(c.sub(w[0], w[1]));
    }
}

fn chord_len(e: &Edge, snap: f64) -> f64 {
    (e.length() * 0.25).min(snap * 100.0)
}

/// Direction leaving the start of `e`, taken along a short chord.
fn out_dir(e: &Edge, snap: f64) -> Point {
    let l = e.length();
    e.point_at(chord_len(e, snap) / l) - e.start()
}

/// Direction from the end of `e` back along it.
fn back_dir(e: &Edge, snap: f64) -> Point {
    let l = e.length();
    e.point_at(1.0 - chord_len(e, snap) / l) - e.end()
}

/// Outcome of classifying kept pieces.
pub(crate) struct Stitched {
    pub loops: Vec<Vec<Edge>>,
    pub curves: Vec<Edge>,
}

/// Separate coincident pieces and close the rest into loops.
pub(crate) fn stitch(pieces: Vec<Edge>, snap: f64) -> Stitched {
    let m = pieces.len();
    // coincidence by midpoint lookup
    let mut mids = PointIndex::new(snap);
    let mut owner: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        let k = mids.find_or_insert(p.midpoint());
        owner.entry(k).or_default().push(i);
    }
    let mut drop = vec![false; m];
    let mut curves = Vec::new();
    let mut keys: Vec<usize> = owner.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        let group = &owner[&k];
        for (a_idx, &a) in group.iter().enumerate() {
            if drop[a] {
                continue;
            }
            for &b in &group[a_idx + 1..] {
                if drop[b] {
                    continue;
                }
                let (pa, pb) = (&pieces[a], &pieces[b]);
                if pa.start().dist(pb.start()) <= snap && pa.end().dist(pb.end()) <= snap {
                    drop[b] = true;
                } else if pa.start().dist(pb.end()) <= snap && pa.end().dist(pb.start()) <= snap {
                    drop[a] = true;
                    drop[b] = true;
                    curves.push(*pa);
                    break;
                }
            }
        }
    }
    let rest: Vec<Edge> = pieces.into_iter().zip(drop).filter(|(_, d)| !d).map(|(e, _)| e).collect();
    Stitched { loops: close_loops(&rest, snap), curves }
}

fn close_loops(pieces: &[Edge], snap: f64) -> Vec<Vec<Edge>> {
    let m = pieces.len();
    let mut nodes = PointIndex::new(snap);
    let mut s_node = Vec::with_capacity(m);
    let mut e_node = Vec::with_capacity(m);
    for p in pieces {
        s_node.push(nodes.find_or_insert(p.start()));
        e_node.push(nodes.find_or_insert(p.end()));
    }
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nodes.points().len()];
    for i in 0..m {
        outgoing[s_node[i]].push(i);
    }
    let mut used = vec![false; m];
    let mut loops = Vec::new();
    for first in 0..m {
        if used[first] {
            continue;
        }
        used[first] = true;
        let mut chain = vec![first];
        let mut cur = first;
        let closed = loop {
            let node = e_node[cur];
            let back = back_dir(&pieces[cur], snap);
            let ba = back.angle();
            let mut best: Option<(usize, f64)> = None;
            for &o in &outgoing[node] {
                if used[o] && o != first {
                    continue;
                }
                let cw = (ba - out_dir(&pieces[o], snap).angle()).rem_euclid(TAU);
                let cw = if cw < 1e-14 { TAU } else { cw };
                if best.map_or(true, |(_, b)| cw < b) {
                    best = Some((o, cw));
                }
            }
            match best {
                Some((o, _)) if o == first => break true,
                Some((o, _)) => {
                    used[o] = true;
                    chain.push(o);
                    cur = o;
                }
                None => break false,
            }
            if chain.len() > m {
                break false;
            }
        };
        if closed {
            loops.push(chain.iter().map(|&i| pieces[i]).collect());
        }
    }
    loops
}

/// Chain undirected 1-d pieces into maximal curves.
pub(crate) fn chain_curves(pieces: &[Edge], snap: f64) -> Vec<EdgeChain> {
    let m = pieces.len();
    let mut nodes = PointIndex::new(snap);
    let ends: Vec<(usize, usize)> =
        pieces.iter().map(|p| (nodes.find_or_insert(p.start()), nodes.find_or_insert(p.end()))).collect();
    let nn = nodes.points().len();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nn];
    for (i, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(i);
        if b != a {
            inc[b].push(i);
        }
    }
    let mut used = vec![false; m];
    let mut out = Vec::new();
    let walk = |start_node: usize, first: usize, used: &mut Vec<bool>| -> Vec<Edge> {
        let mut edges = Vec::new();
        let mut node = start_node;
        let mut cur = Some(first);
        while let Some(i) = cur {
            used[i] = true;
            let (a, b) = ends[i];
            let (e, next) = if a == node { (pieces[i], b) } else { (pieces[i].reversed(), a) };
            edges.push(e);
            node = next;
            cur = if inc[node].len() == 2 { inc[node].iter().copied().find(|&j| !used[j]) } else { None };
        }
        edges
    };
    for n in 0..nn {
        if inc[n].len() != 2 {
            for k in 0..inc[n].len() {
                let i = inc[n][k];
                if !used[i] {
                    let e = walk(n, i, &mut used);
                    out.push(EdgeChain::new(merge_chain(&e, snap, false)));
                }
            }
        }
    }
    for i in 0..m {
        if !used[i] {
            let e = walk(ends[i].0, i, &mut used);
            out.push(EdgeChain::new(merge_chain(&e, snap, true)));
        }
    }
    out
}

/// Build the set whose boundary is made of candidate pieces passing `keep`.
pub(crate) fn assemble(cands: &[Edge], cand_points: &[Point], keep: &dyn Fn(Point) -> bool, tol: &Tol) -> RegionSet {
    let (pieces, hits) = split_all(cands, tol);
    let kept: Vec<Edge> = pieces.into_iter().filter(|p| p.length() > tol.snap && keep(p.midpoint())).collect();
    let st = stitch(kept, tol.snap);
    let mut set = RegionSet::empty();
    for l in st.loops {
        let merged = merge_chain(&l, tol.snap, true);
        let a = chain_area(&merged);
        let poly = ArcPolygon::new(merged).snapped();
        if a > 0.0 {
            set.bodies.push(poly);
        } else if a < 0.0 {
            set.holes.push(poly);
        }
    }
    set.curves = chain_curves(&st.curves, tol.snap);
    let mut seen = PointIndex::new(tol.snap);
    for &p in cand_points.iter().chain(hits.iter()) {
        if seen.find(p).is_some() {
            continue;
        }
        seen.insert(p);
        if !keep(p) || set.skeleton_distance(p) <= tol.snap || set.winding(p) != 0 {
            continue;
        }
        set.points.push(p);
    }
    set
}
