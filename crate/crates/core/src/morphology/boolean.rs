use super::levelset::{split_edge, Tol};
use super::regionset::RegionSet;
use crate::geom::{intersect, BBox, Edge, TolerancePolicy};

fn loop_edges(s: &RegionSet) -> Vec<Edge> {
    s.loops().flat_map(|l| l.edges.iter().copied()).collect()
}

/// Pieces of `own` split where they meet `other`.
fn split_against(own: &[Edge], other: &[Edge], tol: &Tol) -> Vec<Edge> {
    let ob: Vec<BBox> = other.iter().map(|e| e.bbox().expanded(tol.int)).collect();
    let mut out = Vec::new();
    for e in own {
        let eb = e.bbox().expanded(tol.int);
        let mut params = Vec::new();
        for (f, b) in other.iter().zip(&ob) {
            if eb.overlaps(b) {
                for p in intersect(e, f, tol.int) {
                    params.push(e.param_of(p));
                }
            }
        }
        split_edge(e, &mut params, tol.snap, &mut out);
    }
    out
}

fn nearest(edges: &[Edge], p: crate::geom::Point) -> Option<(&Edge, f64, f64)> {
    edges
        .iter()
        .map(|e| {
            let (_, t, d) = e.closest(p);
            (e, t, d)
        })
        .min_by(|a, b| a.2.total_cmp(&b.2))
}

/// Area of the intersection of the 2-d parts, by Green's theorem over boundary pieces.
pub fn intersection_area(a: &RegionSet, b: &RegionSet, tol: &TolerancePolicy) -> f64 {
    let (ea, eb) = (loop_edges(a), loop_edges(b));
    if ea.is_empty() || eb.is_empty() {
        return 0.0;
    }
    let scale = a.scale().max(b.scale());
    let lt = Tol::for_scale(tol.tau_geom, scale);
    let on = 10.0 * lt.int;
    let mut total = 0.0;
    for piece in split_against(&ea, &eb, &lt) {
        let m = piece.midpoint();
        match nearest(&eb, m) {
            Some((f, t, d)) if d <= on => {
                if piece.tangent_at(0.5).dot(f.tangent_at(t)) > 0.0 {
                    total += piece.green();
                }
            }
            _ => {
                if b.winding(m) != 0 {
                    total += piece.green();
                }
            }
        }
    }
    for piece in split_against(&eb, &ea, &lt) {
        let m = piece.midpoint();
        let near_a = nearest(&ea, m).is_some_and(|(_, _, d)| d <= on);
        if !near_a && a.winding(m) != 0 {
            total += piece.green();
        }
    }
    total.max(0.0)
}

/// `|A Δ B|` of the 2-d parts; curves and points carry no area.
pub fn symmetric_difference_area(a: &RegionSet, b: &RegionSet, tol: &TolerancePolicy) -> f64 {
    let i = intersection_area(a, b, tol);
    (a.area() + b.area() - 2.0 * i).max(0.0)
}
