#![allow(dead_code)]

use std::f64::consts::PI;

use cheeger::oracle::{grid_energy, BinaryGrid, Stencil};
use cheeger::{ArcPolygon, Edge, Point};

/// Convex arc-polygon with vertices on an ellipse and some edges bulged outward.
///
/// `gaps` are positive weights for the angular spacing of the vertices; `bulges` in
/// `[0, 1)` pick per edge a segment (below 0.3) or an arc whose tangent turn stays below
/// the vertex turns on either side.
pub fn convex_arc_polygon(gaps: &[f64], a: f64, b: f64, rotation: f64, bulges: &[f64]) -> ArcPolygon {
    let n = gaps.len();
    assert!(n >= 3 && bulges.len() == n);
    let total: f64 = gaps.iter().sum();
    let mut t = 0.0f64;
    let pts: Vec<Point> = gaps
        .iter()
        .map(|g| {
            let p = Point::new(a * t.cos(), b * t.sin()).rotated(rotation);
            t += 2.0 * PI * g / total;
            p
        })
        .collect();
    let turn = |i: usize| {
        let d0 = pts[i] - pts[(i + n - 1) % n];
        let d1 = pts[(i + 1) % n] - pts[i];
        d0.cross(d1).atan2(d0.dot(d1))
    };
    let edges = (0..n)
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            if bulges[i] < 0.3 {
                return Edge::segment(p, q);
            }
            let beta = bulges[i] * 0.45 * turn(i).min(turn((i + 1) % n));
            let d = q - p;
            let c = d.norm();
            let center = (p + q) * 0.5 + d.perp().normalized() * (0.5 * c / beta.tan());
            let radius = 0.5 * c / beta.sin();
            Edge::arc(center, radius, (p - center).angle(), 2.0 * beta)
        })
        .collect();
    ArcPolygon::new(edges)
}

pub const PATTERNS: [[&str; 4]; 20] = [
    ["####", "####", "####", "####"],
    ["....", ".##.", ".##.", "...."],
    ["#...", ".#..", "..#.", "...#"],
    ["##..", "##..", "..##", "..##"],
    ["###.", "###.", "###.", "...."],
    [".##.", "####", "####", ".##."],
    ["#..#", "....", "....", "#..#"],
    ["####", "#..#", "#..#", "####"],
    ["##..", "###.", ".###", "..##"],
    ["#.#.", ".#.#", "#.#.", ".#.#"],
    ["####", "####", "....", "...."],
    ["#...", "##..", "###.", "####"],
    [".#..", "####", ".#..", ".#.."],
    ["....", "....", "....", "...."],
    ["###.", "#.#.", "###.", "...."],
    ["####", "###.", "##..", "#..."],
    ["..##", "..##", "####", "####"],
    ["#..#", "####", "####", "#..#"],
    [".###", "#.##", "##.#", "###."],
    ["##.#", "##.#", "....", "####"],
];

/// Minimum over all subsets of the occupied pixels, and the union of all minimizers.
pub fn brute_force(grid: &BinaryGrid, kappa: f64, stencil: Stencil) -> (f64, BinaryGrid) {
    let n = grid.bits.len();
    assert!(n <= 25);
    let allowed: u32 = (0..n).filter(|&k| grid.bits[k]).map(|k| 1 << k).sum();
    let mut best = f64::INFINITY;
    let mut values = Vec::new();
    let mut sub = grid.blank_like();
    for mask in 0u32..(1 << n) {
        if mask & !allowed != 0 {
            continue;
        }
        for k in 0..n {
            sub.bits[k] = mask >> k & 1 == 1;
        }
        let v = grid_energy(&sub, kappa, stencil);
        best = best.min(v);
        values.push((mask, v));
    }
    let union = values.iter().filter(|(_, v)| *v == best).fold(0u32, |u, (m, _)| u | m);
    let mut set = grid.blank_like();
    for k in 0..n {
        set.bits[k] = union >> k & 1 == 1;
    }
    (best, set)
}

/// Random convex arc-polygon with 3 to 12 vertices.
pub fn random_convex(rng: &mut rand::rngs::StdRng) -> ArcPolygon {
    use rand::RngExt;
    let n = rng.random_range(3..=12usize);
    let gaps: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..3.0)).collect();
    let bulges: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let (a, b) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
    let rotation = rng.random_range(0.0..2.0 * PI);
    convex_arc_polygon(&gaps, a, b, rotation, &bulges)
}
