use serde::{Deserialize, Serialize};

use crate::geom::{chain_area, winding_number, ArcPolygon, BBox, Edge, Point, Region};

/// Open or closed chain of edges carrying no area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeChain {
    pub edges: Vec<Edge>,
}

impl EdgeChain {
    pub fn new(edges: Vec<Edge>) -> Self {
        EdgeChain { edges }
    }

    pub fn length(&self) -> f64 {
        self.edges.iter().map(Edge::length).sum()
    }

    pub fn start(&self) -> Point {
        self.edges[0].start()
    }

    pub fn end(&self) -> Point {
        self.edges[self.edges.len() - 1].end()
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.start().dist(self.end()) <= tol
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.edges.iter().map(|e| e.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn reversed(&self) -> EdgeChain {
        EdgeChain::new(self.edges.iter().rev().map(Edge::reversed).collect())
    }
}

/// Compact planar set made of 2-d bodies, 1-d curves and isolated points.
///
/// Bodies run counterclockwise; `holes` (clockwise) are cut out of the bodies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RegionSet {
    #[serde(default)]
    pub bodies: Vec<ArcPolygon>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<ArcPolygon>,
    #[serde(default)]
    pub curves: Vec<EdgeChain>,
    #[serde(default)]
    pub points: Vec<Point>,
}

impl From<&Region> for RegionSet {
    fn from(r: &Region) -> Self {
        RegionSet::body(r.outer().clone())
    }
}

impl RegionSet {
    pub fn empty() -> Self {
        RegionSet::default()
    }

    pub fn body(p: ArcPolygon) -> Self {
        RegionSet { bodies: vec![p], ..Default::default() }
    }

    pub fn point(p: Point) -> Self {
        RegionSet { points: vec![p], ..Default::default() }
    }

    pub fn curve(edges: Vec<Edge>) -> Self {
        RegionSet { curves: vec![EdgeChain::new(edges)], ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty() && self.curves.is_empty() && self.points.is_empty()
    }

    /// Whether every piece is two-dimensional.
    pub fn is_full_bodied(&self) -> bool {
        self.curves.is_empty() && self.points.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.loops().map(|l| chain_area(&l.edges)).sum()
    }

    /// Bodies and holes.
    pub fn loops(&self) -> impl Iterator<Item = &ArcPolygon> {
        self.bodies.iter().chain(self.holes.iter())
    }

    /// Every edge of every piece.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.loops().flat_map(|l| l.edges.iter()).chain(self.curves.iter().flat_map(|c| c.edges.iter()))
    }

    pub fn bbox(&self) -> BBox {
        let mut b = self.edges().fold(BBox::EMPTY, |b, e| b.union(e.bbox()));
        for p in &self.points {
            b.include(*p);
        }
        b
    }

    /// Winding of the 2-d part around `p`.
    pub fn winding(&self, p: Point) -> i64 {
        self.loops().map(|l| winding_number(&l.edges, p)).sum()
    }

    /// Distance to the nearest piece boundary, curve or point.
    pub fn skeleton_distance(&self, p: Point) -> f64 {
        let e = self.edges().map(|e| e.distance(p)).fold(f64::INFINITY, f64::min);
        self.points.iter().map(|q| q.dist(p)).fold(e, f64::min)
    }

    /// Distance from `p` to the set (zero inside bodies).
    pub fn distance(&self, p: Point) -> f64 {
        let d = self.skeleton_distance(p);
        if d > 0.0 && !self.bodies.is_empty() && self.winding(p) != 0 {
            0.0
        } else {
            d
        }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance(p) <= tol
    }

    pub fn transformed(&self, s: f64, theta: f64, t: Point) -> RegionSet {
        RegionSet {
            bodies: self.bodies.iter().map(|b| b.transformed(s, theta, t)).collect(),
            holes: self.holes.iter().map(|b| b.transformed(s, theta, t)).collect(),
            curves: self
                .curves
                .iter()
                .map(|c| EdgeChain::new(c.edges.iter().map(|e| e.transformed(s, theta, t)).collect()))
                .collect(),
            points: self.points.iter().map(|p| p.rotated(theta) * s + t).collect(),
        }
    }

    /// Total length of the 1-d pieces.
    pub fn curve_length(&self) -> f64 {
        self.curves.iter().map(EdgeChain::length).sum()
    }

    /// A characteristic length used to scale absolute tolerances.
    pub fn scale(&self) -> f64 {
        let b = self.bbox();
        if b.is_empty() {
            1.0
        } else {
            b.diagonal().max(1.0)
        }
    }
}
