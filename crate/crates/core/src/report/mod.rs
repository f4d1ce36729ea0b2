//! SVG rendering and JSON output.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::geom::json::to_json_string;
use crate::geom::{BBox, Edge, Point, Region};
use crate::morphology::{dilate, erode, RegionSet};

/// Short fixed-precision number for SVG coordinates.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn pt(p: Point) -> String {
    // SVG's y axis points down
    format!("{} {}", num(p.x), num(-p.y))
}

/// Path commands for a chain of edges, starting with a move to its first point.
pub fn path_data(edges: &[Edge], closed: bool) -> String {
    let mut d = String::new();
    let Some(first) = edges.first() else { return d };
    write!(d, "M {}", pt(first.start())).unwrap();
    for e in edges {
        match e {
            Edge::Segment(s) => write!(d, " L {}", pt(s.to)).unwrap(),
            Edge::Arc(a) => {
                // halves keep every piece below a full turn
                let pieces = if a.sweep.abs() > PI { 2 } else { 1 };
                let step = a.sweep / pieces as f64;
                for k in 1..=pieces {
                    let end = a.center + Point::polar(a.start + step * k as f64) * a.radius;
                    let sweep_flag = if a.sweep > 0.0 { 0 } else { 1 };
                    write!(d, " A {} {} 0 0 {} {}", num(a.radius), num(a.radius), sweep_flag, pt(end)).unwrap();
                }
            }
        }
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

fn set_fill_path(set: &RegionSet) -> String {
    set.bodies.iter().chain(&set.holes).map(|p| path_data(&p.edges, true)).collect::<Vec<_>>().join(" ")
}

/// Layers drawn over the outline of a region.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub inner: Option<RegionSet>,
    pub minimizer: Option<RegionSet>,
}

impl Scene {
    /// Inner parallel set at `r` and its dilation back by `r`.
    pub fn for_radius(region: &Region, r: f64) -> Result<Scene> {
        let inner = erode(region, r)?;
        if inner.is_empty() {
            return Ok(Scene::default());
        }
        let minimizer = dilate(&inner, r, region.tolerance())?;
        Ok(Scene { inner: Some(inner), minimizer: Some(minimizer) })
    }
}

/// SVG document with layers `omega`, `inner` and `minimizer`; empty layers are left out.
pub fn render_svg(region: &Region, scene: &Scene) -> String {
    let mut bb: BBox = region.bbox();
    for s in scene.inner.iter().chain(&scene.minimizer) {
        bb = bb.union(s.bbox());
    }
    let pad = 0.05 * bb.width().max(bb.height());
    let bb = bb.expanded(pad);
    let stroke = num(0.004 * bb.width().max(bb.height()));
    let scale = 800.0 / bb.width().max(bb.height());
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num((bb.width() * scale).round()),
        num((bb.height() * scale).round()),
        num(bb.min.x),
        num(-bb.max.y),
        num(bb.width()),
        num(bb.height())
    )
    .unwrap();
    if let Some(m) = scene.minimizer.as_ref().filter(|m| !m.bodies.is_empty()) {
        writeln!(out, r##"  <g id="minimizer" fill="#9ecae1" fill-opacity="0.6" fill-rule="evenodd" stroke="none">"##)
            .unwrap();
        writeln!(out, r#"    <path d="{}"/>"#, set_fill_path(m)).unwrap();
        out.push_str("  </g>\n");
    }
    if let Some(inner) = scene.inner.as_ref().filter(|s| !s.is_empty()) {
        writeln!(
            out,
            r##"  <g id="inner" fill="#3182bd" fill-rule="evenodd" stroke="#08519c" stroke-width="{stroke}">"##
        )
        .unwrap();
        if !inner.bodies.is_empty() {
            writeln!(out, r#"    <path d="{}"/>"#, set_fill_path(inner)).unwrap();
        }
        for c in &inner.curves {
            writeln!(out, r#"    <path class="spine" fill="none" d="{}"/>"#, path_data(&c.edges, false)).unwrap();
        }
        for p in &inner.points {
            writeln!(out, r#"    <circle class="point" cx="{}" cy="{}" r="{stroke}"/>"#, num(p.x), num(-p.y)).unwrap();
        }
        out.push_str("  </g>\n");
    }
    writeln!(out, r##"  <g id="omega" fill="none" stroke="#000000" stroke-width="{stroke}">"##).unwrap();
    writeln!(out, r#"    <path d="{}"/>"#, path_data(region.edges(), true)).unwrap();
    out.push_str("  </g>\n</svg>\n");
    out
}

/// Writes full-precision JSON to `path`, or to stdout without one.
pub fn emit_json<T: Serialize + ?Sized>(value: &T, path: Option<&Path>) -> Result<()> {
    let s = to_json_string(value)?;
    write_text(&s, path)
}

pub fn write_text(s: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, s)?,
        None => print!("{s}"),
    }
    Ok(())
}
