//! Exact-measure geometry of regions bounded by segments and circular arcs.

mod edge;
mod intersect;
pub mod json;
mod point;
mod polygon;
mod tolerance;

pub use edge::{sweep_between, wrap_pi, Arc, Edge, Offset, Segment};
pub use intersect::intersect;
pub use point::{BBox, Point};
pub use polygon::{
    chain_area, chain_bbox, chain_distance, continues, merge_chain, turn_angle, winding_number, ArcPolygon, Location,
    Region, ValidationIssue, ValidationReport,
};
pub use tolerance::TolerancePolicy;
