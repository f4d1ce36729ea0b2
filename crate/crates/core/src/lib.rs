//! Planar self-Cheeger sets via the rolling-disk criterion.
//!
//! Regions are Jordan domains bounded by segments and circular arcs. The exact layer
//! ([`geom`], [`morphology`], [`criterion`], [`constructor`]) decides verdicts analytically;
//! [`oracle`] cross-checks them on a pixel grid with a min-cut solver.

pub mod cli;
pub mod constructor;
pub mod criterion;
pub mod error;
pub mod geom;
pub mod morphology;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use geom::{ArcPolygon, Edge, Location, Point, Region, TolerancePolicy};
