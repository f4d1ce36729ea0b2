//! Disk morphology: inner parallel sets, Minkowski sums, openings and the medial axis.

mod boolean;
mod connectivity;
mod levelset;
mod medial;
mod ops;
mod regionset;

pub use boolean::{intersection_area, symmetric_difference_area};
pub use connectivity::{connected_components, connectivity_witness, no_necks, Components, ConnectivityWitness, Piece};
pub(crate) use medial::{antipodal_at, Engine};
pub use medial::{antipodal_centers, medial_axis, Branch, MedialAxis, MedialPoint, SiteRef};
pub use ops::{dilate, erode, open};
pub use regionset::{EdgeChain, RegionSet};

/// Whether the set equals the closure of its interior: bodies only.
pub fn closure_of_interior_equals(set: &RegionSet) -> bool {
    set.is_full_bodied()
}
