pub mod classify;
pub mod cohomology;
pub mod error;
pub mod fan;
pub mod forbidden;
pub mod index_set;
pub mod io;
pub mod lattice;
pub mod picard;
pub mod semigroup;

#[cfg(test)]
pub(crate) mod testutil;

pub use classify::{
    enumerate_h_trivial, has_infinitely_many_h_trivial, lambda_m_enumerate, ClassificationReport, ClassifyOptions,
};
pub use cohomology::{cohomology_dims, contribution_box, reduced_homology_dims, support_complex, CohomologyDims};
pub use error::{HtError, Result};
pub use fan::{validate_fan, CollinearPair, LatticeVector2, LinearFunctional2, StackyFan};
pub use forbidden::{is_h_trivial, is_h_trivial_cross_checked};
pub use index_set::IndexSet;
pub use picard::{picard_group, LineBundleClass, PicardGroup};
pub use semigroup::{ConeSemigroup, Element};
