//! Exact cohomology of homogeneous bundles on Grassmannians and flag
//! varieties, and the checks built on it: tilting and exceptional-collection
//! tests, graded Euler characteristics on total spaces, GIT window weights
//! and Kempf–Ness data for the Gr(3,5)/Gr(2,5) flop.

pub mod builtin;
pub mod collections;
pub mod error;
pub mod homog;
pub mod literal;
pub mod minus_side;
pub mod partitions;
pub mod report;
pub mod total_space;
pub mod windows;

pub use error::{Error, Result};
pub use homog::{BundleSum, Cohomology, FlagVariety, HomogeneousBundle, LineGenerator};
pub use partitions::{IntegerWeight, WeightedSum};
