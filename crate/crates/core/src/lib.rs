//! Statistical depth for functional and pointcloud data.
//!
//! * [`band`]: band depth and modified band depth of univariate curves.
//! * [`multivariate`]: simplicial band depth of curves in `R^d`.
//! * [`pointcloud`]: simplicial, Mahalanobis, L1 and Oja depth of points.
//! * [`resampling`]: block-resampling approximation for large samples.
//! * [`homogeneity`]: P1/P2 coefficients comparing two samples.
//! * [`stats`]: median, outlier and central-region selection.
//! * [`io`] and [`render`]: CSV/JSON files and SVG figures.
//!
//! Every subset-based depth uses the same convention: subsets that include
//! the query item are skipped, but still counted in the denominator.

pub mod band;
pub mod combinatorics;
pub mod depth;
pub mod error;
pub mod homogeneity;
pub mod io;
pub mod kernel;
mod linalg;
pub mod model;
pub mod multivariate;
pub mod pointcloud;
pub mod render;
pub mod resampling;
pub mod simplex;
pub mod stats;

#[cfg(test)]
pub(crate) mod testutil;

pub use depth::{functional_depth, Sample};
pub use error::{DepthError, Result};
pub use homogeneity::{HomogeneityMethod, HomogeneityReport};
pub use model::{
    Containment, Curve, DepthEntry, DepthParams, DepthResult, FunctionalSample, MultivariateCurve,
    PointCloud, TimeGrid,
};
