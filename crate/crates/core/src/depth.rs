//! Entry points that pick a depth measure from the sample kind and
//! `params.containment`.

use crate::band::{band_depth, BandKernel};
use crate::error::{DepthError, Result};
use crate::kernel;
use crate::model::{Containment, DepthParams, DepthResult, FunctionalSample, PointCloud};
use crate::multivariate::{simplicial_band_depth, SimplicialKernel};
use crate::pointcloud;

/// Depth of every curve: band depth for `r2`, simplicial band depth for
/// `simplex`.
pub fn functional_depth(sample: &FunctionalSample, params: &DepthParams) -> Result<DepthResult> {
    match params.containment {
        Containment::R2 => band_depth(sample, params),
        Containment::Simplex => simplicial_band_depth(sample, params),
        other => Err(DepthError::InvalidParams(format!(
            "containment '{other}' applies to point clouds; functional data accepts r2 or simplex"
        ))),
    }
}

/// Operations shared by functional samples and point clouds, so that
/// homogeneity coefficients can be computed for either.
pub trait Sample: Clone + Sync + Send {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn item_id(&self, index: usize) -> &str;

    /// Copy of `self` with item `index` of `other` appended.
    fn with_item_from(&self, other: &Self, index: usize) -> Result<Self>;

    fn rename(&mut self, index: usize, id: &str);

    fn check_compatible(&self, other: &Self) -> Result<()>;

    /// New sample holding the items at `indices`, in that order.
    fn select(&self, indices: &[usize]) -> Result<Self>;

    /// Depth of every item.
    fn depth(&self, params: &DepthParams) -> Result<DepthResult>;

    /// Depth of item `index` against all other items.
    fn member_depth(&self, index: usize, params: &DepthParams) -> Result<f64>;
}

impl Sample for FunctionalSample {
    fn len(&self) -> usize {
        FunctionalSample::len(self)
    }

    fn item_id(&self, index: usize) -> &str {
        self.id(index)
    }

    fn with_item_from(&self, other: &Self, index: usize) -> Result<Self> {
        FunctionalSample::with_item_from(self, other, index)
    }

    fn rename(&mut self, index: usize, id: &str) {
        FunctionalSample::rename(self, index, id)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        FunctionalSample::check_compatible(self, other)
    }

    fn select(&self, indices: &[usize]) -> Result<Self> {
        FunctionalSample::select(self, indices)
    }

    fn depth(&self, params: &DepthParams) -> Result<DepthResult> {
        functional_depth(self, params)
    }

    fn member_depth(&self, index: usize, params: &DepthParams) -> Result<f64> {
        let n = FunctionalSample::len(self);
        if index >= n {
            return Err(DepthError::IndexOutOfRange { index, len: n });
        }
        let ids = self.ids();
        let scored = match params.containment {
            Containment::R2 => {
                let kernel = BandKernel::new(self, params)?;
                if n < params.max_band_size + 1 {
                    return Err(DepthError::TooSmall(format!(
                        "band depth with J={} needs at least {} curves, got {n}",
                        params.max_band_size,
                        params.max_band_size + 1
                    )));
                }
                kernel::item_depth(&kernel, &ids, index, params)?
            }
            Containment::Simplex => {
                let kernel = SimplicialKernel::new(self, params)?;
                let d = self.dim();
                if n < d + 2 {
                    return Err(DepthError::TooSmall(format!(
                        "simplicial band depth in {d} dimensions needs at least {} curves, got {n}",
                        d + 2
                    )));
                }
                kernel::item_depth(&kernel, &ids, index, params)?
            }
            other => {
                return Err(DepthError::InvalidParams(format!(
                    "containment '{other}' applies to point clouds"
                )))
            }
        };
        Ok(scored.depth)
    }
}

impl Sample for PointCloud {
    fn len(&self) -> usize {
        PointCloud::len(self)
    }

    fn item_id(&self, index: usize) -> &str {
        &self.ids()[index]
    }

    fn with_item_from(&self, other: &Self, index: usize) -> Result<Self> {
        PointCloud::with_item_from(self, other, index)
    }

    fn rename(&mut self, index: usize, id: &str) {
        PointCloud::rename(self, index, id)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(DepthError::Incompatible(format!(
                "point dimensions differ ({} vs {})",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    fn select(&self, indices: &[usize]) -> Result<Self> {
        PointCloud::select(self, indices)
    }

    fn depth(&self, params: &DepthParams) -> Result<DepthResult> {
        pointcloud::pointcloud_depth(self, params)
    }

    fn member_depth(&self, index: usize, params: &DepthParams) -> Result<f64> {
        pointcloud::member_depth(self, index, params)
    }
}
