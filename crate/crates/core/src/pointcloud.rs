//! Depth of points in `R^d` with respect to a point cloud.
//!
//! Simplicial depth follows the same self-exclusion convention as band
//! depth. Mahalanobis, L1 (spatial) and Oja depth use their usual textbook
//! definitions:
//!
//! * Mahalanobis: `1 / (1 + (x-μ)ᵀ Σ⁻¹ (x-μ))`, sample mean and covariance
//!   with the `m-1` divisor.
//! * L1: `1 - ‖mean over y≠x of (y-x)/‖y-x‖‖`.
//! * Oja: `1 / (1 + mean volume of the simplices spanned by x and d other
//!   points)`.

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{DepthError, Result};
use crate::kernel;
use crate::linalg;
use crate::model::{validate_pointcloud, Containment, DepthParams, DepthResult, PointCloud};
use crate::multivariate::SimplicialKernel;
use crate::simplex;

/// Distances below this are treated as coincident points by L1 depth.
const COINCIDENT: f64 = 1e-12;
/// Relative pivot floor below which the covariance matrix is regularized.
const COVARIANCE_RIDGE: f64 = 1e-12;

fn checked(cloud: &PointCloud) -> Result<()> {
    validate_pointcloud(cloud, false).into_result()
}

fn simplicial_kernel(cloud: &PointCloud, params: &DepthParams) -> SimplicialKernel {
    let values: Vec<f64> = cloud.points().iter().flatten().copied().collect();
    SimplicialKernel::from_flat(
        values,
        cloud.len(),
        1,
        cloud.dim(),
        false,
        params.simplex_tol(),
    )
}

fn is_affinely_degenerate(cloud: &PointCloud) -> bool {
    let d = cloud.dim();
    let p0 = cloud.point(0);
    let diffs: Vec<f64> = cloud.points()[1..]
        .iter()
        .flat_map(|p| p.iter().zip(p0).map(|(a, b)| a - b))
        .collect();
    linalg::rank(&diffs, cloud.len() - 1, d) < d
}

/// Simplicial depth of every point against the simplices of the others.
pub fn simplicial_depth(cloud: &PointCloud, params: &DepthParams) -> Result<DepthResult> {
    params.validate()?;
    checked(cloud)?;
    if params.containment != Containment::Simplex {
        return Err(DepthError::InvalidParams(format!(
            "simplicial depth requires simplex containment, got {}",
            params.containment
        )));
    }
    let d = cloud.dim();
    let m = cloud.len();
    if m < d + 2 {
        return Err(DepthError::TooSmall(format!(
            "simplicial depth in {d} dimensions needs at least {} points, got {m}",
            d + 2
        )));
    }
    let kernel = simplicial_kernel(cloud, params);
    let scores = kernel::depths(&kernel, cloud.ids(), params)?;
    let mut result = DepthResult::new(
        "simplicial_depth",
        params.clone(),
        cloud.ids(),
        scores.iter().map(|s| s.depth).collect(),
    );
    if is_affinely_degenerate(cloud) {
        result
            .warnings
            .push("points are affinely dependent; simplicial depths are degenerate".into());
    }
    Ok(result)
}

/// Simplicial depth of an arbitrary point `p`: the proportion of the
/// `C(m, d+1)` simplices of the cloud that contain it. When `p` coincides
/// with a member of the cloud, that member is left out of every simplex.
pub fn simplicial_depth_of(p: &[f64], cloud: &PointCloud, params: &DepthParams) -> Result<f64> {
    checked(cloud)?;
    let d = cloud.dim();
    if p.len() != d {
        return Err(DepthError::DimensionMismatch {
            expected: d,
            got: p.len(),
        });
    }
    let m = cloud.len();
    if m < d + 1 {
        return Err(DepthError::TooSmall(format!(
            "need at least {} points in {d} dimensions, got {m}",
            d + 1
        )));
    }
    let own = cloud.points().iter().position(|q| q.as_slice() == p);
    let refs: Vec<usize> = (0..m).filter(|&i| Some(i) != own).collect();
    let tol = params.simplex_tol();
    let mut count = 0u64;
    let mut vertices: Vec<&[f64]> = Vec::with_capacity(d + 1);
    for_each_combination(&refs, d + 1, |members| {
        vertices.clear();
        vertices.extend(members.iter().map(|&i| cloud.point(i)));
        if simplex::contains(p, &vertices, tol) {
            count += 1;
        }
    });
    Ok(count as f64 / binomial(m, d + 1) as f64)
}

/// Sample mean and (possibly regularized) inverse-covariance solver.
#[derive(Clone, Debug)]
pub struct MahalanobisModel {
    mean: Vec<f64>,
    covariance: Vec<f64>,
    dim: usize,
}

impl MahalanobisModel {
    pub fn fit(points: &[Vec<f64>]) -> Result<Self> {
        let m = points.len();
        if m < 2 {
            return Err(DepthError::TooSmall(format!(
                "mahalanobis depth needs at least 2 points, got {m}"
            )));
        }
        let d = points[0].len();
        let mut mean = vec![0.0; d];
        for p in points {
            for (acc, v) in mean.iter_mut().zip(p) {
                *acc += v;
            }
        }
        for v in &mut mean {
            *v /= m as f64;
        }
        let mut covariance = vec![0.0; d * d];
        for p in points {
            for r in 0..d {
                for c in 0..d {
                    covariance[r * d + c] += (p[r] - mean[r]) * (p[c] - mean[c]);
                }
            }
        }
        for v in &mut covariance {
            *v /= (m - 1) as f64;
        }
        let trace: f64 = (0..d).map(|i| covariance[i * d + i]).sum();
        let ridge = COVARIANCE_RIDGE * trace / d as f64;
        let min_pivot = linalg::solve(&covariance, &vec![0.0; d], d).map_or(0.0, |(_, p)| p);
        if min_pivot < ridge {
            for i in 0..d {
                covariance[i * d + i] += ridge;
            }
        }
        Ok(MahalanobisModel {
            mean,
            covariance,
            dim: d,
        })
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// Squared Mahalanobis distance of `x` from the mean.
    pub fn distance2(&self, x: &[f64]) -> f64 {
        let diff: Vec<f64> = x.iter().zip(&self.mean).map(|(a, b)| a - b).collect();
        if diff.iter().all(|&v| v == 0.0) {
            return 0.0;
        }
        match linalg::solve(&self.covariance, &diff, self.dim) {
            Some((y, _)) => diff.iter().zip(&y).map(|(a, b)| a * b).sum(),
            // zero covariance: every point coincides with the mean except x
            None => f64::INFINITY,
        }
    }

    pub fn depth(&self, x: &[f64]) -> f64 {
        1.0 / (1.0 + self.distance2(x))
    }
}

/// Mahalanobis depth of every point of the cloud.
pub fn mahalanobis_depth(cloud: &PointCloud) -> Result<DepthResult> {
    checked(cloud)?;
    let model = MahalanobisModel::fit(cloud.points())?;
    let depths = cloud.points().iter().map(|p| model.depth(p)).collect();
    Ok(DepthResult::new(
        "mahalanobis_depth",
        DepthParams::default().with_containment(Containment::Mahalanobis),
        cloud.ids(),
        depths,
    ))
}

fn spatial_depth(x: &[f64], cloud: &PointCloud, exclude: Option<usize>) -> f64 {
    let d = x.len();
    let mut sum = vec![0.0; d];
    let mut count = 0usize;
    for (i, y) in cloud.points().iter().enumerate() {
        if Some(i) == exclude {
            continue;
        }
        count += 1;
        let norm = y
            .iter()
            .zip(x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if norm < COINCIDENT {
            continue;
        }
        for k in 0..d {
            sum[k] += (y[k] - x[k]) / norm;
        }
    }
    if count == 0 {
        return 1.0;
    }
    let len = sum.iter().map(|v| v * v).sum::<f64>().sqrt() / count as f64;
    (1.0 - len).clamp(0.0, 1.0)
}

/// L1 (spatial) depth of every point against the other points.
pub fn l1_depth(cloud: &PointCloud) -> Result<DepthResult> {
    checked(cloud)?;
    if cloud.len() < 2 {
        return Err(DepthError::TooSmall(format!(
            "l1 depth needs at least 2 points, got {}",
            cloud.len()
        )));
    }
    let depths = (0..cloud.len())
        .map(|i| spatial_depth(cloud.point(i), cloud, Some(i)))
        .collect();
    Ok(DepthResult::new(
        "l1_depth",
        DepthParams::default().with_containment(Containment::L1),
        cloud.ids(),
        depths,
    ))
}

/// L1 depth of an external query point against every point of the cloud.
pub fn l1_depth_of(p: &[f64], cloud: &PointCloud) -> Result<f64> {
    checked(cloud)?;
    if p.len() != cloud.dim() {
        return Err(DepthError::DimensionMismatch {
            expected: cloud.dim(),
            got: p.len(),
        });
    }
    Ok(spatial_depth(p, cloud, None))
}

fn oja_mean_volume(x: &[f64], cloud: &PointCloud, exclude: Option<usize>) -> f64 {
    let d = x.len();
    let refs: Vec<usize> = (0..cloud.len()).filter(|&i| Some(i) != exclude).collect();
    let mut total = 0.0;
    let mut count = 0u64;
    let mut vertices: Vec<&[f64]> = Vec::with_capacity(d + 1);
    for_each_combination(&refs, d, |members| {
        vertices.clear();
        vertices.push(x);
        vertices.extend(members.iter().map(|&i| cloud.point(i)));
        total += simplex::volume_of(&vertices);
        count += 1;
    });
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Oja depth of every point, averaging over d-subsets of the other points.
pub fn oja_depth(cloud: &PointCloud) -> Result<DepthResult> {
    checked(cloud)?;
    let d = cloud.dim();
    let m = cloud.len();
    if m < d + 1 {
        return Err(DepthError::TooSmall(format!(
            "oja depth in {d} dimensions needs at least {} points, got {m}",
            d + 1
        )));
    }
    let depths = (0..m)
        .map(|i| 1.0 / (1.0 + oja_mean_volume(cloud.point(i), cloud, Some(i))))
        .collect();
    Ok(DepthResult::new(
        "oja_depth",
        DepthParams::default().with_containment(Containment::Oja),
        cloud.ids(),
        depths,
    ))
}

/// Depth of every point under `params.containment`.
pub fn pointcloud_depth(cloud: &PointCloud, params: &DepthParams) -> Result<DepthResult> {
    params.validate()?;
    let mut result =
        match params.containment {
            Containment::Simplex => return simplicial_depth(cloud, params),
            Containment::Mahalanobis => mahalanobis_depth(cloud)?,
            Containment::L1 => l1_depth(cloud)?,
            Containment::Oja => oja_depth(cloud)?,
            Containment::R2 => return Err(DepthError::InvalidParams(
                "r2 containment applies to functional data; use simplex, oja, mahalanobis or l1"
                    .into(),
            )),
        };
    result.params = params.clone();
    Ok(result)
}

/// Depth of member `index` against the rest of the cloud under
/// `params.containment`.
pub fn member_depth(cloud: &PointCloud, index: usize, params: &DepthParams) -> Result<f64> {
    params.validate()?;
    checked(cloud)?;
    if index >= cloud.len() {
        return Err(DepthError::IndexOutOfRange {
            index,
            len: cloud.len(),
        });
    }
    let d = cloud.dim();
    match params.containment {
        Containment::Simplex => {
            if cloud.len() < d + 2 {
                return Err(DepthError::TooSmall(format!(
                    "simplicial depth in {d} dimensions needs at least {} points, got {}",
                    d + 2,
                    cloud.len()
                )));
            }
            let kernel = simplicial_kernel(cloud, params);
            Ok(kernel::item_depth(&kernel, cloud.ids(), index, params)?.depth)
        }
        Containment::Mahalanobis => {
            Ok(MahalanobisModel::fit(cloud.points())?.depth(cloud.point(index)))
        }
        Containment::L1 => Ok(spatial_depth(cloud.point(index), cloud, Some(index))),
        Containment::Oja => {
            Ok(1.0 / (1.0 + oja_mean_volume(cloud.point(index), cloud, Some(index))))
        }
        Containment::R2 => Err(DepthError::InvalidParams(
            "r2 containment applies to functional data".into(),
        )),
    }
}
