//! Shared data model: time grids, curves, samples, point clouds, depth
//! parameters and results, plus structural validation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};

/// Ordered time coordinates shared by every curve of a sample.
///
/// Coordinates only drive plotting and ordering; depth computations treat
/// the grid as a set of equally weighted points.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    points: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl TimeGrid {
    pub fn new(points: Vec<f64>) -> Self {
        TimeGrid {
            points,
            labels: None,
        }
    }

    /// Grid `0, 1, …, len-1`.
    pub fn uniform(len: usize) -> Self {
        TimeGrid::new((0..len).map(|i| i as f64).collect())
    }

    /// Grid whose points are row positions but which remembers the original
    /// (possibly non-numeric) row labels, e.g. `x_0` or `00:30`.
    pub fn labelled(labels: Vec<String>) -> Self {
        TimeGrid {
            points: (0..labels.len()).map(|i| i as f64).collect(),
            labels: Some(labels),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of grid point `i`: the original row label when present, the
    /// coordinate otherwise.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format_coordinate(self.points[i]),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn format_coordinate(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// A univariate curve sampled on the sample's grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub id: String,
    pub values: Vec<f64>,
}

impl Curve {
    pub fn new(id: impl Into<String>, values: Vec<f64>) -> Self {
        Curve {
            id: id.into(),
            values,
        }
    }
}

/// A curve taking values in `R^d`; `values[t]` is the d-vector at grid point t.
#[derive(Clone, Debug, PartialEq)]
pub struct MultivariateCurve {
    pub id: String,
    pub values: Vec<Vec<f64>>,
}

impl MultivariateCurve {
    pub fn new(id: impl Into<String>, values: Vec<Vec<f64>>) -> Self {
        MultivariateCurve {
            id: id.into(),
            values,
        }
    }

    /// Dimension of the first row (0 for an empty curve).
    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Curves {
    Univariate(Vec<Curve>),
    Multivariate(Vec<MultivariateCurve>),
}

/// n curves sharing one time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalSample {
    grid: TimeGrid,
    curves: Curves,
}

impl FunctionalSample {
    /// Builds a univariate sample. Shapes are not checked here; see
    /// [`validate_functional`].
    pub fn univariate(grid: TimeGrid, curves: Vec<Curve>) -> Self {
        FunctionalSample {
            grid,
            curves: Curves::Univariate(curves),
        }
    }

    pub fn multivariate(grid: TimeGrid, curves: Vec<MultivariateCurve>) -> Self {
        FunctionalSample {
            grid,
            curves: Curves::Multivariate(curves),
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn curves(&self) -> &Curves {
        &self.curves
    }

    pub fn is_multivariate(&self) -> bool {
        matches!(self.curves, Curves::Multivariate(_))
    }

    /// Value dimension: 1 for univariate samples.
    pub fn dim(&self) -> usize {
        match &self.curves {
            Curves::Univariate(_) => 1,
            Curves::Multivariate(c) => c.first().map_or(0, MultivariateCurve::dim),
        }
    }

    pub fn len(&self) -> usize {
        match &self.curves {
            Curves::Univariate(c) => c.len(),
            Curves::Multivariate(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn id(&self, i: usize) -> &str {
        match &self.curves {
            Curves::Univariate(c) => &c[i].id,
            Curves::Multivariate(c) => &c[i].id,
        }
    }

    pub fn ids(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.id(i).to_string()).collect()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.id(i) == id)
    }

    /// Univariate curves, or `None` for a multivariate sample.
    pub fn univariate_curves(&self) -> Option<&[Curve]> {
        match &self.curves {
            Curves::Univariate(c) => Some(c),
            Curves::Multivariate(_) => None,
        }
    }

    /// New sample holding the curves at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let len = self.len();
        if let Some(&index) = indices.iter().find(|&&i| i >= len) {
            return Err(DepthError::IndexOutOfRange { index, len });
        }
        let curves = match &self.curves {
            Curves::Univariate(c) => {
                Curves::Univariate(indices.iter().map(|&i| c[i].clone()).collect())
            }
            Curves::Multivariate(c) => {
                Curves::Multivariate(indices.iter().map(|&i| c[i].clone()).collect())
            }
        };
        Ok(FunctionalSample {
            grid: self.grid.clone(),
            curves,
        })
    }

    /// Copy of `self` with curve `index` of `other` appended.
    pub fn with_item_from(&self, other: &FunctionalSample, index: usize) -> Result<Self> {
        self.check_compatible(other)?;
        if index >= other.len() {
            return Err(DepthError::IndexOutOfRange {
                index,
                len: other.len(),
            });
        }
        let mut out = self.clone();
        match (&mut out.curves, &other.curves) {
            (Curves::Univariate(mine), Curves::Univariate(theirs)) => {
                mine.push(theirs[index].clone())
            }
            (Curves::Multivariate(mine), Curves::Multivariate(theirs)) => {
                mine.push(theirs[index].clone())
            }
            _ => unreachable!("checked by check_compatible"),
        }
        Ok(out)
    }

    /// Replaces the id of curve `index`.
    pub fn rename(&mut self, index: usize, id: impl Into<String>) {
        match &mut self.curves {
            Curves::Univariate(c) => c[index].id = id.into(),
            Curves::Multivariate(c) => c[index].id = id.into(),
        }
    }

    /// Two samples are compatible when they share grid length and value
    /// dimension.
    pub fn check_compatible(&self, other: &FunctionalSample) -> Result<()> {
        if self.is_multivariate() != other.is_multivariate() {
            return Err(DepthError::Incompatible(
                "cannot mix univariate and multivariate samples".into(),
            ));
        }
        if self.grid.len() != other.grid.len() {
            return Err(DepthError::Incompatible(format!(
                "grid lengths differ ({} vs {})",
                self.grid.len(),
                other.grid.len()
            )));
        }
        if self.is_multivariate() && self.dim() != other.dim() {
            return Err(DepthError::Incompatible(format!(
                "curve dimensions differ ({} vs {})",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// Values laid out as `[curve][time][component]` in one flat buffer.
    pub(crate) fn flat_values(&self) -> Vec<f64> {
        match &self.curves {
            Curves::Univariate(c) => c.iter().flat_map(|c| c.values.iter().copied()).collect(),
            Curves::Multivariate(c) => c
                .iter()
                .flat_map(|c| c.values.iter().flat_map(|row| row.iter().copied()))
                .collect(),
        }
    }
}

/// m labelled points in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    ids: Vec<String>,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(ids: Vec<String>, points: Vec<Vec<f64>>) -> Self {
        PointCloud { ids, points }
    }

    /// Cloud whose ids are the 0-based row indices.
    pub fn from_points(points: Vec<Vec<f64>>) -> Self {
        let ids = (0..points.len()).map(|i| i.to_string()).collect();
        PointCloud { ids, points }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }

    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let len = self.len();
        if let Some(&index) = indices.iter().find(|&&i| i >= len) {
            return Err(DepthError::IndexOutOfRange { index, len });
        }
        Ok(PointCloud {
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        })
    }

    pub fn with_item_from(&self, other: &PointCloud, index: usize) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(DepthError::Incompatible(format!(
                "point dimensions differ ({} vs {})",
                self.dim(),
                other.dim()
            )));
        }
        if index >= other.len() {
            return Err(DepthError::IndexOutOfRange {
                index,
                len: other.len(),
            });
        }
        let mut out = self.clone();
        out.ids.push(other.ids[index].clone());
        out.points.push(other.points[index].clone());
        Ok(out)
    }

    /// Replaces the id of point `index`.
    pub fn rename(&mut self, index: usize, id: impl Into<String>) {
        self.ids[index] = id.into();
    }

    /// Applies `f` to every point.
    pub fn map_points(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Self {
        PointCloud {
            ids: self.ids.clone(),
            points: self.points.iter().map(|p| f(p)).collect(),
        }
    }
}

/// Containment notion used to define depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    /// Band containment for univariate curves.
    R2,
    Simplex,
    Oja,
    Mahalanobis,
    L1,
}

impl Containment {
    pub fn as_str(self) -> &'static str {
        match self {
            Containment::R2 => "r2",
            Containment::Simplex => "simplex",
            Containment::Oja => "oja",
            Containment::Mahalanobis => "mahalanobis",
            Containment::L1 => "l1",
        }
    }
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Containment {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r2" => Ok(Containment::R2),
            "simplex" => Ok(Containment::Simplex),
            "oja" => Ok(Containment::Oja),
            "mahalanobis" => Ok(Containment::Mahalanobis),
            "l1" => Ok(Containment::L1),
            other => Err(DepthError::InvalidParams(format!(
                "unknown containment '{other}' (expected one of r2, simplex, oja, mahalanobis, l1)"
            ))),
        }
    }
}

/// Parameters shared by every depth computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthParams {
    /// Largest band size summed over (bands of 2..=J curves).
    #[serde(rename = "J")]
    pub max_band_size: usize,
    /// Number of resampling blocks; `None` computes exact depth.
    #[serde(rename = "K")]
    pub blocks: Option<usize>,
    pub containment: Containment,
    /// Modified (fractional) containment instead of all-or-nothing.
    pub relax: bool,
    pub seed: Option<u64>,
    /// Containment tolerance. `None` uses the containment's default: exact
    /// closed bounds for bands, 1e-9 on barycentric coordinates for simplices.
    pub tol: Option<f64>,
    /// Progress display only; never part of serialized output.
    #[serde(skip)]
    pub quiet: bool,
}

impl Default for DepthParams {
    fn default() -> Self {
        DepthParams {
            max_band_size: 2,
            blocks: None,
            containment: Containment::R2,
            relax: false,
            seed: None,
            tol: None,
            quiet: false,
        }
    }
}

pub const DEFAULT_SIMPLEX_TOL: f64 = 1e-9;

impl DepthParams {
    pub fn with_j(mut self, j: usize) -> Self {
        self.max_band_size = j;
        self
    }

    pub fn with_relax(mut self, relax: bool) -> Self {
        self.relax = relax;
        self
    }

    pub fn with_blocks(mut self, k: usize) -> Self {
        self.blocks = Some(k);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_containment(mut self, containment: Containment) -> Self {
        self.containment = containment;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_band_size < 2 {
            return Err(DepthError::InvalidParams(format!(
                "J must be >= 2, got {}",
                self.max_band_size
            )));
        }
        if self.blocks == Some(0) {
            return Err(DepthError::InvalidParams("K must be >= 1".into()));
        }
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(DepthError::InvalidParams(format!(
                    "tol must be finite and nonnegative, got {tol}"
                )));
            }
        }
        Ok(())
    }

    pub fn band_tol(&self) -> f64 {
        self.tol.unwrap_or(0.0)
    }

    pub fn simplex_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_SIMPLEX_TOL)
    }

    /// Seed actually used for resampling.
    pub fn effective_seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthEntry {
    pub id: String,
    pub depth: f64,
}

/// Depth of every item of a sample, in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthResult {
    pub method: String,
    pub params: DepthParams,
    pub entries: Vec<DepthEntry>,
    pub warnings: Vec<String>,
}

impl DepthResult {
    pub fn new(
        method: impl Into<String>,
        params: DepthParams,
        ids: &[String],
        depths: Vec<f64>,
    ) -> Self {
        DepthResult {
            method: method.into(),
            params,
            entries: ids
                .iter()
                .zip(depths)
                .map(|(id, depth)| DepthEntry {
                    id: id.clone(),
                    depth,
                })
                .collect(),
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn depth_of(&self, id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.id == id).map(|e| e.depth)
    }

    pub fn depths(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.depth).collect()
    }
}

/// One problem found by validation.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Empty,
    Grid {
        index: usize,
        message: String,
    },
    Shape {
        item: String,
        message: String,
    },
    DuplicateId(String),
    Value {
        item: String,
        index: usize,
        component: Option<usize>,
        value: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => f.write_str("sample is empty"),
            Violation::Grid { index, message } => write!(f, "grid point {index}: {message}"),
            Violation::Shape { item, message } => write!(f, "{item}: {message}"),
            Violation::DuplicateId(id) => write!(f, "duplicate id '{id}'"),
            Violation::Value {
                item,
                index,
                component: None,
                value,
            } => write!(f, "{item}: non-finite value {value} at index {index}"),
            Violation::Value {
                item,
                index,
                component: Some(c),
                value,
            } => write!(
                f,
                "{item}: non-finite value {value} at index {index}, component {c}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// `Ok(())` for a clean report, `DepthError::InvalidData` otherwise.
    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(DepthError::InvalidData(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn duplicate_ids<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<Violation> {
    let mut seen = HashSet::new();
    let mut reported = HashSet::new();
    let mut out = Vec::new();
    for id in ids {
        if !seen.insert(id) && reported.insert(id) {
            out.push(Violation::DuplicateId(id.to_string()));
        }
    }
    out
}

/// Checks shapes and id uniqueness; with `deep`, also scans every value for
/// NaN/Inf and the grid for strict monotonicity.
pub fn validate_functional(sample: &FunctionalSample, deep: bool) -> ValidationReport {
    let mut violations = Vec::new();
    let grid_len = sample.grid().len();
    if sample.is_empty() {
        violations.push(Violation::Empty);
    }
    if grid_len == 0 {
        violations.push(Violation::Grid {
            index: 0,
            message: "grid is empty".into(),
        });
    }
    match sample.curves() {
        Curves::Univariate(curves) => {
            for c in curves {
                if c.values.len() != grid_len {
                    violations.push(Violation::Shape {
                        item: c.id.clone(),
                        message: format!("{} values for a grid of {}", c.values.len(), grid_len),
                    });
                }
            }
            violations.extend(duplicate_ids(curves.iter().map(|c| c.id.as_str())));
            if deep {
                for c in curves {
                    for (t, &v) in c.values.iter().enumerate() {
                        if !v.is_finite() {
                            violations.push(Violation::Value {
                                item: c.id.clone(),
                                index: t,
                                component: None,
                                value: v,
                            });
                        }
                    }
                }
            }
        }
        Curves::Multivariate(curves) => {
            let dim = sample.dim();
            if dim == 0 && !curves.is_empty() {
                violations.push(Violation::Shape {
                    item: curves[0].id.clone(),
                    message: "curve has zero dimension".into(),
                });
            }
            for c in curves {
                if c.values.len() != grid_len {
                    violations.push(Violation::Shape {
                        item: c.id.clone(),
                        message: format!("{} rows for a grid of {}", c.values.len(), grid_len),
                    });
                }
                if let Some((t, row)) = c.values.iter().enumerate().find(|(_, r)| r.len() != dim) {
                    violations.push(Violation::Shape {
                        item: c.id.clone(),
                        message: format!("row {t} has {} entries, expected {dim}", row.len()),
                    });
                }
            }
            violations.extend(duplicate_ids(curves.iter().map(|c| c.id.as_str())));
            if deep {
                for c in curves {
                    for (t, row) in c.values.iter().enumerate() {
                        for (k, &v) in row.iter().enumerate() {
                            if !v.is_finite() {
                                violations.push(Violation::Value {
                                    item: c.id.clone(),
                                    index: t,
                                    component: Some(k),
                                    value: v,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    if deep {
        let pts = sample.grid().points();
        for (i, &p) in pts.iter().enumerate() {
            if !p.is_finite() {
                violations.push(Violation::Grid {
                    index: i,
                    message: format!("non-finite coordinate {p}"),
                });
            }
        }
        for (i, w) in pts.windows(2).enumerate() {
            if w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less) {
                violations.push(Violation::Grid {
                    index: i + 1,
                    message: format!("not strictly increasing ({} then {})", w[0], w[1]),
                });
            }
        }
    }
    ValidationReport { violations }
}

/// Point-cloud counterpart of [`validate_functional`].
pub fn validate_pointcloud(cloud: &PointCloud, deep: bool) -> ValidationReport {
    let mut violations = Vec::new();
    if cloud.is_empty() {
        violations.push(Violation::Empty);
    }
    if cloud.ids.len() != cloud.points.len() {
        violations.push(Violation::Shape {
            item: "ids".into(),
            message: format!("{} ids for {} points", cloud.ids.len(), cloud.points.len()),
        });
    }
    let dim = cloud.dim();
    if dim == 0 && !cloud.is_empty() {
        violations.push(Violation::Shape {
            item: cloud.ids.first().cloned().unwrap_or_default(),
            message: "point has zero dimension".into(),
        });
    }
    for (i, p) in cloud.points.iter().enumerate() {
        if p.len() != dim {
            violations.push(Violation::Shape {
                item: cloud.ids.get(i).cloned().unwrap_or_else(|| i.to_string()),
                message: format!("{} coordinates, expected {dim}", p.len()),
            });
        }
    }
    violations.extend(duplicate_ids(cloud.ids.iter().map(String::as_str)));
    if deep {
        for (i, p) in cloud.points.iter().enumerate() {
            for (k, &v) in p.iter().enumerate() {
                if !v.is_finite() {
                    violations.push(Violation::Value {
                        item: cloud.ids.get(i).cloned().unwrap_or_else(|| i.to_string()),
                        index: k,
                        component: None,
                        value: v,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::worked_sample;

    #[test]
    fn worked_sample_is_clean() {
        let report = validate_functional(&worked_sample(), true);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn wrong_length_curve_is_one_shape_violation() {
        let mut s = worked_sample();
        if let Curves::Univariate(c) = &mut s.curves {
            c[2].values.pop();
        }
        let report = validate_functional(&s, false);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(&report.violations[0], Violation::Shape { item, .. } if item == "f_2"));
    }

    #[test]
    fn nan_reported_only_by_deep_check() {
        let mut s = worked_sample();
        if let Curves::Univariate(c) = &mut s.curves {
            c[1].values[2] = f64::NAN;
        }
        assert!(validate_functional(&s, false).is_ok());
        let report = validate_functional(&s, true);
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::Value { item, index, .. } => {
                assert_eq!(item, "f_1");
                assert_eq!(*index, 2);
            }
            v => panic!("unexpected violation {v:?}"),
        }
    }

    #[test]
    fn non_monotone_grid_flagged() {
        let s = FunctionalSample::univariate(
            TimeGrid::new(vec![0.0, 2.0, 1.0]),
            vec![Curve::new("a", vec![1.0, 2.0, 3.0])],
        );
        assert!(validate_functional(&s, false).is_ok());
        let report = validate_functional(&s, true);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::Grid { index: 2, .. }
        ));
    }

    #[test]
    fn multivariate_ragged_row() {
        let s = FunctionalSample::multivariate(
            TimeGrid::uniform(2),
            vec![
                MultivariateCurve::new("a", vec![vec![0.0, 1.0], vec![1.0, 1.0]]),
                MultivariateCurve::new("b", vec![vec![0.0, 1.0], vec![1.0]]),
            ],
        );
        let report = validate_functional(&s, false);
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn pointcloud_checks() {
        let cloud = PointCloud::from_points(vec![
            vec![0.873179, 0.828111],
            vec![0.368512, 0.024619],
            vec![0.927522, 0.348593],
            vec![0.481917, 0.748796],
            vec![0.980515, 0.954392],
        ]);
        assert!(validate_pointcloud(&cloud, true).is_ok());

        let ragged = PointCloud::from_points(vec![vec![0.0, 1.0], vec![2.0]]);
        let report = validate_pointcloud(&ragged, false);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::Shape { .. }));

        let dup = PointCloud::new(vec!["a".into(), "a".into()], vec![vec![0.0], vec![1.0]]);
        let report = validate_pointcloud(&dup, false);
        assert_eq!(report.violations, vec![Violation::DuplicateId("a".into())]);
    }

    #[test]
    fn validation_is_idempotent() {
        let s = worked_sample();
        assert_eq!(validate_functional(&s, true), validate_functional(&s, true));
    }

    #[test]
    fn params_validation() {
        assert!(DepthParams::default().validate().is_ok());
        assert!(DepthParams::default().with_j(1).validate().is_err());
        assert!(DepthParams::default().with_blocks(0).validate().is_err());
        assert!("P3".parse::<Containment>().is_err());
        assert_eq!(
            "Simplex".parse::<Containment>().unwrap(),
            Containment::Simplex
        );
    }
}
