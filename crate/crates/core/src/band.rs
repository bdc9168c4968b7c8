//! Band depth and modified band depth for univariate functional samples.
//!
//! For a curve `x` and band size `j`, every `j`-subset of the *other* curves
//! defines a band (pointwise min/max envelope). Strict depth counts the bands
//! containing `x` at every grid point; relaxed (modified) depth sums the
//! fraction of grid points inside each band. Each `j` contributes its count
//! divided by `C(n, j)`, and contributions are summed over `j = 2..=J`.
//!
//! The denominator keeps counting the subsets that include `x` even though
//! they are never scored, so a curve outside every band of the others gets
//! depth exactly zero.

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{DepthError, Result};
use crate::kernel::{self, DepthKernel, Scored};
use crate::model::{validate_functional, Curve, DepthParams, DepthResult, FunctionalSample};

/// Pointwise lower and upper bounds of a set of curves.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Envelope {
    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    fn check_len(&self, x: &Curve) -> Result<()> {
        if x.values.len() != self.len() {
            return Err(DepthError::DimensionMismatch {
                expected: self.len(),
                got: x.values.len(),
            });
        }
        Ok(())
    }
}

/// Envelope of the curves at `indices`.
pub fn envelope(sample: &FunctionalSample, indices: &[usize]) -> Result<Envelope> {
    let curves = sample.univariate_curves().ok_or_else(|| {
        DepthError::Unsupported("envelopes are defined for univariate curves only".into())
    })?;
    if indices.is_empty() {
        return Err(DepthError::InvalidParams(
            "envelope needs at least one curve".into(),
        ));
    }
    for (k, &i) in indices.iter().enumerate() {
        if i >= curves.len() {
            return Err(DepthError::IndexOutOfRange {
                index: i,
                len: curves.len(),
            });
        }
        if indices[..k].contains(&i) {
            return Err(DepthError::InvalidParams(format!("index {i} repeated")));
        }
    }
    let first = &curves[indices[0]].values;
    let mut lower = first.clone();
    let mut upper = first.clone();
    for &i in &indices[1..] {
        let values = &curves[i].values;
        if values.len() != lower.len() {
            return Err(DepthError::DimensionMismatch {
                expected: lower.len(),
                got: values.len(),
            });
        }
        for (t, &v) in values.iter().enumerate() {
            lower[t] = lower[t].min(v);
            upper[t] = upper[t].max(v);
        }
    }
    Ok(Envelope { lower, upper })
}

/// Whether `x` lies inside the closed band at every grid point.
pub fn contains(env: &Envelope, x: &Curve) -> Result<bool> {
    env.check_len(x)?;
    Ok(env
        .lower
        .iter()
        .zip(&env.upper)
        .zip(&x.values)
        .all(|((&lo, &hi), &v)| lo <= v && v <= hi))
}

/// Fraction of grid points at which `x` lies inside the closed band.
pub fn containment_fraction(env: &Envelope, x: &Curve) -> Result<f64> {
    env.check_len(x)?;
    if env.is_empty() {
        return Ok(0.0);
    }
    let inside = env
        .lower
        .iter()
        .zip(&env.upper)
        .zip(&x.values)
        .filter(|((&lo, &hi), &v)| lo <= v && v <= hi)
        .count();
    Ok(inside as f64 / env.len() as f64)
}

/// Band-containment kernel over a univariate sample.
pub struct BandKernel {
    values: Vec<f64>,
    n: usize,
    grid_len: usize,
    max_band_size: usize,
    relax: bool,
    tol: f64,
}

impl BandKernel {
    pub fn new(sample: &FunctionalSample, params: &DepthParams) -> Result<Self> {
        if sample.is_multivariate() {
            return Err(DepthError::Unsupported(
                "band containment (r2) needs univariate curves; use simplex containment".into(),
            ));
        }
        params.validate()?;
        validate_functional(sample, false).into_result()?;
        Ok(BandKernel {
            values: sample.flat_values(),
            n: sample.len(),
            grid_len: sample.grid().len(),
            max_band_size: params.max_band_size,
            relax: params.relax,
            tol: params.band_tol(),
        })
    }

    fn curve(&self, i: usize) -> &[f64] {
        &self.values[i * self.grid_len..(i + 1) * self.grid_len]
    }

    /// Number of grid points at which `x` is inside the band of `members`,
    /// stopping early on the first miss when `strict`.
    fn inside_points(&self, x: &[f64], members: &[usize], strict: bool) -> usize {
        let mut inside = 0;
        for (t, &v) in x.iter().enumerate() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &m in members {
                let y = self.values[m * self.grid_len + t];
                lo = lo.min(y);
                hi = hi.max(y);
            }
            if lo - self.tol <= v && v <= hi + self.tol {
                inside += 1;
            } else if strict {
                return inside;
            }
        }
        inside
    }
}

impl DepthKernel for BandKernel {
    fn item_count(&self) -> usize {
        self.n
    }

    fn min_refs(&self) -> usize {
        self.max_band_size
    }

    fn depth_against(&self, query: usize, refs: &[usize]) -> Scored {
        debug_assert!(!refs.contains(&query));
        let x = self.curve(query);
        let t_len = self.grid_len;
        let mut depth = 0.0;
        let mut evaluations = 0u64;
        for j in 2..=self.max_band_size {
            let mut count: u64 = 0;
            for_each_combination(refs, j, |members| {
                evaluations += 1;
                let inside = self.inside_points(x, members, !self.relax);
                if self.relax {
                    count += inside as u64;
                } else if inside == t_len {
                    count += 1;
                }
            });
            let subsets = binomial(refs.len() + 1, j) as f64;
            depth += if self.relax {
                count as f64 / (subsets * t_len as f64)
            } else {
                count as f64 / subsets
            };
        }
        Scored { depth, evaluations }
    }
}

/// Band depth (`relax = false`) or modified band depth (`relax = true`) of
/// every curve, summed over band sizes `2..=J`.
pub fn band_depth(sample: &FunctionalSample, params: &DepthParams) -> Result<DepthResult> {
    let kernel = BandKernel::new(sample, params)?;
    let n = sample.len();
    if n < params.max_band_size + 1 {
        return Err(DepthError::TooSmall(format!(
            "band depth with J={} needs at least {} curves, got {n}",
            params.max_band_size,
            params.max_band_size + 1
        )));
    }
    let ids = sample.ids();
    let scores = kernel::depths(&kernel, &ids, params)?;
    let method = if params.relax {
        "modified_band_depth"
    } else {
        "band_depth"
    };
    Ok(DepthResult::new(
        method,
        params.clone(),
        &ids,
        scores.iter().map(|s| s.depth).collect(),
    ))
}
