//! Simplicial band depth (sBD) and its modified form (sMBD) for curves with
//! values in `R^d`.
//!
//! At every grid point the values of `d+1` reference curves span a simplex.
//! Strict depth scores a subset when the query lies in that simplex at all
//! grid points; modified depth scores the fraction of grid points. Scores are
//! normalized by `C(n, d+1)`. `J` does not apply here: only `(d+1)`-subsets
//! are enumerated.

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{DepthError, Result};
use crate::kernel::{self, DepthKernel, Scored};
use crate::model::{validate_functional, DepthParams, DepthResult, FunctionalSample};
use crate::simplex;

/// Simplex-containment kernel over items holding `grid_len` points in `R^dim`.
///
/// A point cloud is the special case `grid_len = 1`.
pub struct SimplicialKernel {
    values: Vec<f64>,
    n: usize,
    grid_len: usize,
    dim: usize,
    relax: bool,
    tol: f64,
}

impl SimplicialKernel {
    pub(crate) fn from_flat(
        values: Vec<f64>,
        n: usize,
        grid_len: usize,
        dim: usize,
        relax: bool,
        tol: f64,
    ) -> Self {
        debug_assert_eq!(values.len(), n * grid_len * dim);
        SimplicialKernel {
            values,
            n,
            grid_len,
            dim,
            relax,
            tol,
        }
    }

    pub fn new(sample: &FunctionalSample, params: &DepthParams) -> Result<Self> {
        params.validate()?;
        validate_functional(sample, false).into_result()?;
        Ok(Self::from_flat(
            sample.flat_values(),
            sample.len(),
            sample.grid().len(),
            sample.dim(),
            params.relax,
            params.simplex_tol(),
        ))
    }

    fn point(&self, item: usize, t: usize) -> &[f64] {
        let start = (item * self.grid_len + t) * self.dim;
        &self.values[start..start + self.dim]
    }

    fn inside_points(&self, query: usize, members: &[usize], strict: bool) -> usize {
        let mut inside = 0;
        let mut vertices: Vec<&[f64]> = Vec::with_capacity(members.len());
        for t in 0..self.grid_len {
            vertices.clear();
            vertices.extend(members.iter().map(|&m| self.point(m, t)));
            if simplex::contains(self.point(query, t), &vertices, self.tol) {
                inside += 1;
            } else if strict {
                return inside;
            }
        }
        inside
    }
}

impl DepthKernel for SimplicialKernel {
    fn item_count(&self) -> usize {
        self.n
    }

    fn min_refs(&self) -> usize {
        self.dim + 1
    }

    fn depth_against(&self, query: usize, refs: &[usize]) -> Scored {
        debug_assert!(!refs.contains(&query));
        let k = self.dim + 1;
        let mut count: u64 = 0;
        let mut evaluations = 0u64;
        for_each_combination(refs, k, |members| {
            evaluations += 1;
            let inside = self.inside_points(query, members, !self.relax);
            if self.relax {
                count += inside as u64;
            } else if inside == self.grid_len {
                count += 1;
            }
        });
        let subsets = binomial(refs.len() + 1, k) as f64;
        let depth = if self.relax {
            count as f64 / (subsets * self.grid_len as f64)
        } else {
            count as f64 / subsets
        };
        Scored { depth, evaluations }
    }
}

/// sBD (`relax = false`) or sMBD (`relax = true`) of every curve.
///
/// Univariate samples are accepted and treated as `d = 1`, where each
/// simplex is the interval between two curves.
pub fn simplicial_band_depth(
    sample: &FunctionalSample,
    params: &DepthParams,
) -> Result<DepthResult> {
    let kernel = SimplicialKernel::new(sample, params)?;
    let d = sample.dim();
    let n = sample.len();
    if n < d + 2 {
        return Err(DepthError::TooSmall(format!(
            "simplicial band depth in {d} dimensions needs at least {} curves, got {n}",
            d + 2
        )));
    }
    let ids = sample.ids();
    let scores = kernel::depths(&kernel, &ids, params)?;
    let method = if params.relax {
        "modified_simplicial_band_depth"
    } else {
        "simplicial_band_depth"
    };
    Ok(DepthResult::new(
        method,
        params.clone(),
        &ids,
        scores.iter().map(|s| s.depth).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::band_depth;
    use crate::model::{Containment, MultivariateCurve, TimeGrid};
    use crate::testutil::worked_sample;

    fn params(relax: bool) -> DepthParams {
        DepthParams::default()
            .with_containment(Containment::Simplex)
            .with_relax(relax)
    }

    #[test]
    fn univariate_reduces_to_band_depth() {
        let s = worked_sample();
        for relax in [false, true] {
            let sbd = simplicial_band_depth(&s, &params(relax)).unwrap();
            let bd = band_depth(&s, &DepthParams::default().with_relax(relax)).unwrap();
            assert_eq!(sbd.depths(), bd.depths());
        }
    }

    fn centroid_sample() -> FunctionalSample {
        let a = vec![vec![0.0, 0.0], vec![1.0, 1.0]];
        let b = vec![vec![3.0, 0.0], vec![4.0, 1.0]];
        let c = vec![vec![0.0, 3.0], vec![1.0, 7.0]];
        let center: Vec<Vec<f64>> = (0..2)
            .map(|t| {
                (0..2)
                    .map(|k| (a[t][k] + b[t][k] + c[t][k]) / 3.0)
                    .collect()
            })
            .collect();
        FunctionalSample::multivariate(
            TimeGrid::uniform(2),
            vec![
                MultivariateCurve::new("a", a),
                MultivariateCurve::new("b", b),
                MultivariateCurve::new("c", c),
                MultivariateCurve::new("m", center),
            ],
        )
    }

    #[test]
    fn centroid_curve_has_one_quarter() {
        let r = simplicial_band_depth(&centroid_sample(), &params(false)).unwrap();
        assert_eq!(r.depth_of("m"), Some(0.25));
        for id in ["a", "b", "c"] {
            assert_eq!(r.depth_of(id), Some(0.0));
        }
    }

    #[test]
    fn modified_dominates_strict() {
        let s = centroid_sample();
        let strict = simplicial_band_depth(&s, &params(false)).unwrap();
        let relaxed = simplicial_band_depth(&s, &params(true)).unwrap();
        for (a, b) in strict.entries.iter().zip(&relaxed.entries) {
            assert!(b.depth >= a.depth);
        }
    }

    #[test]
    fn too_few_curves() {
        let s = FunctionalSample::multivariate(
            TimeGrid::uniform(1),
            (0..3)
                .map(|i| MultivariateCurve::new(format!("c{i}"), vec![vec![i as f64, 1.0]]))
                .collect(),
        );
        assert!(matches!(
            simplicial_band_depth(&s, &params(false)),
            Err(DepthError::TooSmall(_))
        ));
    }
}
