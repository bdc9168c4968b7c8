//! Simplex predicates shared by the simplicial depths.

use crate::error::{DepthError, Result};
use crate::linalg;

/// Pivots below this fraction of the largest column norm mark a simplex as
/// degenerate.
const DEGENERACY_RATIO: f64 = 1e-12;

/// d+1 vertices in d dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<Vec<f64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let d = vertices.len().saturating_sub(1);
        if vertices.is_empty() {
            return Err(DepthError::InvalidParams(
                "simplex needs at least one vertex".into(),
            ));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != d) {
            return Err(DepthError::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
        Ok(Simplex { vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    fn vertex_refs(&self) -> Vec<&[f64]> {
        self.vertices.iter().map(Vec::as_slice).collect()
    }
}

/// Barycentric coordinates of `p` with respect to `vertices`, or `None` when
/// the simplex is degenerate.
pub fn barycentric(p: &[f64], vertices: &[&[f64]]) -> Option<Vec<f64>> {
    let n = vertices.len();
    let d = n - 1;
    let mut a = vec![0.0; n * n];
    let mut max_col_norm = 0.0f64;
    for (i, v) in vertices.iter().enumerate() {
        let mut norm2 = 1.0;
        for k in 0..d {
            a[k * n + i] = v[k];
            norm2 += v[k] * v[k];
        }
        a[d * n + i] = 1.0;
        max_col_norm = max_col_norm.max(norm2.sqrt());
    }
    let mut b = Vec::with_capacity(n);
    b.extend_from_slice(&p[..d]);
    b.push(1.0);
    let (x, min_pivot) = linalg::solve(&a, &b, n)?;
    if min_pivot < DEGENERACY_RATIO * max_col_norm || x.iter().any(|c| !c.is_finite()) {
        return None;
    }
    Some(x)
}

/// Closed containment test on raw vertex slices; no dimension checks.
///
/// Degenerate simplices contain only points within `tol` of one of their
/// vertices.
pub(crate) fn contains(p: &[f64], vertices: &[&[f64]], tol: f64) -> bool {
    match barycentric(p, vertices) {
        Some(coords) => coords.iter().all(|&c| c >= -tol),
        None => vertices
            .iter()
            .any(|v| v.iter().zip(p).all(|(a, b)| (a - b).abs() <= tol)),
    }
}

/// Whether `p` lies in the closed simplex `s`, with barycentric slack `tol`.
pub fn point_in_simplex(p: &[f64], s: &Simplex, tol: f64) -> Result<bool> {
    if p.len() != s.dim() {
        return Err(DepthError::DimensionMismatch {
            expected: s.dim(),
            got: p.len(),
        });
    }
    Ok(contains(p, &s.vertex_refs(), tol))
}

pub(crate) fn volume_of(vertices: &[&[f64]]) -> f64 {
    let d = vertices.len() - 1;
    if d == 0 {
        return 0.0;
    }
    let v0 = vertices[0];
    let mut m = vec![0.0; d * d];
    for (r, v) in vertices[1..].iter().enumerate() {
        for k in 0..d {
            m[r * d + k] = v[k] - v0[k];
        }
    }
    let factorial: f64 = (1..=d).map(|i| i as f64).product();
    linalg::determinant(&m, d).abs() / factorial
}

/// d-dimensional volume `|det[v1-v0, …, vd-v0]| / d!`.
pub fn simplex_volume(s: &Simplex) -> f64 {
    volume_of(&s.vertex_refs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Simplex {
        Simplex::new(vec![a.to_vec(), b.to_vec(), c.to_vec()]).unwrap()
    }

    #[test]
    fn centroid_and_vertices_are_inside() {
        let s = tri([0.0, 0.0], [4.0, 0.0], [0.0, 4.0]);
        assert!(point_in_simplex(&[4.0 / 3.0, 4.0 / 3.0], &s, 1e-9).unwrap());
        for v in s.vertices() {
            assert!(point_in_simplex(v, &s, 1e-9).unwrap());
        }
        assert!(point_in_simplex(&[2.0, 2.0], &s, 1e-9).unwrap());
    }

    #[test]
    fn point_beyond_hypotenuse_is_outside() {
        let s = tri([0.0, 0.0], [4.0, 0.0], [0.0, 4.0]);
        assert!(!point_in_simplex(&[5.0, 5.0], &s, 1e-9).unwrap());
        // barycentric coordinates (1 - 10/4, 5/4, 5/4): the first is negative
        let bc = barycentric(&[5.0, 5.0], &[&[0.0, 0.0], &[4.0, 0.0], &[0.0, 4.0]]).unwrap();
        assert!((bc[0] + 1.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_simplex_contains_only_its_vertices() {
        let s = tri([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]);
        assert!(!point_in_simplex(&[0.5, 0.5], &s, 1e-9).unwrap());
        assert!(point_in_simplex(&[1.0, 1.0], &s, 1e-9).unwrap());
    }

    #[test]
    fn one_dimensional_simplex_is_an_interval() {
        let s = Simplex::new(vec![vec![3.0], vec![1.0]]).unwrap();
        assert!(point_in_simplex(&[2.0], &s, 0.0).unwrap());
        assert!(point_in_simplex(&[1.0], &s, 0.0).unwrap());
        assert!(!point_in_simplex(&[3.5], &s, 1e-9).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let s = tri([0.0, 0.0], [4.0, 0.0], [0.0, 4.0]);
        assert!(matches!(
            point_in_simplex(&[1.0], &s, 1e-9),
            Err(DepthError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert!(Simplex::new(vec![vec![0.0, 0.0], vec![1.0]]).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(
            simplex_volume(&tri([0.0, 0.0], [1.0, 0.0], [0.0, 1.0])),
            0.5
        );
        assert_eq!(
            simplex_volume(&tri([0.0, 0.0], [1.0, 1.0], [3.0, 3.0])),
            0.0
        );
        assert_eq!(
            simplex_volume(&tri([0.0, 0.0], [4.0, 0.0], [0.0, 4.0])),
            8.0
        );
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    proptest! {
        #[test]
        fn contained_points_have_unit_coordinate_sum(
            verts in prop::collection::vec(prop::collection::vec(coord(), 3), 4),
            weights in prop::collection::vec(0.01..1.0f64, 4),
        ) {
            let total: f64 = weights.iter().sum();
            let p: Vec<f64> = (0..3)
                .map(|k| verts.iter().zip(&weights).map(|(v, w)| v[k] * w / total).sum())
                .collect();
            let refs: Vec<&[f64]> = verts.iter().map(Vec::as_slice).collect();
            if let Some(bc) = barycentric(&p, &refs) {
                prop_assert!((bc.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn volume_translation_and_linear_scaling(
            verts in prop::collection::vec(prop::collection::vec(coord(), 2), 3),
            shift in prop::collection::vec(coord(), 2),
            a in prop::collection::vec(-3.0..3.0f64, 4),
        ) {
            let s = Simplex::new(verts.clone()).unwrap();
            let base = simplex_volume(&s);
            let moved = Simplex::new(
                verts.iter().map(|v| vec![v[0] + shift[0], v[1] + shift[1]]).collect(),
            ).unwrap();
            prop_assert!((simplex_volume(&moved) - base).abs() <= 1e-9 * (1.0 + base));
            let mapped = Simplex::new(
                verts.iter().map(|v| vec![a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]]).collect(),
            ).unwrap();
            let det = (a[0] * a[3] - a[1] * a[2]).abs();
            prop_assert!((simplex_volume(&mapped) - det * base).abs() <= 1e-8 * (1.0 + det * base));
        }
    }
}
