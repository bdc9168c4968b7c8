//! Depth-based homogeneity coefficients between two samples.
//!
//! `d_F(g)` is the depth of `g` in `F ∪ {g}`: `g` is appended to `F` (even if
//! `F` already holds an identical item) and scored against the items of `F`.
//!
//! * `P1(F, G) = d_F(g*)`, where `g*` is the deepest item of `G` within `G`.
//! * `P2(F, G) = |P1(F, G) - P1(F, F)|`.
//!
//! Large `P1` and small `P2` suggest both samples come from the same process.
//! The coefficients are not symmetric in `F` and `G`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::depth::Sample;
use crate::error::{DepthError, Result};
use crate::model::{DepthParams, DepthResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomogeneityMethod {
    P1,
    P2,
}

impl fmt::Display for HomogeneityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomogeneityMethod::P1 => "p1",
            HomogeneityMethod::P2 => "p2",
        })
    }
}

impl FromStr for HomogeneityMethod {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(HomogeneityMethod::P1),
            "p2" => Ok(HomogeneityMethod::P2),
            "p3" | "p4" => Err(DepthError::Unsupported(format!(
                "homogeneity coefficient '{s}' is not implemented; use p1 or p2"
            ))),
            other => Err(DepthError::InvalidParams(format!(
                "unknown homogeneity method '{other}' (expected p1 or p2)"
            ))),
        }
    }
}

/// Value of one homogeneity coefficient and the deepest items behind it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub method: HomogeneityMethod,
    pub value: f64,
    /// Deepest item of G within G.
    pub deepest_of_g: String,
    /// Deepest item of F within F.
    pub deepest_of_f: String,
    pub params: DepthParams,
}

/// `d_F(g)` for item `index` of `g_sample`.
pub fn depth_wrt<S: Sample>(
    g_sample: &S,
    index: usize,
    f: &S,
    params: &DepthParams,
) -> Result<f64> {
    let mut joined = f.with_item_from(g_sample, index)?;
    let last = joined.len() - 1;
    let id = joined.item_id(last).to_string();
    if (0..last).any(|i| joined.item_id(i) == id) {
        let mut fresh = format!("{id}'");
        while (0..last).any(|i| joined.item_id(i) == fresh) {
            fresh.push('\'');
        }
        joined.rename(last, &fresh);
    }
    joined.member_depth(joined.len() - 1, params)
}

/// Item of `g` with the largest depth with respect to `wrt`; ties go to the
/// smaller id.
pub fn deepest_in<S: Sample>(g: &S, wrt: &S, params: &DepthParams) -> Result<(String, f64)> {
    if g.is_empty() {
        return Err(DepthError::TooSmall(
            "deepest_in needs a nonempty sample".into(),
        ));
    }
    g.check_compatible(wrt)?;
    let depths: Vec<f64> = (0..g.len())
        .into_par_iter()
        .map(|i| depth_wrt(g, i, wrt, params))
        .collect::<Result<_>>()?;
    let best = argmax_by_id((0..g.len()).map(|i| (g.item_id(i), depths[i])));
    Ok((g.item_id(best).to_string(), depths[best]))
}

/// Position of the maximal depth; ties resolved towards the smaller id.
fn argmax_by_id<'a>(items: impl Iterator<Item = (&'a str, f64)>) -> usize {
    let mut best: Option<(usize, &str, f64)> = None;
    for (i, (id, depth)) in items.enumerate() {
        best = match best {
            Some((_, bid, bd)) if depth < bd || (depth == bd && id >= bid) => best,
            _ => Some((i, id, depth)),
        };
    }
    best.map_or(0, |(i, _, _)| i)
}

fn deepest_index(result: &DepthResult) -> usize {
    argmax_by_id(result.entries.iter().map(|e| (e.id.as_str(), e.depth)))
}

/// `P1(F, G)`.
pub fn p1<S: Sample>(f: &S, g: &S, params: &DepthParams) -> Result<HomogeneityReport> {
    f.check_compatible(g)?;
    let within_g = g.depth(params)?;
    let g_star = deepest_index(&within_g);
    let within_f = f.depth(params)?;
    let f_star = deepest_index(&within_f);
    let value = depth_wrt(g, g_star, f, params)?;
    Ok(HomogeneityReport {
        method: HomogeneityMethod::P1,
        value,
        deepest_of_g: within_g.entries[g_star].id.clone(),
        deepest_of_f: within_f.entries[f_star].id.clone(),
        params: params.clone(),
    })
}

/// `P2(F, G) = |P1(F, G) - P1(F, F)|`.
pub fn p2<S: Sample>(f: &S, g: &S, params: &DepthParams) -> Result<HomogeneityReport> {
    let cross = p1(f, g, params)?;
    let own = p1(f, f, params)?;
    Ok(HomogeneityReport {
        method: HomogeneityMethod::P2,
        value: (cross.value - own.value).abs(),
        ..cross
    })
}

pub fn homogeneity<S: Sample>(
    f: &S,
    g: &S,
    method: HomogeneityMethod,
    params: &DepthParams,
) -> Result<HomogeneityReport> {
    match method {
        HomogeneityMethod::P1 => p1(f, g, params),
        HomogeneityMethod::P2 => p2(f, g, params),
    }
}

/// `M[i][j] = method(groups[i], groups[j])` over all ordered pairs,
/// diagonal included.
pub fn homogeneity_matrix<S: Sample>(
    groups: &[S],
    method: HomogeneityMethod,
    params: &DepthParams,
) -> Result<Vec<Vec<f64>>> {
    if groups.len() < 2 {
        return Err(DepthError::TooSmall(format!(
            "homogeneity matrix needs at least 2 groups, got {}",
            groups.len()
        )));
    }
    for g in &groups[1..] {
        groups[0].check_compatible(g)?;
    }
    let k = groups.len();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let p1_values: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| p1(&groups[i], &groups[j], params).map(|r| r.value))
        .collect::<Result<_>>()?;
    let p1_at = |i: usize, j: usize| p1_values[i * k + j];
    Ok((0..k)
        .map(|i| {
            (0..k)
                .map(|j| match method {
                    HomogeneityMethod::P1 => p1_at(i, j),
                    HomogeneityMethod::P2 => (p1_at(i, j) - p1_at(i, i)).abs(),
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Curve, FunctionalSample, TimeGrid};
    use crate::testutil::worked_sample;

    fn shifted(s: &FunctionalSample, by: f64, prefix: &str) -> FunctionalSample {
        let curves = s
            .univariate_curves()
            .unwrap()
            .iter()
            .map(|c| {
                Curve::new(
                    format!("{prefix}{}", c.id),
                    c.values.iter().map(|v| v + by).collect(),
                )
            })
            .collect();
        FunctionalSample::univariate(s.grid().clone(), curves)
    }

    #[test]
    fn method_parsing() {
        assert_eq!(
            "P2".parse::<HomogeneityMethod>().unwrap(),
            HomogeneityMethod::P2
        );
        let err = "p3".parse::<HomogeneityMethod>().unwrap_err();
        assert!(err.to_string().contains("not implemented"));
        assert!(matches!(err, DepthError::Unsupported(_)));
        assert!("p9".parse::<HomogeneityMethod>().is_err());
    }

    #[test]
    fn depth_wrt_counts_against_f_plus_g() {
        // brute force: f_3 scored against all 6 curves (its own copy
        // included), 11 of C(7, 2) = 21 bands contain it
        let f = worked_sample();
        let d = depth_wrt(&f, 3, &f, &DepthParams::default()).unwrap();
        assert_eq!(d, 11.0 / 21.0);
    }

    #[test]
    fn far_away_curve_has_zero_depth() {
        let f = worked_sample();
        let g = shifted(&f, 1000.0, "g");
        assert_eq!(depth_wrt(&g, 0, &f, &DepthParams::default()).unwrap(), 0.0);
    }

    #[test]
    fn deepest_of_sample_wrt_itself() {
        let f = worked_sample();
        let (id, depth) = deepest_in(&f, &f, &DepthParams::default()).unwrap();
        assert_eq!(id, "f_3");
        assert_eq!(depth, 11.0 / 21.0);
    }

    #[test]
    fn deepest_in_singleton_and_ties() {
        let f = worked_sample();
        let single = f.select(&[4]).unwrap();
        assert_eq!(
            deepest_in(&single, &f, &DepthParams::default()).unwrap().0,
            "f_4"
        );
        // f_1 and f_2 tie inside f at 8/21
        let pair = f.select(&[2, 1]).unwrap();
        let (id, depth) = deepest_in(&pair, &f, &DepthParams::default()).unwrap();
        assert_eq!(id, "f_1");
        assert_eq!(depth, 8.0 / 21.0);
    }

    #[test]
    fn empty_g_is_an_error() {
        let f = worked_sample();
        let empty = FunctionalSample::univariate(TimeGrid::uniform(5), vec![]);
        assert!(deepest_in(&empty, &f, &DepthParams::default()).is_err());
    }

    #[test]
    fn p1_and_p2_identities() {
        let f = worked_sample();
        let params = DepthParams::default();
        let own = p1(&f, &f, &params).unwrap();
        assert_eq!(own.value, 11.0 / 21.0);
        assert_eq!(own.deepest_of_g, "f_3");
        assert_eq!(p2(&f, &f, &params).unwrap().value, 0.0);

        let far = shifted(&f, 500.0, "g");
        assert_eq!(p1(&f, &far, &params).unwrap().value, 0.0);
        assert_eq!(p2(&f, &far, &params).unwrap().value, own.value);

        let near = shifted(&f, 0.25, "h");
        let cross = p1(&f, &near, &params).unwrap().value;
        assert_eq!(
            p2(&f, &near, &params).unwrap().value,
            (cross - own.value).abs()
        );
    }

    #[test]
    fn incompatible_grids_rejected() {
        let f = worked_sample();
        let g = FunctionalSample::univariate(
            TimeGrid::uniform(2),
            vec![Curve::new("a", vec![0.0, 1.0]); 3],
        );
        assert!(matches!(
            p1(&f, &g, &DepthParams::default()),
            Err(DepthError::Incompatible(_))
        ));
    }

    #[test]
    fn matrix_diagonal_is_zero() {
        let f = worked_sample();
        let groups = vec![f.clone(), shifted(&f, 0.5, "a"), shifted(&f, 100.0, "b")];
        let m =
            homogeneity_matrix(&groups, HomogeneityMethod::P2, &DepthParams::default()).unwrap();
        for (i, row) in m.iter().enumerate() {
            assert_eq!(row[i], 0.0);
        }
        assert_eq!(
            m[0][1],
            p2(&groups[0], &groups[1], &DepthParams::default())
                .unwrap()
                .value
        );
        assert!(
            homogeneity_matrix(&groups[..1], HomogeneityMethod::P2, &DepthParams::default())
                .is_err()
        );
    }
}
