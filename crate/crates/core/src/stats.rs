//! Order statistics over a [`DepthResult`]: ranking, median, outliers,
//! trimming and central regions.
//!
//! `ordered` sorts by descending depth and breaks ties by descending id, so
//! it is exactly the reverse of the ascending `(depth, id)` order that
//! `outlying` reads from. Both `deepest` and `outlying` expand the cut to
//! every entry tied with the last one taken.

use std::cmp::Ordering;

use crate::depth::Sample;
use crate::error::{DepthError, Result};
use crate::model::{DepthEntry, DepthResult};

fn ascending(a: &DepthEntry, b: &DepthEntry) -> Ordering {
    a.depth.total_cmp(&b.depth).then_with(|| a.id.cmp(&b.id))
}

/// Entries sorted deepest first.
pub fn ordered(result: &DepthResult) -> Vec<DepthEntry> {
    let mut entries = result.entries.clone();
    entries.sort_by(|a, b| ascending(b, a));
    entries
}

fn ascending_order(result: &DepthResult) -> Vec<DepthEntry> {
    let mut entries = result.entries.clone();
    entries.sort_by(ascending);
    entries
}

/// First `n` of `sorted`, extended over any entries tied with the n-th.
fn take_with_ties(sorted: Vec<DepthEntry>, n: usize) -> Vec<DepthEntry> {
    let cut = sorted[n - 1].depth;
    let end = n + sorted[n..].iter().take_while(|e| e.depth == cut).count();
    sorted.into_iter().take(end).collect()
}

fn check_count(n: usize, len: usize) -> Result<()> {
    if n == 0 || n > len {
        return Err(DepthError::InvalidParams(format!(
            "n must be between 1 and {len}, got {n}"
        )));
    }
    Ok(())
}

/// The `n` deepest entries (more on ties). `n = 1` gives the median.
pub fn deepest(result: &DepthResult, n: usize) -> Result<Vec<DepthEntry>> {
    check_count(n, result.len())?;
    Ok(take_with_ties(ordered(result), n))
}

/// The `n` most outlying entries, shallowest first (more on ties).
pub fn outlying(result: &DepthResult, n: usize) -> Result<Vec<DepthEntry>> {
    check_count(n, result.len())?;
    Ok(take_with_ties(ascending_order(result), n))
}

fn positions<S: Sample>(sample: &S, keep: impl Fn(&str) -> bool) -> Vec<usize> {
    (0..sample.len())
        .filter(|&i| keep(sample.item_id(i)))
        .collect()
}

fn check_matches<S: Sample>(sample: &S, result: &DepthResult) -> Result<()> {
    if sample.len() != result.len()
        || (0..sample.len()).any(|i| result.depth_of(sample.item_id(i)).is_none())
    {
        return Err(DepthError::Incompatible(
            "depth result does not describe this sample".into(),
        ));
    }
    Ok(())
}

/// Copy of `sample` without its `n` most outlying items. `n = 0` returns the
/// sample unchanged.
pub fn drop_outlying_data<S: Sample>(sample: &S, result: &DepthResult, n: usize) -> Result<S> {
    check_matches(sample, result)?;
    if n == 0 {
        return Ok(sample.clone());
    }
    let dropped: Vec<String> = outlying(result, n)?.into_iter().map(|e| e.id).collect();
    let keep = positions(sample, |id| !dropped.iter().any(|d| d == id));
    if keep.is_empty() {
        return Err(DepthError::InvalidParams(format!(
            "dropping {n} outlying items (with ties) leaves an empty sample"
        )));
    }
    sample.select(&keep)
}

/// Sub-sample of the `n` deepest items (more on ties), in input order.
pub fn get_deepest_data<S: Sample>(sample: &S, result: &DepthResult, n: usize) -> Result<S> {
    check_matches(sample, result)?;
    let kept: Vec<String> = deepest(result, n)?.into_iter().map(|e| e.id).collect();
    sample.select(&positions(sample, |id| kept.iter().any(|k| k == id)))
}

/// Ids of the `ceil(fraction * count)` deepest items (more on ties).
/// `fraction = 0.5` gives the functional analogue of the interquartile range.
pub fn central_region(result: &DepthResult, fraction: f64) -> Result<Vec<String>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(DepthError::InvalidParams(format!(
            "fraction must be in (0, 1], got {fraction}"
        )));
    }
    let n = ((fraction * result.len() as f64).ceil() as usize).clamp(1, result.len().max(1));
    Ok(deepest(result, n)?.into_iter().map(|e| e.id).collect())
}
