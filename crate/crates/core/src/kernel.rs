//! Subset-enumerating depth kernels and the drivers that run them over a
//! whole sample, exactly or by block resampling.

use rayon::prelude::*;

use crate::error::Result;
use crate::model::DepthParams;
use crate::resampling;

/// Depth of one query together with the number of subsets (bands or
/// simplices) that were evaluated to obtain it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scored {
    pub depth: f64,
    pub evaluations: u64,
}

/// A depth measure defined by enumerating subsets of a reference set.
///
/// Items are addressed by index. `depth_against(q, refs)` scores item `q`
/// against the subsets of `refs` (which never contains `q`); the normalizing
/// denominator counts subsets of `refs ∪ {q}`, so subsets containing the
/// query contribute nothing but are still counted.
pub trait DepthKernel: Sync {
    fn item_count(&self) -> usize;

    /// Smallest reference set the kernel accepts.
    fn min_refs(&self) -> usize;

    fn depth_against(&self, query: usize, refs: &[usize]) -> Scored;
}

/// Exact depth of every item against all other items.
///
/// Items are scored independently and each score is an exact integer count
/// divided by a fixed denominator, so the output does not depend on the
/// number of worker threads.
pub fn exact_depths<K: DepthKernel + ?Sized>(kernel: &K) -> Vec<Scored> {
    let n = kernel.item_count();
    (0..n)
        .into_par_iter()
        .map(|q| {
            let refs: Vec<usize> = (0..n).filter(|&i| i != q).collect();
            kernel.depth_against(q, &refs)
        })
        .collect()
}

/// Exact or resampled depths depending on `params.blocks`.
pub fn depths<K: DepthKernel + ?Sized>(
    kernel: &K,
    ids: &[String],
    params: &DepthParams,
) -> Result<Vec<Scored>> {
    match params.blocks {
        None => Ok(exact_depths(kernel)),
        Some(k) => resampling::resampled_depths(kernel, ids, k, params.effective_seed()),
    }
}

/// Depth of a single item against all others, exact or resampled.
pub fn item_depth<K: DepthKernel + ?Sized>(
    kernel: &K,
    ids: &[String],
    query: usize,
    params: &DepthParams,
) -> Result<Scored> {
    match params.blocks {
        None => {
            let refs: Vec<usize> = (0..kernel.item_count()).filter(|&i| i != query).collect();
            Ok(kernel.depth_against(query, &refs))
        }
        Some(k) => resampling::resampled_depth(kernel, ids, query, k, params.effective_seed()),
    }
}
