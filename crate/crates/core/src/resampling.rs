//! Block-resampling approximation of subset-based depths.
//!
//! To approximate the depth of item `x`, the other items are shuffled into
//! `K` blocks of near-equal size, `x` is scored against each block alone, and
//! the `K` scores are averaged. With `J = 2` this evaluates about
//! `K * C(n/K, 2)` bands instead of `C(n-1, 2)`.
//!
//! Shuffles use ChaCha8 seeded from the user seed, with the stream selected
//! by a 64-bit FNV-1a hash of the item id. Every item therefore gets its own
//! reproducible partition, independent of thread scheduling and platform.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{DepthError, Result};
use crate::kernel::{DepthKernel, Scored};

/// `K` disjoint blocks covering a set of indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub blocks: Vec<Vec<usize>>,
    pub seed: u64,
}

impl BlockPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// 64-bit FNV-1a, used to derive per-item RNG streams from ids.
pub fn stream_for(id: &str) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    id.bytes()
        .fold(OFFSET, |h, b| (h ^ b as u64).wrapping_mul(PRIME))
}

/// Shuffles `indices` with the seeded generator and splits them into `k`
/// contiguous chunks; the first `len % k` chunks get one extra element.
pub fn partition(indices: &[usize], k: usize, seed: u64) -> Result<BlockPartition> {
    partition_stream(indices, k, seed, 0)
}

/// [`partition`] drawing from stream `stream` of the seeded generator.
pub fn partition_stream(
    indices: &[usize],
    k: usize,
    seed: u64,
    stream: u64,
) -> Result<BlockPartition> {
    if k == 0 {
        return Err(DepthError::InvalidParams("K must be >= 1".into()));
    }
    if k > indices.len() {
        return Err(DepthError::InvalidParams(format!(
            "K={k} exceeds the {} available items",
            indices.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut shuffled = indices.to_vec();
    shuffled.shuffle(&mut rng);

    let base = shuffled.len() / k;
    let extra = shuffled.len() % k;
    let mut blocks = Vec::with_capacity(k);
    let mut start = 0;
    for b in 0..k {
        let size = base + usize::from(b < extra);
        blocks.push(shuffled[start..start + size].to_vec());
        start += size;
    }
    Ok(BlockPartition { blocks, seed })
}

/// Resampled depth of item `query`: the mean of its depths against each of
/// `k` blocks drawn from the other items.
pub fn resampled_depth<K: DepthKernel + ?Sized>(
    kernel: &K,
    ids: &[String],
    query: usize,
    k: usize,
    seed: u64,
) -> Result<Scored> {
    let n = kernel.item_count();
    if query >= n {
        return Err(DepthError::IndexOutOfRange {
            index: query,
            len: n,
        });
    }
    let pool: Vec<usize> = (0..n).filter(|&i| i != query).collect();
    let smallest = pool.len() / k.max(1);
    if k == 0 || k > pool.len() || smallest < kernel.min_refs() {
        return Err(DepthError::InvalidParams(format!(
            "K={k} leaves blocks of {smallest} items from a pool of {}; each block needs at least {}",
            pool.len(),
            kernel.min_refs()
        )));
    }
    let split = partition_stream(&pool, k, seed, stream_for(&ids[query]))?;
    let mut total = 0.0;
    let mut evaluations = 0;
    for block in &split.blocks {
        let s = kernel.depth_against(query, block);
        total += s.depth;
        evaluations += s.evaluations;
    }
    Ok(Scored {
        depth: total / k as f64,
        evaluations,
    })
}

/// [`resampled_depth`] for every item.
pub fn resampled_depths<K: DepthKernel + ?Sized>(
    kernel: &K,
    ids: &[String],
    k: usize,
    seed: u64,
) -> Result<Vec<Scored>> {
    (0..kernel.item_count())
        .into_par_iter()
        .map(|q| resampled_depth(kernel, ids, q, k, seed))
        .collect()
}
