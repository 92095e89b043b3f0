//! Deterministic per-chunk random streams.
//!
//! Work is cut into fixed-size chunks; chunk `k` draws from a ChaCha8 stream
//! seeded with the user seed and stream id `k`. The chunking never depends on
//! the worker count, so merged output is identical however many threads run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) const CHUNK: usize = 4096;

pub(crate) fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Generates `count` items, `f(rng, global_index)` per item, in order.
pub(crate) fn generate<T, F>(count: usize, seed: u64, workers: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|k| {
                let mut rng = chunk_rng(seed, k);
                let start = k * CHUNK;
                let end = (start + CHUNK).min(count);
                (start..end).map(|i| f(&mut rng, i)).collect::<Vec<T>>()
            })
            .collect::<Vec<_>>()
    };
    let nested = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    nested.into_iter().flatten().collect()
}
