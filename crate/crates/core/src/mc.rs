//! Seeded parallel Monte Carlo execution.
//!
//! Trials are cut into fixed chunks of [`CHUNK_TRIALS`]; chunk `c` draws from
//! stream `c` of the root seed. Results come back in chunk order, so the
//! output does not depend on the number of worker threads.

use rayon::prelude::*;

use crate::rng::SimRng;

pub const CHUNK_TRIALS: usize = 1 << 14;

/// Runs `work(rng, count)` once per chunk and returns the chunk results in
/// chunk order.
pub fn run_chunks<T, F>(trials: usize, root_seed: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut SimRng, usize) -> T + Sync + Send,
{
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            let mut rng = SimRng::stream(root_seed, c as u64);
            work(&mut rng, count)
        })
        .collect()
}

/// `trials` independent draws, in a thread-count independent order.
pub fn draw_values<F>(trials: usize, root_seed: u64, draw: F) -> Vec<f64>
where
    F: Fn(&mut SimRng) -> f64 + Sync + Send,
{
    run_chunks(trials, root_seed, |rng, count| (0..count).map(|_| draw(rng)).collect::<Vec<_>>())
        .concat()
}
