//! Worker pool helpers. Results always come back in input order, so the
//! thread count never changes what a computation returns.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Applies `f` to each item on a pool of `threads` workers (0 means
/// rayon's default) and returns the results in input order.
pub fn map_ordered<I, T, R, F>(threads: usize, items: I, f: F) -> Result<Vec<R>>
where
    I: IntoIterator<Item = T>,
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    let items: Vec<T> = items.into_iter().collect();
    if threads == 1 {
        return Ok(items.into_iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| items.into_par_iter().map(f).collect()))
}
