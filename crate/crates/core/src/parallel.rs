//! Order-preserving parallel map with a configurable worker cap.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "WILLIS_HOMOG_THREADS";

/// Worker count from [`THREADS_ENV`], defaulting to the available parallelism.
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

/// Maps `f` over `items` on at most `threads` workers. Output order matches
/// input order, so results do not depend on scheduling.
pub fn par_map<T, R, F>(items: &[T], threads: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_any_worker_count() {
        let items: Vec<u64> = (0..1000).collect();
        let one = par_map(&items, 1, |x| x * x).unwrap();
        let many = par_map(&items, 7, |x| x * x).unwrap();
        assert_eq!(one, many);
        assert_eq!(many[999], 998001);
    }
}
