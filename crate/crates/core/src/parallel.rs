//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the items are distributed over the current
//! rayon pool; without it, or when the pool has a single thread, the plain
//! sequential iterator runs instead. Output order always equals input order,
//! so results are identical for every worker count.

use crate::error::Result;

/// Maps `f` over `items`, returning results in input order.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if rayon::current_num_threads() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Fallible [`par_map`]; the first error in input order wins.
pub fn try_par_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

/// Runs `f` on a dedicated pool with `threads` workers.
///
/// `threads == 0` uses the global pool. Without the `parallel` feature the
/// closure simply runs on the calling thread.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                return pool.install(f);
            }
        }
    }
    let _ = threads;
    f()
}

/// Number of workers `par_map` would use right now.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
