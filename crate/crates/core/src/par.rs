//! Execution strategy for the data-parallel loops (table columns, census,
//! convergence series). Without the `parallel` feature every strategy runs
//! sequentially and produces the same results.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// `jobs == 0` uses the global rayon pool.
    Parallel { jobs: usize },
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel { jobs: 0 }
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub fn with_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            Strategy::Sequential
        } else {
            Strategy::Parallel { jobs }
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Strategy::Parallel { .. })
    }

    /// Runs `op` inside a pool sized for this strategy.
    pub(crate) fn install<R: Send>(self, op: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if let Strategy::Parallel { jobs } = self {
            if jobs > 0 {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                    return pool.install(op);
                }
            }
        }
        op()
    }

    /// `range.map(f).collect()`, order preserved.
    pub(crate) fn map_range<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Number of `k` in `range` satisfying `pred`.
    pub(crate) fn count_range<F>(self, range: Range<u64>, pred: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().filter(|&k| pred(k)).count() as u64;
        }
        range.filter(|&k| pred(k)).count() as u64
    }
}
