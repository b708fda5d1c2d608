//! Batch evaluation backends.
//!
//! Every estimator in this crate funnels its model calls through
//! [`Execution::map`], which returns results in input order. Reductions are
//! always done afterwards over that ordered buffer, so the thread count can
//! change wall time but never a single bit of the result.

use crate::error::Result;

/// How a batch of independent evaluations is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Plain loop on the calling thread.
    Sequential,
    /// Rayon work-stealing over the global pool. Falls back to
    /// [`Execution::Sequential`] when the `parallel` feature is off.
    #[default]
    Parallel,
}

impl Execution {
    /// True when this build can actually run batches on several threads.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Evaluates `f(0..len)` and returns the values in index order. The first
    /// failing index (lowest index, not first in time) wins.
    pub fn map<T, F>(self, len: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..len).map(f).collect(),
            Execution::Parallel => parallel_map(len, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(len: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    let results: Vec<Result<T>> = (0..len).into_par_iter().map(f).collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(len: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Left-to-right sum. Kept as a named helper so every reduction in the crate
/// uses the same fixed order.
pub(crate) fn ordered_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |acc, v| acc + v)
}

pub(crate) fn ordered_mean(values: &[f64]) -> f64 {
    ordered_sum(values.iter().copied()) / values.len() as f64
}
