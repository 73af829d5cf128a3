//! Data-parallel helpers with a sequential fallback. With the `parallel`
//! feature disabled, or when the caller asks for sequential execution, every
//! helper runs on the calling thread. Output order never depends on the
//! schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How batch work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool; sequential when built without `parallel`.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Rings smaller than this are always scanned sequentially.
#[cfg(feature = "parallel")]
pub(crate) const PAR_THRESHOLD: u64 = 4096;

/// Indices in `0..n` satisfying `pred`, ascending.
pub(crate) fn filter_indices<F>(n: u64, exec: Execution, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && n >= PAR_THRESHOLD {
        return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
    }
    let _ = exec;
    (0..n).filter(|&i| pred(i)).collect()
}

/// `f` applied to every item, preserving order.
pub(crate) fn map_ordered<T, U, F>(items: Vec<T>, exec: Execution, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
