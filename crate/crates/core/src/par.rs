//! Execution strategy for the data-parallel inner loops.
//!
//! Every helper here is observably deterministic: reductions only combine
//! exact values with commutative, associative operations, and ordered
//! collections keep input order.

/// How a data-parallel loop is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Falls back to [`Strategy::Sequential`] when the `parallel` feature is off.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// True when this strategy actually runs on the rayon pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Maps every item and folds the results with `reduce`.
pub fn map_reduce<T, R, M, F>(strategy: Strategy, items: &[T], identity: fn() -> R, map: M, reduce: F) -> R
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(map).reduce(identity, reduce);
    }
    let _ = strategy;
    items.iter().map(map).fold(identity(), reduce)
}

/// Folds items into per-split accumulators, then combines the accumulators with `reduce`.
pub fn fold_reduce<T, R, F, G>(strategy: Strategy, items: &[T], identity: fn() -> R, fold: F, reduce: G) -> R
where
    T: Sync,
    R: Send,
    F: Fn(R, &T) -> R + Sync + Send,
    G: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().fold(identity, &fold).reduce(identity, reduce);
    }
    let _ = (strategy, reduce);
    items.iter().fold(identity(), fold)
}

/// Maps every item, keeping input order.
pub fn map_collect<T, R, M>(strategy: Strategy, items: &[T], map: M) -> Vec<R>
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(map).collect();
    }
    let _ = strategy;
    items.iter().map(map).collect()
}
