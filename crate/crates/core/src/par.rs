//! Data-parallel helpers. With the `parallel` feature the work fans out over
//! the rayon pool; without it the same closures run sequentially. Results are
//! always returned in index order so output does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps `f` over `0..n` and folds the results with an associative `combine`.
pub fn map_reduce<T, F, C>(n: usize, identity: T, f: F, combine: C) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity, combine)
    }
}

/// Whether this build fans work out to multiple threads.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
