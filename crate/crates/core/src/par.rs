//! Data-parallel map that falls back to a sequential loop when the
//! `parallel` feature is off.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Applies `f` to every item, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// [`map`] on a dedicated pool of `threads` workers (at least one).
#[cfg(feature = "parallel")]
pub fn map_bounded<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(|| map(items, f)),
        Err(_) => map_sequential(items, f),
    }
}

/// [`map`] on a dedicated pool of `threads` workers (at least one).
#[cfg(not(feature = "parallel"))]
pub fn map_bounded<T, R, F>(items: &[T], _threads: usize, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_sequential(items, f)
}

/// Sequential map, available regardless of features for comparison.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether [`map`] runs on the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
