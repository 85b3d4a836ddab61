//! Data-parallel mapping helper.
//!
//! With the default `parallel` feature the indexed map fans out over rayon's
//! global pool; without it the same call degrades to a plain sequential loop.
//! The `_seq` variant is always sequential regardless of features so that
//! benchmarks (and anyone debugging a nondeterminism suspicion) can compare
//! both paths in one build. Results are collected in index order either way,
//! so outputs are byte-for-byte independent of the thread schedule.

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sequential reference path with the same signature as [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Cap the global worker pool at `jobs` threads. Must be called before the
/// first parallel map; fails if the pool already exists. Without the
/// `parallel` feature this is a no-op (everything is sequential anyway).
#[cfg(feature = "parallel")]
pub fn configure_jobs(jobs: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn configure_jobs(_jobs: usize) -> Result<(), String> {
    Ok(())
}
