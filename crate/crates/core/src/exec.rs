//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over rayon's current
//! pool (callers pick the thread count with `ThreadPool::install`).
//! Without it, or with [`Exec::Sequential`], everything runs in order.
//! Both paths return identical results.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// First `Some` in index order over `0..len`, scanning chunks of `chunk`.
/// `f` receives a half-open range and must return the first hit inside it.
pub fn find_first_in_chunks<T, F>(exec: Exec, len: u64, chunk: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64, u64) -> Option<T> + Sync,
{
    let chunk = chunk.max(1);
    let chunks = len.div_ceil(chunk);
    let run = |c: u64| f(c * chunk, ((c + 1) * chunk).min(len));
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..chunks).into_par_iter().find_map_first(run);
    }
    let _ = exec;
    (0..chunks).find_map(run)
}

/// Maps `f` over `items`, preserving order.
pub fn map_vec<I, T, F>(exec: Exec, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}
