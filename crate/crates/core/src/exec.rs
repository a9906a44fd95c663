//! Order-preserving data parallelism with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Mode::Parallel`] runs on the
//! rayon pool; without it both modes run sequentially. Every helper returns
//! results in input order, so callers see the same output in either mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    /// Whether this mode actually uses worker threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Mode::Parallel
    }
}

pub fn map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// The lowest-index item for which `f` returns `Some`, with its index.
pub fn find_first<T, R, F>(mode: Mode, items: &[T], f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().enumerate().find_map_first(|(i, t)| f(t).map(|r| (i, r)));
    }
    let _ = mode;
    items.iter().enumerate().find_map(|(i, t)| f(t).map(|r| (i, r)))
}
