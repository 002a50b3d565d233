//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over rayon's pool; without it every call runs sequentially. Results are
//! always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the enumeration loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    /// Parallel when the crate is built with the `parallel` feature.
    #[default]
    Auto,
    Sequential,
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Exec::Sequential)
    }
}

pub fn filter_map<T, U, F>(items: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().filter_map(f).collect();
    }
    let _ = exec;
    items.iter().filter_map(f).collect()
}

pub fn map<T, U, F>(items: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// First (lowest-index) item for which `f` returns `Some`.
pub fn find_first<T, U, F>(items: &[T], exec: Exec, f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Range version of [`find_first`] for enumerations too large to
/// materialize.
pub fn find_first_in_range<U, F>(n: u64, exec: Exec, f: F) -> Option<U>
where
    U: Send,
    F: Fn(u64) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

pub fn filter_map_range<U, F>(n: u64, exec: Exec, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..n).filter_map(f).collect()
}
