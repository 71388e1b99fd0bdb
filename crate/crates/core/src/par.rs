//! Order-preserving data-parallel maps.
//!
//! With the `parallel` feature (on by default) [`map_indexed`] fans out over
//! rayon's global pool; without it the same call runs sequentially. Results are
//! always returned in index order, so reductions over them are deterministic
//! regardless of scheduling.

/// Evaluates `f(0), …, f(n-1)` and returns the results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        parallel::map_indexed(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sequential::map_indexed(n, f)
    }
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_indexed(items.len(), |i| f(&items[i]))
}

pub mod sequential {
    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        F: Fn(usize) -> T,
    {
        (0..n).map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use rayon::prelude::*;

    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}
