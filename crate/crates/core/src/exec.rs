//! Sequential or data-parallel execution of per-node loops.
//!
//! Results never depend on the mode: maps preserve index order and the only
//! reductions offered are order independent (`min`, `max`).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest number of indices handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 2048;

/// `min` that propagates NaN instead of skipping it.
fn nan_min(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .with_min_len(MIN_CHUNK)
                .map(f)
                .collect(),
        }
    }

    /// Minimum of `f` over `0..n`; `+inf` when `n == 0`, NaN if any value is.
    pub fn min<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).fold(f64::INFINITY, nan_min),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .with_min_len(MIN_CHUNK)
                .map(f)
                .reduce(|| f64::INFINITY, nan_min),
        }
    }

    pub fn max<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        -self.min(n, |i| -f(i))
    }
}
