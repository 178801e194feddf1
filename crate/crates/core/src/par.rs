//! Execution strategy for the data-parallel inner loops.
//!
//! Every solver computes each output element independently from a fixed,
//! ordered set of inputs and performs scalar reductions sequentially, so the
//! choice of strategy never changes a single bit of the result.

/// How an element-wise pass is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Parallel for inputs of at least [`PARALLEL_THRESHOLD`] elements.
    #[default]
    Auto,
    Sequential,
    /// Parallel regardless of size. Falls back to sequential when the crate
    /// is built without the `parallel` feature.
    Parallel,
}

/// Below this many elements thread dispatch costs more than it saves.
pub const PARALLEL_THRESHOLD: usize = 4096;

impl Execution {
    /// Whether a pass over `n` elements runs on the thread pool.
    pub fn use_threads(self, n: usize) -> bool {
        if !cfg!(feature = "parallel") {
            return false;
        }
        match self {
            Execution::Auto => n >= PARALLEL_THRESHOLD,
            Execution::Sequential => false,
            Execution::Parallel => true,
        }
    }
}

/// Builds `[f(0), f(1), .., f(n - 1)]`.
pub fn map_indices<F>(n: usize, exec: Execution, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.use_threads(n) {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}
