//! Execution strategy for filter passes.
//!
//! Row-parallel execution needs the `parallel` feature. Without it
//! [`Execution::Parallel`] quietly runs sequentially, so callers never need
//! to gate on the feature themselves.

/// How a filter pass walks the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rows are split across the current rayon pool.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Whether row-parallel execution was compiled in.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `f` on a dedicated pool of `threads` workers (`0` picks the hardware
/// default). Without the `parallel` feature this just calls `f`.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}
