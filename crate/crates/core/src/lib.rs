//! Impulse-noise removal for 8-bit grayscale images.
//!
//! The crate provides two filters over a `k x k` window with replicate-edge
//! borders:
//!
//! * [`Method::Fnr`]: a switching median filter. A pixel is treated as noise
//!   only when its gray-level equals the minimum or maximum of its window, and
//!   only those pixels are replaced by the window median.
//! * [`Method::Mf`]: the standard median filter, which replaces every pixel.
//!
//! Medians come from an instrumented introsort ([`sort`]) so that runs can be
//! compared by the number of window sorts and min/max scans they perform.
//! Supporting modules cover seeded salt-and-pepper injection ([`noise`]),
//! PGM I/O ([`pgm`]), MSE/PSNR ([`metrics`]), synthetic fixtures ([`synth`])
//! and a comparison harness ([`bench`]).
//!
//! With the default `parallel` feature, filter passes are split across rows
//! with rayon. Without it every pass runs sequentially; results are
//! bit-identical either way.

pub mod bench;
mod error;
pub mod filter;
pub mod image;
pub mod metrics;
pub mod noise;
pub mod parallel;
pub mod pgm;
pub mod sort;
pub mod synth;

pub use error::{Error, Result};
pub use filter::{
    classify_pixel, detect_noise, fnr_pass, fnr_pass_with, mf_pass, mf_pass_with, run_filter,
    run_filter_with, window_extrema, FilterStats, Method, PixelClass, WindowExtrema,
};
pub use image::{GrayImage, Window, WindowSpec};
pub use metrics::{build_comparison, mse, psnr, ComparisonReport, MethodSummary, QualityReport};
pub use noise::{inject_impulse, NoiseMask, NoiseSpec, SplitMix64};
pub use parallel::Execution;
pub use sort::{median_of, sort_values, SortCounters};
