//! Extrema-gated median filtering (FNR) and the standard median filter (MF).
//!
//! Every pass reads windows from an immutable input snapshot and writes a
//! fresh output buffer, so the result does not depend on visiting order and
//! rows can be processed in parallel.

use std::time::Instant;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::image::{GrayImage, Window, WindowSpec};
use crate::metrics::fixed;
use crate::noise::NoiseMask;
use crate::parallel::Execution;
use crate::sort::{median_in_place, SortCounters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Replace only pixels that equal their window minimum or maximum.
    Fnr,
    /// Replace every pixel with its window median.
    Mf,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fnr => "fnr",
            Method::Mf => "mf",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fnr" => Ok(Method::Fnr),
            "mf" => Ok(Method::Mf),
            other => Err(Error::invalid(format!(
                "unknown method {other:?}, expected fnr or mf"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowExtrema {
    pub g_min: u8,
    pub g_max: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelClass {
    Noisy,
    Signal,
}

/// Work counters accumulated over one or more passes.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FilterStats {
    pub minmax_scans: u64,
    pub sorts: u64,
    /// Pixels whose output differs from their input in some pass.
    pub replacements: u64,
    /// Pixels classified noisy. Always 0 for the median filter.
    pub detected: u64,
    /// Wall-clock time of the run. Informational only.
    pub elapsed_ms: f64,
    pub passes: u64,
}

impl FilterStats {
    /// Adds the counters of `other`; elapsed time is summed as well.
    pub fn merge(&mut self, other: &FilterStats) {
        self.minmax_scans += other.minmax_scans;
        self.sorts += other.sorts;
        self.replacements += other.replacements;
        self.detected += other.detected;
        self.elapsed_ms += other.elapsed_ms;
        self.passes += other.passes;
    }

    /// Same counters, ignoring `elapsed_ms`.
    pub fn same_counts(&self, other: &FilterStats) -> bool {
        FilterStats {
            elapsed_ms: 0.0,
            ..*self
        } == FilterStats {
            elapsed_ms: 0.0,
            ..*other
        }
    }
}

impl Serialize for FilterStats {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FilterStats", 6)?;
        st.serialize_field("minmax_scans", &self.minmax_scans)?;
        st.serialize_field("sorts", &self.sorts)?;
        st.serialize_field("replacements", &self.replacements)?;
        st.serialize_field("detected", &self.detected)?;
        st.serialize_field("passes", &self.passes)?;
        st.serialize_field("elapsed_ms", &fixed(self.elapsed_ms, 3))?;
        st.end()
    }
}

/// Exact minimum and maximum of a window in one scan. Counts one min/max scan.
pub fn window_extrema(w: &Window, stats: &mut FilterStats) -> WindowExtrema {
    stats.minmax_scans += 1;
    scan_extrema(w.values())
}

fn scan_extrema(values: &[u8]) -> WindowExtrema {
    let mut g_min = u8::MAX;
    let mut g_max = u8::MIN;
    for &v in values {
        g_min = g_min.min(v);
        g_max = g_max.max(v);
    }
    WindowExtrema { g_min, g_max }
}

/// A pixel is noisy exactly when its gray-level equals the window minimum or
/// maximum. Flat windows therefore classify their center as noisy.
pub fn classify_pixel(w: &Window, e: WindowExtrema) -> PixelClass {
    classify(w.center(), e)
}

#[inline]
fn classify(center: u8, e: WindowExtrema) -> PixelClass {
    if center == e.g_min || center == e.g_max {
        PixelClass::Noisy
    } else {
        PixelClass::Signal
    }
}

/// Per-thread tallies for a block of rows.
#[derive(Default)]
struct RowTally {
    minmax_scans: u64,
    detected: u64,
    replacements: u64,
    sorts: SortCounters,
}

impl RowTally {
    fn merge(mut self, other: RowTally) -> RowTally {
        self.minmax_scans += other.minmax_scans;
        self.detected += other.detected;
        self.replacements += other.replacements;
        self.sorts.merge(&other.sorts);
        self
    }
}

fn filter_row(
    img: &GrayImage,
    spec: WindowSpec,
    method: Method,
    y: usize,
    out: &mut [u8],
    scratch: &mut Vec<u8>,
) -> RowTally {
    let mut t = RowTally::default();
    let input = img.row(y);
    for (x, (dst, &src)) in out.iter_mut().zip(input).enumerate() {
        img.window_into(x, y, spec, scratch);
        let value = match method {
            Method::Mf => median_in_place(scratch, &mut t.sorts),
            Method::Fnr => {
                t.minmax_scans += 1;
                match classify(src, scan_extrema(scratch)) {
                    PixelClass::Signal => src,
                    PixelClass::Noisy => {
                        t.detected += 1;
                        median_in_place(scratch, &mut t.sorts)
                    }
                }
            }
        };
        if value != src {
            t.replacements += 1;
        }
        *dst = value;
    }
    t
}

fn run_pass(
    img: &GrayImage,
    spec: WindowSpec,
    method: Method,
    exec: Execution,
) -> (GrayImage, RowTally) {
    let width = img.width();
    let mut out = vec![0u8; img.len()];
    let tally = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            out.par_chunks_mut(width)
                .enumerate()
                .map_init(
                    || Vec::with_capacity(spec.area()),
                    |scratch, (y, row)| filter_row(img, spec, method, y, row, scratch),
                )
                .reduce(RowTally::default, RowTally::merge)
        }
        _ => {
            let mut scratch = Vec::with_capacity(spec.area());
            out.chunks_mut(width)
                .enumerate()
                .map(|(y, row)| filter_row(img, spec, method, y, row, &mut scratch))
                .fold(RowTally::default(), RowTally::merge)
        }
    };
    let out = GrayImage::from_pixels(width, img.height(), out).expect("same dimensions as input");
    (out, tally)
}

fn pass_with_stats(
    img: &GrayImage,
    spec: WindowSpec,
    method: Method,
    exec: Execution,
    stats: &mut FilterStats,
) -> GrayImage {
    let (out, t) = run_pass(img, spec, method, exec);
    stats.minmax_scans += t.minmax_scans;
    stats.sorts += t.sorts.sorts_performed;
    stats.detected += t.detected;
    stats.replacements += t.replacements;
    stats.passes += 1;
    out
}

/// One FNR pass: every pixel gets a min/max scan, and only noisy pixels are
/// sorted and replaced by their window median.
pub fn fnr_pass(img: &GrayImage, spec: WindowSpec, stats: &mut FilterStats) -> GrayImage {
    fnr_pass_with(img, spec, Execution::default(), stats)
}

pub fn fnr_pass_with(
    img: &GrayImage,
    spec: WindowSpec,
    exec: Execution,
    stats: &mut FilterStats,
) -> GrayImage {
    pass_with_stats(img, spec, Method::Fnr, exec, stats)
}

/// One standard median pass: every pixel is sorted and replaced.
pub fn mf_pass(img: &GrayImage, spec: WindowSpec, stats: &mut FilterStats) -> GrayImage {
    mf_pass_with(img, spec, Execution::default(), stats)
}

pub fn mf_pass_with(
    img: &GrayImage,
    spec: WindowSpec,
    exec: Execution,
    stats: &mut FilterStats,
) -> GrayImage {
    pass_with_stats(img, spec, Method::Mf, exec, stats)
}

/// Applies `passes` passes of `method`, each consuming the previous output.
pub fn run_filter(
    img: &GrayImage,
    spec: WindowSpec,
    method: Method,
    passes: usize,
) -> Result<(GrayImage, FilterStats)> {
    run_filter_with(img, spec, method, passes, Execution::default())
}

pub fn run_filter_with(
    img: &GrayImage,
    spec: WindowSpec,
    method: Method,
    passes: usize,
    exec: Execution,
) -> Result<(GrayImage, FilterStats)> {
    if passes == 0 {
        return Err(Error::invalid("at least one pass is required"));
    }
    let start = Instant::now();
    let mut stats = FilterStats::default();
    let mut current = pass_with_stats(img, spec, method, exec, &mut stats);
    for _ in 1..passes {
        current = pass_with_stats(&current, spec, method, exec, &mut stats);
    }
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((current, stats))
}

/// Per-pixel FNR classification of `img`, as a mask (true = noisy).
pub fn detect_noise(img: &GrayImage, spec: WindowSpec) -> NoiseMask {
    let mut scratch = Vec::with_capacity(spec.area());
    let mut flags = Vec::with_capacity(img.len());
    for y in 0..img.height() {
        for (x, &center) in img.row(y).iter().enumerate() {
            img.window_into(x, y, spec, &mut scratch);
            flags.push(classify(center, scan_extrema(&scratch)) == PixelClass::Noisy);
        }
    }
    NoiseMask::from_flags(img.width(), img.height(), flags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(values: &[u8]) -> Window {
        Window::from_values(values.to_vec()).unwrap()
    }

    #[test]
    fn extrema_examples() {
        let mut s = FilterStats::default();
        let e = window_extrema(&win(&[1, 2, 3, 4, 5, 6, 7, 8, 9]), &mut s);
        assert_eq!((e.g_min, e.g_max), (1, 9));
        let e = window_extrema(&win(&[7; 9]), &mut s);
        assert_eq!((e.g_min, e.g_max), (7, 7));
        let e = window_extrema(&win(&[12, 200, 45, 0, 88, 13, 255, 7, 99]), &mut s);
        assert_eq!((e.g_min, e.g_max), (0, 255));
        assert_eq!(s.minmax_scans, 3);
    }

    #[test]
    fn classification_examples() {
        let mut s = FilterStats::default();
        // center (index 4) is 9 = g_max
        let w = win(&[1, 2, 3, 4, 9, 6, 7, 8, 5]);
        assert_eq!(
            classify_pixel(&w, window_extrema(&w, &mut s)),
            PixelClass::Noisy
        );
        let w = win(&[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(
            classify_pixel(&w, window_extrema(&w, &mut s)),
            PixelClass::Signal
        );
        let w = win(&[7; 9]);
        assert_eq!(
            classify_pixel(&w, window_extrema(&w, &mut s)),
            PixelClass::Noisy
        );
    }

    #[test]
    fn flat_image_is_detected_but_unchanged() {
        let img = GrayImage::new(5, 4, 77).unwrap();
        let mut s = FilterStats::default();
        let out = fnr_pass(&img, WindowSpec::DEFAULT, &mut s);
        assert_eq!(out, img);
        assert_eq!(s.detected, 20);
        assert_eq!(s.sorts, 20);
        assert_eq!(s.replacements, 0);
        assert_eq!(s.minmax_scans, 20);
        assert_eq!(s.passes, 1);
    }

    #[test]
    fn mf_counts_every_pixel() {
        let img = GrayImage::from_fn(7, 3, |x, y| (x * 31 + y * 7) as u8).unwrap();
        let mut s = FilterStats::default();
        mf_pass(&img, WindowSpec::new(5).unwrap(), &mut s);
        assert_eq!(s.sorts, 21);
        assert_eq!(s.minmax_scans, 0);
        assert_eq!(s.detected, 0);
    }

    #[test]
    fn run_filter_rejects_zero_passes() {
        let img = GrayImage::new(2, 2, 0).unwrap();
        assert!(run_filter(&img, WindowSpec::DEFAULT, Method::Fnr, 0).is_err());
    }

    #[test]
    fn single_pass_matches_run_filter() {
        let img = GrayImage::from_fn(9, 9, |x, y| ((x * 53 + y * 97) % 256) as u8).unwrap();
        for method in [Method::Fnr, Method::Mf] {
            let mut s = FilterStats::default();
            let single = pass_with_stats(
                &img,
                WindowSpec::DEFAULT,
                method,
                Execution::Sequential,
                &mut s,
            );
            let (out, stats) = run_filter(&img, WindowSpec::DEFAULT, method, 1).unwrap();
            assert_eq!(out, single);
            assert!(stats.same_counts(&s));
        }
    }

    #[test]
    fn method_parsing() {
        assert_eq!("fnr".parse::<Method>().unwrap(), Method::Fnr);
        assert_eq!("MF".parse::<Method>().unwrap(), Method::Mf);
        assert!("median".parse::<Method>().is_err());
    }

    #[test]
    fn detect_noise_flags_extrema() {
        let img = GrayImage::from_pixels(3, 3, vec![1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        let mask = detect_noise(&img, WindowSpec::DEFAULT);
        // center is interior signal
        assert!(!mask.is_set(1, 1));
        // corners take part in their own clamped windows as extrema
        assert!(mask.is_set(0, 0));
        assert!(mask.is_set(2, 2));
    }
}
