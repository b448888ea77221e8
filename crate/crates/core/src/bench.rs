//! MF vs FNR comparison harness.
//!
//! For each noise density the clean input is corrupted with seeded impulse
//! noise, filtered by both methods, and summarized in a [`ComparisonReport`].
//! The JSON layout is tagged with [`SCHEMA`] and documented in
//! `docs/report-schema.md`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::{run_filter_with, Method};
use crate::image::{GrayImage, WindowSpec};
use crate::metrics::{build_comparison, fixed, ComparisonReport};
use crate::noise::{inject_impulse, NoiseMask, NoiseSpec};
use crate::parallel::Execution;

pub const SCHEMA: &str = "irdenoise-report/1";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub window: WindowSpec,
    pub passes: usize,
    pub densities: Vec<f64>,
    pub salt_fraction: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            window: WindowSpec::DEFAULT,
            passes: 2,
            densities: vec![0.2, 0.3],
            salt_fraction: 0.5,
            seed: 42,
            execution: Execution::default(),
        }
    }
}

/// Images produced for one density.
#[derive(Debug, Clone)]
pub struct DensityRun {
    pub density: f64,
    pub noisy: GrayImage,
    pub mask: NoiseMask,
    pub mf: GrayImage,
    pub fnr: GrayImage,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub report: BenchReport,
    pub runs: Vec<DensityRun>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub window: usize,
    pub passes: usize,
    pub seed: u64,
    pub salt_fraction: f64,
    pub rows: Vec<ComparisonReport>,
}

impl Serialize for BenchReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BenchReport", 6)?;
        st.serialize_field("schema", SCHEMA)?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("passes", &self.passes)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("salt_fraction", &fixed(self.salt_fraction, 4))?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Runs the comparison on a clean image. Every density uses the same seed.
pub fn run_bench(original: &GrayImage, config: &BenchConfig) -> Result<BenchOutcome> {
    if config.densities.is_empty() {
        return Err(Error::invalid("at least one noise density is required"));
    }
    let mut rows = Vec::with_capacity(config.densities.len());
    let mut runs = Vec::with_capacity(config.densities.len());
    for &density in &config.densities {
        let spec = NoiseSpec::new(density, config.salt_fraction, config.seed)?;
        let (noisy, mask) = inject_impulse(original, &spec)?;
        let (mf, mf_stats) = run_filter_with(
            &noisy,
            config.window,
            Method::Mf,
            config.passes,
            config.execution,
        )?;
        let (fnr, fnr_stats) = run_filter_with(
            &noisy,
            config.window,
            Method::Fnr,
            config.passes,
            config.execution,
        )?;
        rows.push(build_comparison(
            original,
            &noisy,
            mask.count(),
            density,
            (&mf, mf_stats),
            (&fnr, fnr_stats),
        )?);
        runs.push(DensityRun {
            density,
            noisy,
            mask,
            mf,
            fnr,
        });
    }
    Ok(BenchOutcome {
        report: BenchReport {
            window: config.window.side(),
            passes: config.passes,
            seed: config.seed,
            salt_fraction: config.salt_fraction,
            rows,
        },
        runs,
    })
}

/// File tag for a density, e.g. `d20` for 0.2 and `d125` for 0.125.
pub fn density_tag(density: f64) -> String {
    let pct = format!("{:.4}", density * 100.0);
    let pct = pct.trim_end_matches('0').trim_end_matches('.');
    format!("d{}", pct.replace('.', "p"))
}
