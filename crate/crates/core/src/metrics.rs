//! Fidelity metrics (MSE, PSNR) and MF-vs-FNR comparison rows.

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::filter::FilterStats;
use crate::image::GrayImage;

/// Peak value for 8-bit samples.
pub const MAX_8BIT: u8 = 255;

fn check_same(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if a.same_dimensions(b) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "image dimensions differ: {}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )))
    }
}

/// Sum of squared differences, accumulated exactly.
pub fn sum_squared_error(a: &GrayImage, b: &GrayImage) -> Result<u64> {
    check_same(a, b)?;
    Ok(a.pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| {
            let d = p.abs_diff(q) as u64;
            d * d
        })
        .sum())
}

/// Mean squared error between two equally sized images.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    Ok(sum_squared_error(a, b)? as f64 / a.len() as f64)
}

/// `10 * log10(max^2 / mse)`, or `+inf` when `mse` is zero.
pub fn psnr_from_mse(mse: f64, max_val: u8) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        let peak = max_val as f64;
        10.0 * (peak * peak / mse).log10()
    }
}

pub fn psnr(a: &GrayImage, b: &GrayImage, max_val: u8) -> Result<f64> {
    Ok(psnr_from_mse(mse(a, b)?, max_val))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr_db: f64,
    pub max_val: u8,
}

impl QualityReport {
    /// Compares `processed` against `reference` with an 8-bit peak.
    pub fn compare(reference: &GrayImage, processed: &GrayImage) -> Result<Self> {
        let mse = mse(reference, processed)?;
        Ok(Self {
            mse,
            psnr_db: psnr_from_mse(mse, MAX_8BIT),
            max_val: MAX_8BIT,
        })
    }
}

/// Quality and work counters for one filtering method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSummary {
    pub quality: QualityReport,
    pub stats: FilterStats,
}

impl MethodSummary {
    pub fn new(original: &GrayImage, output: &GrayImage, stats: FilterStats) -> Result<Self> {
        Ok(Self {
            quality: QualityReport::compare(original, output)?,
            stats,
        })
    }
}

/// MF and FNR results for one noisy image of a clean original.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub width: usize,
    pub height: usize,
    pub density: f64,
    pub corrupted: usize,
    pub noisy: QualityReport,
    pub mf: MethodSummary,
    pub fnr: MethodSummary,
}

impl ComparisonReport {
    /// FNR PSNR minus MF PSNR. Two lossless outputs give 0.
    pub fn psnr_gain_db(&self) -> f64 {
        let (f, m) = (self.fnr.quality.psnr_db, self.mf.quality.psnr_db);
        if f == m {
            0.0
        } else {
            f - m
        }
    }

    /// `1 - fnr_sorts / mf_sorts`; 0 when MF did no sorting.
    pub fn sort_reduction_fraction(&self) -> f64 {
        if self.mf.stats.sorts == 0 {
            0.0
        } else {
            1.0 - self.fnr.stats.sorts as f64 / self.mf.stats.sorts as f64
        }
    }
}

/// Builds one comparison row; every PSNR is measured against `original`.
pub fn build_comparison(
    original: &GrayImage,
    noisy: &GrayImage,
    corrupted: usize,
    density: f64,
    mf: (&GrayImage, FilterStats),
    fnr: (&GrayImage, FilterStats),
) -> Result<ComparisonReport> {
    Ok(ComparisonReport {
        width: original.width(),
        height: original.height(),
        density,
        corrupted,
        noisy: QualityReport::compare(original, noisy)?,
        mf: MethodSummary::new(original, mf.0, mf.1)?,
        fnr: MethodSummary::new(original, fnr.0, fnr.1)?,
    })
}

/// JSON number with a fixed number of decimals; infinities become the
/// strings `"inf"` / `"-inf"` and NaN becomes `null`.
pub(crate) fn fixed(value: f64, places: usize) -> Box<RawValue> {
    let text = if value == f64::INFINITY {
        "\"inf\"".to_string()
    } else if value == f64::NEG_INFINITY {
        "\"-inf\"".to_string()
    } else if value.is_nan() {
        "null".to_string()
    } else {
        let s = format!("{value:.places$}");
        // avoid "-0.0000"
        if s.trim_start_matches('-')
            .bytes()
            .all(|b| b == b'0' || b == b'.')
        {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

impl Serialize for QualityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QualityReport", 3)?;
        st.serialize_field("mse", &fixed(self.mse, 4))?;
        st.serialize_field("psnr_db", &fixed(self.psnr_db, 4))?;
        st.serialize_field("max_val", &self.max_val)?;
        st.end()
    }
}

impl Serialize for MethodSummary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MethodSummary", 9)?;
        st.serialize_field("mse", &fixed(self.quality.mse, 4))?;
        st.serialize_field("psnr_db", &fixed(self.quality.psnr_db, 4))?;
        st.serialize_field("sorts", &self.stats.sorts)?;
        st.serialize_field("minmax_scans", &self.stats.minmax_scans)?;
        st.serialize_field("detected", &self.stats.detected)?;
        st.serialize_field("replacements", &self.stats.replacements)?;
        st.serialize_field("passes", &self.stats.passes)?;
        st.serialize_field("elapsed_ms", &fixed(self.stats.elapsed_ms, 3))?;
        st.end()
    }
}

impl Serialize for ComparisonReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComparisonReport", 9)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("density", &fixed(self.density, 4))?;
        st.serialize_field("corrupted", &self.corrupted)?;
        st.serialize_field("noisy", &self.noisy)?;
        st.serialize_field("mf", &self.mf)?;
        st.serialize_field("fnr", &self.fnr)?;
        st.serialize_field("psnr_gain_db", &fixed(self.psnr_gain_db(), 4))?;
        st.serialize_field(
            "sort_reduction_fraction",
            &fixed(self.sort_reduction_fraction(), 4),
        )?;
        st.end()
    }
}
