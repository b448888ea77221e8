//! Deterministic synthetic test images.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Gray-level offset of the thin lines and blobs in [`Fixture::Structured`].
pub const STRUCTURE_OFFSET: u8 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// `g(x, y) = round(255 * x / (w - 1))`.
    Ramp,
    /// Brightest at the center, falling linearly to 0 at the corners.
    Radial,
    /// Ramp with eight one-pixel vertical lines and four 2x2 blobs, each
    /// raised by [`STRUCTURE_OFFSET`] and clamped to 255.
    Structured,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Ramp, Fixture::Radial, Fixture::Structured];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Ramp => "ramp",
            Fixture::Radial => "radial",
            Fixture::Structured => "structured",
        }
    }

    pub fn generate(self, width: usize, height: usize) -> Result<GrayImage> {
        match self {
            Fixture::Ramp => ramp(width, height),
            Fixture::Radial => radial(width, height),
            Fixture::Structured => structured(width, height),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown fixture {s:?}, expected one of ramp, radial, structured"
                ))
            })
    }
}

fn ramp_value(x: usize, width: usize) -> u8 {
    if width == 1 {
        0
    } else {
        (255.0 * x as f64 / (width - 1) as f64).round() as u8
    }
}

pub fn ramp(width: usize, height: usize) -> Result<GrayImage> {
    GrayImage::from_fn(width, height, |x, _| ramp_value(x, width))
}

pub fn radial(width: usize, height: usize) -> Result<GrayImage> {
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    let r_max = (cx * cx + cy * cy).sqrt();
    GrayImage::from_fn(width, height, |x, y| {
        if r_max == 0.0 {
            return 255;
        }
        let dx = x as f64 - cx;
        let dy = y as f64 - cy;
        let r = (dx * dx + dy * dy).sqrt();
        (255.0 * (1.0 - r / r_max)).round().clamp(0.0, 255.0) as u8
    })
}

/// Columns of the eight vertical lines: `(16i + 8) * w / 128`, i.e. 8, 24,
/// ..., 120 on a 128-pixel-wide image.
pub fn line_columns(width: usize) -> Vec<usize> {
    let mut cols: Vec<usize> = (0..8).map(|i| (16 * i + 8) * width / 128).collect();
    cols.dedup();
    cols
}

/// Top-left corners of the four 2x2 blobs, at the quarter points.
pub fn blob_corners(width: usize, height: usize) -> [(usize, usize); 4] {
    let (qx, qy) = (width / 4, height / 4);
    let (tx, ty) = (3 * width / 4, 3 * height / 4);
    [(qx, qy), (tx, qy), (qx, ty), (tx, ty)]
}

pub fn structured(width: usize, height: usize) -> Result<GrayImage> {
    let mut img = ramp(width, height)?;
    let raise = |v: u8| v.saturating_add(STRUCTURE_OFFSET);
    for col in line_columns(width) {
        for y in 0..height {
            let v = img.get_pixel(col, y)?;
            img.set_pixel(col, y, raise(v))?;
        }
    }
    for (bx, by) in blob_corners(width, height) {
        for y in by..(by + 2).min(height) {
            for x in bx..(bx + 2).min(width) {
                let base = ramp_value(x, width);
                img.set_pixel(x, y, raise(base))?;
            }
        }
    }
    Ok(img)
}
