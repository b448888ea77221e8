//! Seeded fixed-value impulse (salt-and-pepper) noise.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// SplitMix64 generator. Small, fast and identical on every platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` from the top 53 bits.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Impulse injection parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Expected fraction of corrupted pixels.
    pub density: f64,
    /// Share of corrupted pixels set to 255; the rest become 0.
    pub salt_fraction: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(density: f64, salt_fraction: f64, seed: u64) -> Result<Self> {
        let spec = Self {
            density,
            salt_fraction,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_density(density: f64, seed: u64) -> Result<Self> {
        Self::new(density, 0.5, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::invalid(format!(
                "noise density must be in [0, 1], got {}",
                self.density
            )));
        }
        if !(0.0..=1.0).contains(&self.salt_fraction) {
            return Err(Error::invalid(format!(
                "salt fraction must be in [0, 1], got {}",
                self.salt_fraction
            )));
        }
        Ok(())
    }
}

/// Ground truth of which pixels were corrupted, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoiseMask {
    width: usize,
    height: usize,
    flags: Vec<bool>,
}

impl NoiseMask {
    pub(crate) fn from_flags(width: usize, height: usize, flags: Vec<bool>) -> Self {
        debug_assert_eq!(flags.len(), width * height);
        Self {
            width,
            height,
            flags,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn is_set(&self, x: usize, y: usize) -> bool {
        self.flags[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    /// Renders the mask as an image: 255 where corrupted, 0 elsewhere.
    pub fn to_image(&self) -> GrayImage {
        let pixels = self
            .flags
            .iter()
            .map(|&f| if f { 255 } else { 0 })
            .collect();
        GrayImage::from_pixels(self.width, self.height, pixels)
            .expect("mask dimensions come from a valid image")
    }
}

/// Corrupts `img` in row-major order. Each pixel draws `u`; if `u < density`
/// it draws `v` and becomes 255 when `v < salt_fraction`, else 0.
pub fn inject_impulse(img: &GrayImage, spec: &NoiseSpec) -> Result<(GrayImage, NoiseMask)> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let mut pixels = img.pixels().to_vec();
    let mut flags = vec![false; pixels.len()];
    for (p, flag) in pixels.iter_mut().zip(flags.iter_mut()) {
        if rng.next_uniform() < spec.density {
            *p = if rng.next_uniform() < spec.salt_fraction {
                255
            } else {
                0
            };
            *flag = true;
        }
    }
    let noisy = GrayImage::from_pixels(img.width(), img.height(), pixels)?;
    Ok((
        noisy,
        NoiseMask::from_flags(img.width(), img.height(), flags),
    ))
}
