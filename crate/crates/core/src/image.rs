//! Grayscale raster and square neighborhood windows.

use crate::error::{Error, Result};

/// An 8-bit grayscale image stored row-major with the origin at the top-left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Creates a `width x height` image with every pixel set to `fill`.
    pub fn new(width: usize, height: usize, fill: u8) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            pixels: vec![fill; width * height],
        })
    }

    /// Wraps an existing row-major pixel buffer.
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::invalid(format!(
                "pixel buffer holds {} values, expected {}x{} = {}",
                pixels.len(),
                width,
                height,
                width * height
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of pixels, `width * height`.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; images have at least one pixel.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn same_dimensions(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn get_pixel(&self, x: usize, y: usize) -> Result<u8> {
        self.check_bounds(x, y)?;
        Ok(self.pixels[y * self.width + x])
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, value: u8) -> Result<()> {
        self.check_bounds(x, y)?;
        self.pixels[y * self.width + x] = value;
        Ok(())
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    /// Returns the window centered at `(x, y)`, clamping neighbors that fall
    /// outside the image onto the nearest edge pixel.
    pub fn extract_window(&self, x: usize, y: usize, spec: WindowSpec) -> Result<Window> {
        self.check_bounds(x, y)?;
        let mut values = Vec::with_capacity(spec.area());
        self.window_into(x, y, spec, &mut values);
        Ok(Window {
            values,
            center_index: spec.center_index(),
        })
    }

    /// Fills `buf` with the clamped neighborhood of an in-bounds `(x, y)`.
    pub(crate) fn window_into(&self, x: usize, y: usize, spec: WindowSpec, buf: &mut Vec<u8>) {
        debug_assert!(x < self.width && y < self.height);
        let r = spec.radius() as isize;
        let max_x = self.width as isize - 1;
        let max_y = self.height as isize - 1;
        buf.clear();
        for dy in -r..=r {
            let sy = (y as isize + dy).clamp(0, max_y) as usize;
            let row = self.row(sy);
            for dx in -r..=r {
                let sx = (x as isize + dx).clamp(0, max_x) as usize;
                buf.push(row[sx]);
            }
        }
    }

    fn check_bounds(&self, x: usize, y: usize) -> Result<()> {
        if x < self.width && y < self.height {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                x,
                y,
                width: self.width,
                height: self.height,
            })
        }
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::invalid(format!(
            "image dimensions must be non-zero, got {width}x{height}"
        )));
    }
    width
        .checked_mul(height)
        .map(|_| ())
        .ok_or_else(|| Error::invalid("image dimensions overflow"))
}

/// Side length of a square filter window. Always odd and at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowSpec {
    k: usize,
}

impl WindowSpec {
    pub const DEFAULT: WindowSpec = WindowSpec { k: 3 };

    pub fn new(k: usize) -> Result<Self> {
        if k < 3 || k.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "window side must be an odd integer >= 3, got {k}"
            )));
        }
        Ok(Self { k })
    }

    pub fn side(self) -> usize {
        self.k
    }

    pub fn radius(self) -> usize {
        self.k / 2
    }

    /// Number of values in a window, `k * k`.
    pub fn area(self) -> usize {
        self.k * self.k
    }

    pub fn center_index(self) -> usize {
        (self.area() - 1) / 2
    }
}

impl Default for WindowSpec {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// The gray-levels of a `k x k` neighborhood in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    values: Vec<u8>,
    center_index: usize,
}

impl Window {
    /// Builds a window from raw values; the length must be an odd square `k * k`
    /// with `k >= 3`.
    pub fn from_values(values: Vec<u8>) -> Result<Self> {
        let k = (values.len() as f64).sqrt().round() as usize;
        if k * k != values.len() {
            return Err(Error::invalid(format!(
                "window of {} values is not a square",
                values.len()
            )));
        }
        let spec = WindowSpec::new(k)?;
        Ok(Self {
            values,
            center_index: spec.center_index(),
        })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn center_index(&self) -> usize {
        self.center_index
    }

    pub fn center(&self) -> u8 {
        self.values[self.center_index]
    }
}
