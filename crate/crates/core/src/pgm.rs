//! PGM (portable graymap) reading and writing.
//!
//! Loads binary `P5` and ASCII `P2` files with `maxval <= 255`, including
//! `#` comments anywhere whitespace is allowed in the header. Saving always
//! produces `P5` with `maxval` 255 and no comments.
//!
//! Samples are kept as stored; a file with a smaller `maxval` is not rescaled.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Serializes an image as binary PGM: `P5\n{w} {h}\n255\n` then raw bytes.
pub fn save_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur
        .take(2)
        .ok_or_else(|| Error::format(0, "missing magic number"))?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(Error::format(0, "expected magic number P5 or P2")),
    };

    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;
    let maxval = cur.header_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::format(cur.pos, "image dimensions must be non-zero"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::format(
            cur.pos,
            format!("maxval must be in 1..=255, got {maxval}"),
        ));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::format(cur.pos, "image dimensions overflow"))?;

    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        match cur.peek() {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(Error::format(cur.pos, "expected whitespace after maxval")),
        }
        let start = cur.pos;
        let raster = cur.take(count).ok_or_else(|| {
            Error::format(
                bytes.len(),
                format!(
                    "truncated raster: expected {count} bytes, found {}",
                    bytes.len() - start
                ),
            )
        })?;
        if let Some(i) = raster.iter().position(|&v| v as usize > maxval) {
            return Err(Error::format(start + i, "sample exceeds maxval"));
        }
        raster.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        for _ in 0..count {
            cur.skip_separators();
            let start = cur.pos;
            let v = cur
                .number()
                .ok_or_else(|| Error::format(start, "truncated or malformed ASCII raster"))?;
            if v > maxval {
                return Err(Error::format(start, "sample exceeds maxval"));
            }
            pixels.push(v as u8);
        }
        pixels
    };

    GrayImage::from_pixels(width, height, pixels)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(n)?;
        let s = self.bytes.get(self.pos..end)?;
        self.pos = end;
        Some(s)
    }

    /// Skips whitespace and `#` comments running to end of line.
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
            value = value.checked_mul(10)?.checked_add((b - b'0') as usize)?;
            self.pos += 1;
        }
        (self.pos > start).then_some(value)
    }

    fn header_number(&mut self, what: &str) -> Result<usize> {
        let before = self.pos;
        self.skip_separators();
        if self.pos == before {
            return Err(Error::format(
                self.pos,
                format!("expected whitespace before {what}"),
            ));
        }
        let start = self.pos;
        self.number()
            .ok_or_else(|| Error::format(start, format!("expected decimal {what}")))
    }
}
