//! RGB rasters, ITU-T T.871 colour conversion and bit-depth quantization.
//!
//! Every rounding step in this module rounds half-up. The choice is
//! wire-affecting: a receiver that rounds differently reconstructs slightly
//! different sample values from the same packets.

use thiserror::Error;

/// Largest supported edge length: the PDP header stores `dim / 16` in a `u8`.
pub const MAX_DIMENSION: usize = 255 * 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("image dimension {0} is not a multiple of 16")]
    NotMultipleOf16(usize),
    #[error("image dimension {0} outside [16, {MAX_DIMENSION}]")]
    DimensionOutOfRange(usize),
    #[error("pixel buffer holds {got} pixels, expected {expected}")]
    BufferSize { expected: usize, got: usize },
    #[error("bit depth {0} outside [1, 8]")]
    InvalidDepth(u8),
}

/// Rectangular RGB raster stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

fn check_dimension(d: usize) -> Result<(), ImageError> {
    if !d.is_multiple_of(16) {
        return Err(ImageError::NotMultipleOf16(d));
    }
    if !(16..=MAX_DIMENSION).contains(&d) {
        return Err(ImageError::DimensionOutOfRange(d));
    }
    Ok(())
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self, ImageError> {
        check_dimension(width)?;
        check_dimension(height)?;
        if pixels.len() != width * height {
            return Err(ImageError::BufferSize {
                expected: width * height,
                got: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Image filled with a single colour.
    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self, ImageError> {
        Self::new(width, height, vec![rgb; width * height])
    }

    /// Builds an image by evaluating `f(row, col)` for every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [u8; 3],
    ) -> Result<Self, ImageError> {
        let mut pixels = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, rgb: [u8; 3]) {
        self.pixels[row * self.width + col] = rgb;
    }

    /// Passes every pixel through YCbCr at the given depth and back, which is
    /// exactly what a receiver sees for a pixel it got in full colour.
    pub fn quantized(&self, depth: ColorDepth) -> Self {
        let pixels = self
            .pixels
            .iter()
            .map(|&[r, g, b]| {
                let p = rgb_to_ycbcr(r, g, b);
                let q = p.quantize(depth).dequantize(depth);
                ycbcr_to_rgb(q)
            })
            .collect();
        Self {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

/// Bits per channel; total colour depth is three times this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorDepth(u8);

impl ColorDepth {
    pub const FULL: ColorDepth = ColorDepth(8);

    pub fn new(bits_per_channel: u8) -> Result<Self, ImageError> {
        if (1..=8).contains(&bits_per_channel) {
            Ok(Self(bits_per_channel))
        } else {
            Err(ImageError::InvalidDepth(bits_per_channel))
        }
    }

    /// Recovers the depth from the 3-bit header code; the upper five bits are ignored.
    pub fn from_code(code: u8) -> Self {
        Self((code & 0x07) + 1)
    }

    pub fn code(self) -> u8 {
        self.0 - 1
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn total_bits(self) -> u8 {
        3 * self.0
    }

    pub fn max_value(self) -> u8 {
        ((1u16 << self.0) - 1) as u8
    }
}

/// Luma and chroma samples. At full depth each channel is in [0, 255];
/// after quantization each is in [0, 2^b - 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YcbcrPixel {
    pub y: u8,
    pub cb: u8,
    pub cr: u8,
}

impl YcbcrPixel {
    pub fn new(y: u8, cb: u8, cr: u8) -> Self {
        Self { y, cb, cr }
    }

    pub fn quantize(self, depth: ColorDepth) -> Self {
        Self {
            y: quantize_channel(self.y, depth),
            cb: quantize_channel(self.cb, depth),
            cr: quantize_channel(self.cr, depth),
        }
    }

    pub fn dequantize(self, depth: ColorDepth) -> Self {
        Self {
            y: dequantize_channel(self.y, depth),
            cb: dequantize_channel(self.cb, depth),
            cr: dequantize_channel(self.cr, depth),
        }
    }
}

fn round_clamp(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Luma only, used for greyscale samples.
pub fn rgb_to_luma(r: u8, g: u8, b: u8) -> u8 {
    let (r, g, b) = (f64::from(r), f64::from(g), f64::from(b));
    round_clamp(0.299 * r + 0.587 * g + 0.114 * b)
}

pub fn rgb_to_ycbcr(r: u8, g: u8, b: u8) -> YcbcrPixel {
    let (rf, gf, bf) = (f64::from(r), f64::from(g), f64::from(b));
    YcbcrPixel {
        y: rgb_to_luma(r, g, b),
        cb: round_clamp(128.0 - 0.168_736 * rf - 0.331_264 * gf + 0.5 * bf),
        cr: round_clamp(128.0 + 0.5 * rf - 0.418_688 * gf - 0.081_312 * bf),
    }
}

pub fn ycbcr_to_rgb(p: YcbcrPixel) -> [u8; 3] {
    ycbcr_f64_to_rgb(f64::from(p.y), f64::from(p.cb), f64::from(p.cr))
}

/// Inverse transform on real-valued samples, as produced by reconstruction.
pub fn ycbcr_f64_to_rgb(y: f64, cb: f64, cr: f64) -> [u8; 3] {
    let cb = cb - 128.0;
    let cr = cr - 128.0;
    [
        round_clamp(y + 1.402 * cr),
        round_clamp(y - 0.344_136 * cb - 0.714_136 * cr),
        round_clamp(y + 1.772 * cb),
    ]
}

/// `round(v / 255 * (2^b - 1))`, computed in integers so that exact halves
/// round up without floating-point drift.
pub fn quantize_channel(v: u8, depth: ColorDepth) -> u8 {
    let max = u32::from(depth.max_value());
    ((2 * u32::from(v) * max + 255) / 510) as u8
}

/// `round(q / (2^b - 1) * 255)`.
pub fn dequantize_channel(q: u8, depth: ColorDepth) -> u8 {
    let max = u32::from(depth.max_value());
    debug_assert!(u32::from(q) <= max, "sample {q} exceeds depth range");
    ((2 * u32::from(q) * 255 + max) / (2 * max)) as u8
}
