//! Pseudo-random pixel ordering shared by sender and receiver.
//!
//! Both ends run the same LCG (GCC's `rand()` coefficients, seed 1) through a
//! Fisher-Yates shuffle of the linear pixel indices. A packet carries the
//! `P` consecutive entries starting at `packet_id * P`, wrapping modulo the
//! pixel count. Linear indices are column-major.

use thiserror::Error;

use crate::image::ColorDepth;
use crate::pdp::{HEADER_LEN, MAX_PDP_LEN};

const LCG_MODULUS_MASK: u64 = (1 << 31) - 1;
const LCG_MULTIPLIER: u64 = 1_103_515_245;
const LCG_INCREMENT: u64 = 12_345;

/// Linear congruential generator modulo 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lcg {
    state: u32,
}

impl Lcg {
    pub fn new(seed: u32) -> Self {
        Self {
            state: seed & LCG_MODULUS_MASK as u32,
        }
    }

    pub fn state(&self) -> u32 {
        self.state
    }

    /// Advances the state and returns it.
    pub fn next_value(&mut self) -> u32 {
        let next = (LCG_MULTIPLIER * u64::from(self.state) + LCG_INCREMENT) & LCG_MODULUS_MASK;
        self.state = next as u32;
        self.state
    }
}

impl Default for Lcg {
    fn default() -> Self {
        Self::new(1)
    }
}

/// Transmission order of every pixel of an image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelPermutation {
    order: Vec<u32>,
}

impl PixelPermutation {
    /// Shuffles `0..rows*cols` with a fresh LCG seeded with 1, walking the
    /// array from the top down and drawing `j = lcg mod (i + 1)`.
    pub fn build(rows: usize, cols: usize) -> Self {
        let total = rows * cols;
        assert!(total >= 1, "permutation needs at least one pixel");
        let mut order: Vec<u32> = (0..total as u32).collect();
        let mut lcg = Lcg::default();
        for i in (1..total).rev() {
            let j = lcg.next_value() as usize % (i + 1);
            order.swap(i, j);
        }
        Self { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.order
    }

    /// `count` entries starting at `start`, wrapping around the end.
    pub fn window(&self, start: usize, count: usize) -> impl Iterator<Item = u32> + '_ {
        let total = self.order.len();
        (0..count).map(move |k| self.order[(start + k) % total])
    }
}

/// Column-major linear index to `(row, col)`.
pub fn linear_to_rowcol(k: usize, rows: usize, cols: usize) -> (usize, usize) {
    assert!(k < rows * cols, "pixel index {k} outside {rows}x{cols}");
    (k % rows, k / rows)
}

pub fn rowcol_to_linear(row: usize, col: usize, rows: usize) -> usize {
    col * rows + row
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("a packet must carry at least one pixel")]
    NoPixels,
    #[error("{0} full-colour pixels exceed the 8-bit header field")]
    TooManyColor(usize),
    #[error("pixels need {bits} bits but a {pdp_len}-byte payload only holds {available}")]
    DoesNotFit {
        bits: usize,
        available: usize,
        pdp_len: usize,
    },
    #[error("payload size {0} outside [8, {MAX_PDP_LEN}]")]
    PayloadSize(usize),
    #[error("{padding} padding bits would let the receiver infer extra greyscale pixels (depth {bits} bits)")]
    Underivable { padding: usize, bits: u8 },
    #[error("image needs {0} packets for one pass but packet ids are 16-bit")]
    TooManyPackets(usize),
}

/// Per-image constants shared by every packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransmissionPlan {
    pub rows: usize,
    pub cols: usize,
    pub depth: ColorDepth,
    pub n_color: usize,
    pub n_grey: usize,
    /// Total PDP length including the 7-byte header.
    pub pdp_len: usize,
}

impl TransmissionPlan {
    /// Plan for explicit pixel counts. The payload length is the smallest
    /// that holds the samples, and the counts must leave fewer than `b`
    /// padding bits so the receiver's derivation of `n_grey` is exact.
    pub fn new(
        rows: usize,
        cols: usize,
        depth: ColorDepth,
        n_color: usize,
        n_grey: usize,
    ) -> Result<Self, PlanError> {
        if n_color + n_grey == 0 {
            return Err(PlanError::NoPixels);
        }
        if n_color > usize::from(u8::MAX) {
            return Err(PlanError::TooManyColor(n_color));
        }
        let bits = sample_bits(n_color, n_grey, depth);
        let pdp_len = HEADER_LEN + bits.div_ceil(8);
        if pdp_len > MAX_PDP_LEN {
            return Err(PlanError::DoesNotFit {
                bits,
                available: 8 * (MAX_PDP_LEN - HEADER_LEN),
                pdp_len: MAX_PDP_LEN,
            });
        }
        let padding = 8 * (pdp_len - HEADER_LEN) - bits;
        if padding >= usize::from(depth.bits()) {
            return Err(PlanError::Underivable {
                padding,
                bits: depth.bits(),
            });
        }
        Ok(Self {
            rows,
            cols,
            depth,
            n_color,
            n_grey,
            pdp_len,
        })
    }

    /// Fills a payload of at most `pdp_size` bytes. Missing counts are
    /// chosen as follows: with neither given, colour and greyscale pixels
    /// are split 1:3; with only `n_color` given, greyscale pixels take the
    /// remaining room; with only `n_grey` given, colour pixels take it.
    pub fn fill(
        rows: usize,
        cols: usize,
        depth: ColorDepth,
        pdp_size: usize,
        n_color: Option<usize>,
        n_grey: Option<usize>,
    ) -> Result<Self, PlanError> {
        if !(HEADER_LEN + 1..=MAX_PDP_LEN).contains(&pdp_size) {
            return Err(PlanError::PayloadSize(pdp_size));
        }
        let available = 8 * (pdp_size - HEADER_LEN);
        let b = usize::from(depth.bits());
        let (n_color, n_grey) = match (n_color, n_grey) {
            (Some(c), Some(g)) => (c, g),
            (Some(c), None) => (c, available.saturating_sub(3 * b * c) / b),
            (None, Some(g)) => {
                let c = (available.saturating_sub(b * g) / (3 * b)).min(255);
                (c, g)
            }
            (None, None) => {
                let c = (available / (6 * b)).min(255);
                (c, (available - 3 * b * c) / b)
            }
        };
        let bits = sample_bits(n_color, n_grey, depth);
        if bits > available {
            return Err(PlanError::DoesNotFit {
                bits,
                available,
                pdp_len: pdp_size,
            });
        }
        Self::new(rows, cols, depth, n_color, n_grey)
    }

    pub fn pixels_per_packet(&self) -> usize {
        self.n_color + self.n_grey
    }

    pub fn total_pixels(&self) -> usize {
        self.rows * self.cols
    }

    /// Packets needed to send every pixel at least once.
    pub fn packets_per_pass(&self) -> usize {
        self.total_pixels().div_ceil(self.pixels_per_packet())
    }

    /// Checks that one full pass can be addressed with 16-bit packet ids.
    pub fn check_packet_ids(&self) -> Result<(), PlanError> {
        let n = self.packets_per_pass();
        if n > usize::from(u16::MAX) + 1 {
            return Err(PlanError::TooManyPackets(n));
        }
        Ok(())
    }

    /// Splits the pixels carried by `packet_id` into colour and greyscale
    /// linear indices.
    pub fn packet_slice(
        &self,
        permutation: &PixelPermutation,
        packet_id: u16,
    ) -> (Vec<u32>, Vec<u32>) {
        debug_assert_eq!(permutation.len(), self.total_pixels());
        let p = self.pixels_per_packet();
        let start = (usize::from(packet_id) * p) % permutation.len();
        let mut color: Vec<u32> = permutation.window(start, p).collect();
        let grey = color.split_off(self.n_color);
        (color, grey)
    }
}

fn sample_bits(n_color: usize, n_grey: usize, depth: ColorDepth) -> usize {
    let b = usize::from(depth.bits());
    n_color * 3 * b + n_grey * b
}
