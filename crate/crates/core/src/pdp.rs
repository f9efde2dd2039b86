//! Pseudo-random datagram payload (PDP) v1.0.0.
//!
//! ```text
//! byte 0      image id
//! byte 1      rows / 16
//! byte 2      cols / 16
//! bytes 3..5  packet id, big-endian
//! byte 5      number of full-colour pixels
//! byte 6      depth code: low 3 bits = bits per channel - 1
//! bytes 7..   Y,Cb,Cr of each colour pixel, then Y of each greyscale pixel,
//!             b-bit fields packed MSB-first, zero padded to a byte boundary
//! ```
//!
//! The greyscale count is not transmitted. The receiver derives it from the
//! payload length, so a sender must leave fewer than `b` padding bits.

use thiserror::Error;

use crate::bits::{BitReader, BitWriter};
use crate::image::{ColorDepth, YcbcrPixel};
use crate::sequence::TransmissionPlan;

pub const HEADER_LEN: usize = 7;
pub const MAX_PDP_LEN: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdpError {
    #[error("payload is {0} bytes, shorter than the 7-byte header")]
    TooShort(usize),
    #[error("payload is {0} bytes, longer than {MAX_PDP_LEN}")]
    TooLong(usize),
    #[error("payload is {got} bytes, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("header declares a zero image dimension")]
    ZeroDimension,
    #[error("{n_color} colour pixels need {needed} bits, payload holds {available}")]
    ColorOverflow {
        n_color: usize,
        needed: usize,
        available: usize,
    },
    #[error("padding bits are not zero")]
    NonZeroPadding,
    #[error("expected {expected} {kind} samples, got {got}")]
    SampleCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("sample value {value} exceeds {bits}-bit range")]
    SampleRange { value: u8, bits: u8 },
    #[error("header does not match the transmission plan")]
    PlanMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdpHeader {
    pub image_id: u8,
    pub rows16: u8,
    pub cols16: u8,
    pub packet_id: u16,
    pub n_color: u8,
    pub depth: ColorDepth,
}

impl PdpHeader {
    /// Header for `packet_id` of the image described by `plan`.
    ///
    /// Panics if the plan's dimensions or colour count do not fit the header
    /// fields; plans built from a valid [`crate::Image`] always do.
    pub fn for_plan(plan: &TransmissionPlan, image_id: u8, packet_id: u16) -> Self {
        Self {
            image_id,
            rows16: u8::try_from(plan.rows / 16).expect("rows fit the header"),
            cols16: u8::try_from(plan.cols / 16).expect("cols fit the header"),
            packet_id,
            n_color: u8::try_from(plan.n_color).expect("colour count fits the header"),
            depth: plan.depth,
        }
    }

    pub fn rows(&self) -> usize {
        usize::from(self.rows16) * 16
    }

    pub fn cols(&self) -> usize {
        usize::from(self.cols16) * 16
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let id = self.packet_id.to_be_bytes();
        [
            self.image_id,
            self.rows16,
            self.cols16,
            id[0],
            id[1],
            self.n_color,
            self.depth.code(),
        ]
    }

    pub fn from_bytes(raw: &[u8; HEADER_LEN]) -> Result<Self, PdpError> {
        if raw[1] == 0 || raw[2] == 0 {
            return Err(PdpError::ZeroDimension);
        }
        Ok(Self {
            image_id: raw[0],
            rows16: raw[1],
            cols16: raw[2],
            packet_id: u16::from_be_bytes([raw[3], raw[4]]),
            n_color: raw[5],
            depth: ColorDepth::from_code(raw[6]),
        })
    }
}

/// A decoded payload together with the bytes it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdpPayload {
    pub header: PdpHeader,
    pub color: Vec<YcbcrPixel>,
    pub grey: Vec<u8>,
    pub raw: Vec<u8>,
}

impl PdpPayload {
    /// Plan implied by this payload: dimensions and colour count come from
    /// the header, the greyscale count from the payload length.
    pub fn plan(&self) -> TransmissionPlan {
        TransmissionPlan {
            rows: self.header.rows(),
            cols: self.header.cols(),
            depth: self.header.depth,
            n_color: self.color.len(),
            n_grey: self.grey.len(),
            pdp_len: self.raw.len(),
        }
    }
}

/// Payload length in bytes for the given sample counts.
pub fn encoded_len(n_color: usize, n_grey: usize, depth: ColorDepth) -> usize {
    let b = usize::from(depth.bits());
    HEADER_LEN + (n_color * 3 * b + n_grey * b).div_ceil(8)
}

/// Packs a payload. Samples must already be quantized to the plan's depth.
pub fn encode_pdp(
    plan: &TransmissionPlan,
    header: &PdpHeader,
    color: &[YcbcrPixel],
    grey: &[u8],
) -> Result<Vec<u8>, PdpError> {
    if usize::from(header.n_color) != plan.n_color
        || header.depth != plan.depth
        || header.rows() != plan.rows
        || header.cols() != plan.cols
    {
        return Err(PdpError::PlanMismatch);
    }
    encode_samples(header, color, grey, plan.n_grey)
}

/// Packs a payload without a plan; `n_grey` is taken from `grey.len()`.
/// Useful for building arbitrary (including degenerate) payloads.
pub fn encode_raw(header: &PdpHeader, color: &[YcbcrPixel], grey: &[u8]) -> Result<Vec<u8>, PdpError> {
    encode_samples(header, color, grey, grey.len())
}

fn encode_samples(
    header: &PdpHeader,
    color: &[YcbcrPixel],
    grey: &[u8],
    n_grey: usize,
) -> Result<Vec<u8>, PdpError> {
    if color.len() != usize::from(header.n_color) {
        return Err(PdpError::SampleCount {
            kind: "colour",
            expected: usize::from(header.n_color),
            got: color.len(),
        });
    }
    if grey.len() != n_grey {
        return Err(PdpError::SampleCount {
            kind: "greyscale",
            expected: n_grey,
            got: grey.len(),
        });
    }
    let depth = header.depth;
    let len = encoded_len(color.len(), grey.len(), depth);
    if len > MAX_PDP_LEN {
        return Err(PdpError::TooLong(len));
    }
    let bits = depth.bits();
    let max = depth.max_value();
    let mut writer = BitWriter::with_capacity(len);
    writer.write_bytes(&header.to_bytes());
    let samples = color
        .iter()
        .flat_map(|p| [p.y, p.cb, p.cr])
        .chain(grey.iter().copied());
    for value in samples {
        if value > max {
            return Err(PdpError::SampleRange { value, bits });
        }
        writer.write(u32::from(value), bits);
    }
    let raw = writer.finish();
    debug_assert_eq!(raw.len(), len);
    Ok(raw)
}

/// Parses a payload. When `expected_len` is given the payload must have
/// exactly that length.
pub fn decode_pdp(raw: &[u8], expected_len: Option<usize>) -> Result<PdpPayload, PdpError> {
    if raw.len() < HEADER_LEN {
        return Err(PdpError::TooShort(raw.len()));
    }
    if raw.len() > MAX_PDP_LEN {
        return Err(PdpError::TooLong(raw.len()));
    }
    if let Some(expected) = expected_len {
        if raw.len() != expected {
            return Err(PdpError::LengthMismatch {
                expected,
                got: raw.len(),
            });
        }
    }
    let header_bytes: &[u8; HEADER_LEN] = raw[..HEADER_LEN].try_into().expect("length checked");
    let header = PdpHeader::from_bytes(header_bytes)?;
    let b = usize::from(header.depth.bits());
    let available = 8 * (raw.len() - HEADER_LEN);
    let n_color = usize::from(header.n_color);
    let color_bits = n_color * 3 * b;
    if color_bits > available {
        return Err(PdpError::ColorOverflow {
            n_color,
            needed: color_bits,
            available,
        });
    }
    let n_grey = (available - color_bits) / b;

    let mut reader = BitReader::new(&raw[HEADER_LEN..]);
    let bits = header.depth.bits();
    let mut next = || reader.read(bits).expect("sample bits within payload") as u8;
    let color = (0..n_color)
        .map(|_| {
            let y = next();
            let cb = next();
            let cr = next();
            YcbcrPixel::new(y, cb, cr)
        })
        .collect();
    let grey = (0..n_grey).map(|_| next()).collect();
    if !reader.rest_is_zero() {
        return Err(PdpError::NonZeroPadding);
    }
    Ok(PdpPayload {
        header,
        color,
        grey,
        raw: raw.to_vec(),
    })
}
