//! Printable-ASCII armor for payloads.
//!
//! Bits are consumed MSB-first in 13-bit groups, each written as two
//! characters `v / 91 + 33` and `v % 91 + 33`. A tail of 7 to 12 bits is
//! right-padded to 13 bits; a tail of 1 to 6 bits is right-padded to 6 bits
//! and written as a single character `v + 33`. Output stays within
//! ASCII 33..=123.

use thiserror::Error;

use crate::bits::{BitReader, BitWriter};

const OFFSET: u8 = 33;
const LAST: u8 = OFFSET + 90;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Base91Error {
    #[error("character {0:#04x} at offset {1} is outside the base91 alphabet")]
    BadChar(u8, usize),
    #[error("{chars} characters cannot carry {bits} bits")]
    Length { chars: usize, bits: usize },
    #[error("character pair at offset {0} decodes to {1}, above 13 bits")]
    GroupOverflow(usize, u32),
    #[error("padding bits are not zero")]
    NonZeroPadding,
    #[error("no byte length encodes to {0} characters")]
    NoByteLength(usize),
}

/// Number of characters produced for `bits` input bits.
pub fn encoded_len(bits: usize) -> usize {
    let tail = match bits % 13 {
        0 => 0,
        1..=6 => 1,
        _ => 2,
    };
    2 * (bits / 13) + tail
}

/// Encodes the first `bit_len` bits of `bytes`.
pub fn encode(bytes: &[u8], bit_len: usize) -> String {
    assert!(bit_len <= bytes.len() * 8, "bit length exceeds input");
    let mut reader = BitReader::new(bytes);
    let mut out = String::with_capacity(encoded_len(bit_len));
    let mut left = bit_len;
    let push_pair = |v: u32, out: &mut String| {
        out.push(char::from((v / 91) as u8 + OFFSET));
        out.push(char::from((v % 91) as u8 + OFFSET));
    };
    while left >= 13 {
        let v = reader.read(13).expect("bits available");
        push_pair(v, &mut out);
        left -= 13;
    }
    if left >= 7 {
        let v = reader.read(left as u8).expect("bits available") << (13 - left);
        push_pair(v, &mut out);
    } else if left > 0 {
        let v = reader.read(left as u8).expect("bits available") << (6 - left);
        out.push(char::from(v as u8 + OFFSET));
    }
    out
}

/// Encodes whole bytes.
pub fn encode_bytes(bytes: &[u8]) -> String {
    encode(bytes, bytes.len() * 8)
}

/// Decodes `text` back into `bit_len` bits, returned MSB-first and zero
/// padded to a whole number of bytes.
pub fn decode(text: &str, bit_len: usize) -> Result<Vec<u8>, Base91Error> {
    let chars = text.as_bytes();
    if let Some(pos) = chars.iter().position(|c| !(OFFSET..=LAST).contains(c)) {
        return Err(Base91Error::BadChar(chars[pos], pos));
    }
    if encoded_len(bit_len) != chars.len() {
        return Err(Base91Error::Length {
            chars: chars.len(),
            bits: bit_len,
        });
    }
    let mut writer = BitWriter::with_capacity(bit_len.div_ceil(8));
    let mut left = bit_len;
    let mut pos = 0;
    while left > 0 {
        if left >= 7 {
            let v = u32::from(chars[pos] - OFFSET) * 91 + u32::from(chars[pos + 1] - OFFSET);
            if v >= 1 << 13 {
                return Err(Base91Error::GroupOverflow(pos, v));
            }
            let take = left.min(13);
            let pad = 13 - take;
            if v & ((1 << pad) - 1) != 0 {
                return Err(Base91Error::NonZeroPadding);
            }
            writer.write(v >> pad, take as u8);
            left -= take;
            pos += 2;
        } else {
            let v = u32::from(chars[pos] - OFFSET);
            if v >= 1 << 6 {
                return Err(Base91Error::GroupOverflow(pos, v));
            }
            let pad = 6 - left;
            if v & ((1 << pad) - 1) != 0 {
                return Err(Base91Error::NonZeroPadding);
            }
            writer.write(v >> pad, left as u8);
            left = 0;
            pos += 1;
        }
    }
    Ok(writer.finish())
}

/// Decodes text produced by [`encode_bytes`], inferring the byte length
/// from the character count.
pub fn decode_bytes(text: &str) -> Result<Vec<u8>, Base91Error> {
    let chars = text.len();
    // encoded_len(8n) is strictly increasing in n, so at most one n matches
    let n = (0..=chars)
        .find(|&n| encoded_len(8 * n) == chars)
        .ok_or(Base91Error::NoByteLength(chars))?;
    decode(text, 8 * n)
}
