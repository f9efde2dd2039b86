//! SSDV-style frames: a lighter framing for noisy links.
//!
//! ```text
//! 0x7E | 'v' | callsign, base-40 u32 BE | payload | CRC-16/CCITT-FALSE BE | 0x7E
//! ```
//!
//! The CRC covers the packet identifier, callsign and payload.

use super::{crc16, CrcVariant, FrameError, FLAG, MAX_INFO_LEN};

pub const SSDV_PACKET_ID: u8 = 0x76;
const MAX_BASE40: u32 = 40u32.pow(6);

fn base40_code(c: u8) -> Option<u32> {
    match c {
        b'0'..=b'9' => Some(u32::from(c - b'0') + 1),
        b'A'..=b'Z' => Some(u32::from(c - b'A') + 11),
        b'-' => Some(37),
        b'/' => Some(38),
        b' ' => Some(39),
        _ => None,
    }
}

fn base40_char(code: u32) -> char {
    match code {
        1..=10 => char::from(b'0' + (code - 1) as u8),
        11..=36 => char::from(b'A' + (code - 11) as u8),
        37 => '-',
        38 => '/',
        39 => ' ',
        _ => unreachable!("code {code} is not a character"),
    }
}

/// Packs up to six characters, first character most significant.
/// Code 0 is reserved for padding, so shorter callsigns decode unambiguously.
pub fn base40_encode(callsign: &str) -> Result<u32, FrameError> {
    if callsign.len() > 6 {
        return Err(FrameError::Callsign(callsign.to_owned()));
    }
    callsign.bytes().try_fold(0u32, |acc, c| {
        base40_code(c)
            .map(|code| acc * 40 + code)
            .ok_or_else(|| FrameError::Callsign(callsign.to_owned()))
    })
}

pub fn base40_decode(mut value: u32) -> Result<String, FrameError> {
    if value >= MAX_BASE40 {
        return Err(FrameError::Base40Range(value));
    }
    let mut out = Vec::with_capacity(6);
    while value > 0 {
        let code = value % 40;
        if code == 0 {
            // padding inside the callsign
            return Err(FrameError::Base40Range(value));
        }
        out.push(base40_char(code));
        value /= 40;
    }
    Ok(out.into_iter().rev().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsdvFrame {
    pub callsign: String,
    pub info: Vec<u8>,
}

/// Identifier, callsign and payload, as handed to a KISS TNC.
pub fn encode_ssdv_body(callsign: &str, info: &[u8]) -> Result<Vec<u8>, FrameError> {
    if info.len() > MAX_INFO_LEN {
        return Err(FrameError::PayloadTooLong(info.len()));
    }
    let call = base40_encode(callsign)?;
    let mut body = Vec::with_capacity(5 + info.len());
    body.push(SSDV_PACKET_ID);
    body.extend_from_slice(&call.to_be_bytes());
    body.extend_from_slice(info);
    Ok(body)
}

pub fn encode_ssdv_style(callsign: &str, info: &[u8]) -> Result<Vec<u8>, FrameError> {
    let body = encode_ssdv_body(callsign, info)?;
    let crc = crc16(&body, CrcVariant::CcittFalse);
    let mut frame = Vec::with_capacity(body.len() + 4);
    frame.push(FLAG);
    frame.extend_from_slice(&body);
    frame.extend_from_slice(&crc.to_be_bytes());
    frame.push(FLAG);
    Ok(frame)
}

pub fn decode_ssdv_body(body: &[u8]) -> Result<SsdvFrame, FrameError> {
    if body.len() < 5 {
        return Err(FrameError::TooShort(body.len()));
    }
    if body[0] != SSDV_PACKET_ID {
        return Err(FrameError::PacketId(body[0]));
    }
    let info = &body[5..];
    if info.len() > MAX_INFO_LEN {
        return Err(FrameError::PayloadTooLong(info.len()));
    }
    let call = u32::from_be_bytes(body[1..5].try_into().expect("four bytes"));
    Ok(SsdvFrame {
        callsign: base40_decode(call)?,
        info: info.to_vec(),
    })
}

pub fn decode_ssdv_style(frame: &[u8]) -> Result<SsdvFrame, FrameError> {
    if frame.len() < 9 {
        return Err(FrameError::TooShort(frame.len()));
    }
    if frame[0] != FLAG || frame[frame.len() - 1] != FLAG {
        return Err(FrameError::MissingFlag);
    }
    let body = &frame[1..frame.len() - 3];
    let carried = u16::from_be_bytes([frame[frame.len() - 3], frame[frame.len() - 2]]);
    let computed = crc16(body, CrcVariant::CcittFalse);
    if carried != computed {
        return Err(FrameError::Checksum { carried, computed });
    }
    decode_ssdv_body(body)
}
