//! Byte-level framing of payloads for lossy links.
//!
//! Frames are produced at the byte level, the way a KISS host hands them to
//! a TNC: HDLC bit stuffing and line coding are the modem's business.

mod ax25;
mod crc;
mod kiss;
mod ssdv;

use thiserror::Error;

pub use ax25::{decode_ax25, decode_ax25_body, encode_ax25, encode_ax25_body, Ax25Address, Ax25Frame, MAX_DIGIPEATERS};
pub use crc::{crc16, CrcVariant};
pub use kiss::{kiss_split, kiss_unwrap, kiss_wrap, KissError};
pub use ssdv::{
    base40_decode, base40_encode, decode_ssdv_body, decode_ssdv_style, encode_ssdv_body, encode_ssdv_style, SsdvFrame,
    SSDV_PACKET_ID,
};

pub const FLAG: u8 = 0x7E;
/// Largest payload either framing carries.
pub const MAX_INFO_LEN: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("invalid callsign {0:?}")]
    Callsign(String),
    #[error("SSID {0} outside [0, 15]")]
    Ssid(u8),
    #[error("{0} digipeaters exceed the limit of {MAX_DIGIPEATERS}")]
    TooManyDigipeaters(usize),
    #[error("payload of {0} bytes exceeds {MAX_INFO_LEN}")]
    PayloadTooLong(usize),
    #[error("base-40 value {0} is out of range")]
    Base40Range(u32),
    #[error("frame of {0} bytes is too short")]
    TooShort(usize),
    #[error("missing HDLC flag")]
    MissingFlag,
    #[error("checksum mismatch: frame carries {carried:#06x}, computed {computed:#06x}")]
    Checksum { carried: u16, computed: u16 },
    #[error("malformed address field")]
    Address,
    #[error("unexpected control/PID bytes {0:#04x} {1:#04x}")]
    Control(u8, u8),
    #[error("unexpected packet identifier {0:#04x}")]
    PacketId(u8),
}

/// Framing kinds understood by the stream tools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Framing {
    Ax25,
    Ssdv,
    /// Bare payloads with no framing or checksum.
    Raw,
}

impl Framing {
    /// Bytes added around a payload with no digipeaters.
    pub fn overhead(self) -> usize {
        match self {
            Framing::Ax25 => 20,
            Framing::Ssdv => 9,
            Framing::Raw => 0,
        }
    }
}
