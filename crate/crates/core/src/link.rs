//! Payload-to-frame wrapping as configured for a session: framing kind,
//! addresses, and optional base91 armor of the payload.

use std::fmt;

use crate::base91;
use crate::framing::{
    decode_ax25, decode_ax25_body, decode_ssdv_body, decode_ssdv_style, encode_ax25, encode_ax25_body,
    encode_ssdv_body, encode_ssdv_style, Ax25Address, FrameError, Framing,
};

/// Why a received record did not yield a payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectReason {
    /// Container or frame structure unreadable.
    Framing,
    /// Frame checksum mismatch.
    Crc,
    /// Base91 armor invalid.
    Armor,
    /// PDP header or length invalid.
    Header,
    /// PDP padding bits not zero.
    Padding,
    /// Payload disagrees with earlier payloads of the same image.
    Inconsistent,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::Framing => "framing",
            RejectReason::Crc => "crc",
            RejectReason::Armor => "armor",
            RejectReason::Header => "header",
            RejectReason::Padding => "padding",
            RejectReason::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl std::error::Error for RejectReason {}

impl From<&FrameError> for RejectReason {
    fn from(e: &FrameError) -> Self {
        match e {
            FrameError::Checksum { .. } => RejectReason::Crc,
            _ => RejectReason::Framing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameCodec {
    pub framing: Framing,
    pub base91: bool,
    pub dest: Ax25Address,
    pub src: Ax25Address,
    pub digis: Vec<Ax25Address>,
    /// Callsign for SSDV-style frames.
    pub callsign: String,
}

impl FrameCodec {
    /// AX.25 to and from `PCSI`, the general-use alias.
    pub fn new(framing: Framing) -> Self {
        let pcsi = Ax25Address::new("PCSI", 0).expect("valid callsign");
        Self {
            framing,
            base91: false,
            dest: pcsi.clone(),
            src: pcsi,
            digis: Vec::new(),
            callsign: "PCSI".to_owned(),
        }
    }

    fn info(&self, pdp: &[u8]) -> Vec<u8> {
        if self.base91 {
            base91::encode_bytes(pdp).into_bytes()
        } else {
            pdp.to_vec()
        }
    }

    fn dearmor(&self, info: Vec<u8>) -> Result<Vec<u8>, RejectReason> {
        if !self.base91 {
            return Ok(info);
        }
        let text = String::from_utf8(info).map_err(|_| RejectReason::Armor)?;
        base91::decode_bytes(&text).map_err(|_| RejectReason::Armor)
    }

    /// Complete on-air frame (flags and checksum included).
    pub fn wrap(&self, pdp: &[u8]) -> Result<Vec<u8>, FrameError> {
        let info = self.info(pdp);
        match self.framing {
            Framing::Ax25 => encode_ax25(&self.dest, &self.src, &self.digis, &info),
            Framing::Ssdv => encode_ssdv_style(&self.callsign, &info),
            Framing::Raw => Ok(info),
        }
    }

    /// Frame body for a KISS TNC, which adds flags and checksum itself.
    pub fn wrap_body(&self, pdp: &[u8]) -> Result<Vec<u8>, FrameError> {
        let info = self.info(pdp);
        match self.framing {
            Framing::Ax25 => encode_ax25_body(&self.dest, &self.src, &self.digis, &info),
            Framing::Ssdv => encode_ssdv_body(&self.callsign, &info),
            Framing::Raw => Ok(info),
        }
    }

    /// Recovers the payload from a complete frame.
    pub fn unwrap(&self, frame: &[u8]) -> Result<Vec<u8>, RejectReason> {
        let info = match self.framing {
            Framing::Ax25 => decode_ax25(frame).map(|f| f.info),
            Framing::Ssdv => decode_ssdv_style(frame).map(|f| f.info),
            Framing::Raw => Ok(frame.to_vec()),
        }
        .map_err(|e| RejectReason::from(&e))?;
        self.dearmor(info)
    }

    /// Recovers the payload from a KISS frame body.
    pub fn unwrap_body(&self, body: &[u8]) -> Result<Vec<u8>, RejectReason> {
        let info = match self.framing {
            Framing::Ax25 => decode_ax25_body(body).map(|f| f.info),
            Framing::Ssdv => decode_ssdv_body(body).map(|f| f.info),
            Framing::Raw => Ok(body.to_vec()),
        }
        .map_err(|e| RejectReason::from(&e))?;
        self.dearmor(info)
    }
}
