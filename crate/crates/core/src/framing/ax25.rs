//! AX.25 UI frames carrying a payload in the information field.
//!
//! ```text
//! 0x7E | dest (7) | src (7) | digis (7 each) | 0x03 0xF0 | info | FCS (LE) | 0x7E
//! ```

use super::{crc16, CrcVariant, FrameError, FLAG, MAX_INFO_LEN};

pub const MAX_DIGIPEATERS: usize = 8;
const CONTROL_UI: u8 = 0x03;
const PID_NO_L3: u8 = 0xF0;
const ADDR_LEN: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ax25Address {
    callsign: String,
    ssid: u8,
}

impl Ax25Address {
    /// `callsign` is 1 to 6 characters from `A-Z0-9`.
    pub fn new(callsign: &str, ssid: u8) -> Result<Self, FrameError> {
        let valid = (1..=6).contains(&callsign.len())
            && callsign.bytes().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit());
        if !valid {
            return Err(FrameError::Callsign(callsign.to_owned()));
        }
        if ssid > 15 {
            return Err(FrameError::Ssid(ssid));
        }
        Ok(Self {
            callsign: callsign.to_owned(),
            ssid,
        })
    }

    /// Parses `CALL` or `CALL-N`.
    pub fn parse(s: &str) -> Result<Self, FrameError> {
        match s.split_once('-') {
            Some((call, ssid)) => {
                let ssid = ssid.parse().map_err(|_| FrameError::Callsign(s.to_owned()))?;
                Self::new(call, ssid)
            }
            None => Self::new(s, 0),
        }
    }

    pub fn callsign(&self) -> &str {
        &self.callsign
    }

    pub fn ssid(&self) -> u8 {
        self.ssid
    }

    /// Six space-padded characters shifted left one bit, then the SSID byte
    /// `0b011S_SSSE` where `E` marks the last address of the field.
    pub fn encode(&self, last: bool) -> [u8; ADDR_LEN] {
        let mut out = [b' ' << 1; ADDR_LEN];
        for (slot, c) in out.iter_mut().zip(self.callsign.bytes()) {
            *slot = c << 1;
        }
        out[6] = 0x60 | (self.ssid << 1) | u8::from(last);
        out
    }

    /// Returns the address and whether its extension bit was set.
    pub fn decode(raw: &[u8]) -> Result<(Self, bool), FrameError> {
        if raw.len() != ADDR_LEN || raw[..6].iter().any(|b| b & 1 != 0) {
            return Err(FrameError::Address);
        }
        let chars: Vec<u8> = raw[..6].iter().map(|b| b >> 1).collect();
        let call_len = chars.iter().position(|&c| c == b' ').unwrap_or(6);
        if chars[call_len..].iter().any(|&c| c != b' ') {
            return Err(FrameError::Address);
        }
        let callsign = String::from_utf8(chars[..call_len].to_vec()).map_err(|_| FrameError::Address)?;
        let addr = Self::new(&callsign, (raw[6] >> 1) & 0x0F).map_err(|_| FrameError::Address)?;
        Ok((addr, raw[6] & 1 == 1))
    }
}

impl std::fmt::Display for Ax25Address {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ssid == 0 {
            f.write_str(&self.callsign)
        } else {
            write!(f, "{}-{}", self.callsign, self.ssid)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ax25Frame {
    pub dest: Ax25Address,
    pub src: Ax25Address,
    pub digis: Vec<Ax25Address>,
    pub info: Vec<u8>,
}

/// Frame body without flags or FCS, as handed to a KISS TNC.
pub fn encode_ax25_body(
    dest: &Ax25Address,
    src: &Ax25Address,
    digis: &[Ax25Address],
    info: &[u8],
) -> Result<Vec<u8>, FrameError> {
    if digis.len() > MAX_DIGIPEATERS {
        return Err(FrameError::TooManyDigipeaters(digis.len()));
    }
    if info.len() > MAX_INFO_LEN {
        return Err(FrameError::PayloadTooLong(info.len()));
    }
    let mut body = Vec::with_capacity(ADDR_LEN * (2 + digis.len()) + 2 + info.len());
    let addrs: Vec<&Ax25Address> = [dest, src].into_iter().chain(digis).collect();
    for (i, addr) in addrs.iter().enumerate() {
        body.extend_from_slice(&addr.encode(i + 1 == addrs.len()));
    }
    body.extend_from_slice(&[CONTROL_UI, PID_NO_L3]);
    body.extend_from_slice(info);
    Ok(body)
}

pub fn encode_ax25(
    dest: &Ax25Address,
    src: &Ax25Address,
    digis: &[Ax25Address],
    info: &[u8],
) -> Result<Vec<u8>, FrameError> {
    let body = encode_ax25_body(dest, src, digis, info)?;
    let fcs = crc16(&body, CrcVariant::X25);
    let mut frame = Vec::with_capacity(body.len() + 4);
    frame.push(FLAG);
    frame.extend_from_slice(&body);
    frame.extend_from_slice(&fcs.to_le_bytes());
    frame.push(FLAG);
    Ok(frame)
}

pub fn decode_ax25_body(body: &[u8]) -> Result<Ax25Frame, FrameError> {
    let mut addrs = Vec::new();
    let mut pos = 0;
    loop {
        if addrs.len() == 2 + MAX_DIGIPEATERS || pos + ADDR_LEN > body.len() {
            return Err(FrameError::Address);
        }
        let (addr, last) = Ax25Address::decode(&body[pos..pos + ADDR_LEN])?;
        addrs.push(addr);
        pos += ADDR_LEN;
        if last {
            break;
        }
    }
    if addrs.len() < 2 {
        return Err(FrameError::Address);
    }
    if body.len() < pos + 2 {
        return Err(FrameError::TooShort(body.len()));
    }
    if body[pos] != CONTROL_UI || body[pos + 1] != PID_NO_L3 {
        return Err(FrameError::Control(body[pos], body[pos + 1]));
    }
    let info = body[pos + 2..].to_vec();
    if info.len() > MAX_INFO_LEN {
        return Err(FrameError::PayloadTooLong(info.len()));
    }
    let mut addrs = addrs.into_iter();
    let dest = addrs.next().expect("two addresses");
    let src = addrs.next().expect("two addresses");
    Ok(Ax25Frame {
        dest,
        src,
        digis: addrs.collect(),
        info,
    })
}

/// Checks flags and FCS, then parses the body.
pub fn decode_ax25(frame: &[u8]) -> Result<Ax25Frame, FrameError> {
    if frame.len() < 20 {
        return Err(FrameError::TooShort(frame.len()));
    }
    if frame[0] != FLAG || frame[frame.len() - 1] != FLAG {
        return Err(FrameError::MissingFlag);
    }
    let body = &frame[1..frame.len() - 3];
    let carried = u16::from_le_bytes([frame[frame.len() - 3], frame[frame.len() - 2]]);
    let computed = crc16(body, CrcVariant::X25);
    if carried != computed {
        return Err(FrameError::Checksum { carried, computed });
    }
    decode_ax25_body(body)
}
