//! KISS host-to-TNC encapsulation.

use thiserror::Error;

const FEND: u8 = 0xC0;
const FESC: u8 = 0xDB;
const TFEND: u8 = 0xDC;
const TFESC: u8 = 0xDD;
const CMD_DATA_PORT0: u8 = 0x00;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KissError {
    #[error("frame is not delimited by FEND")]
    Delimiter,
    #[error("frame is empty")]
    Empty,
    #[error("unsupported command byte {0:#04x}")]
    Command(u8),
    #[error("invalid escape sequence at offset {0}")]
    Escape(usize),
}

/// Wraps a frame body as a data frame on port 0.
pub fn kiss_wrap(body: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(body.len() + 3);
    out.push(FEND);
    out.push(CMD_DATA_PORT0);
    for &b in body {
        match b {
            FEND => out.extend_from_slice(&[FESC, TFEND]),
            FESC => out.extend_from_slice(&[FESC, TFESC]),
            _ => out.push(b),
        }
    }
    out.push(FEND);
    out
}

/// Inverts [`kiss_wrap`] on a single delimited frame.
pub fn kiss_unwrap(frame: &[u8]) -> Result<Vec<u8>, KissError> {
    if frame.len() < 2 || frame[0] != FEND || frame[frame.len() - 1] != FEND {
        return Err(KissError::Delimiter);
    }
    unescape(&frame[1..frame.len() - 1], 1)
}

fn unescape(inner: &[u8], base: usize) -> Result<Vec<u8>, KissError> {
    let (&cmd, data) = inner.split_first().ok_or(KissError::Empty)?;
    if cmd != CMD_DATA_PORT0 {
        return Err(KissError::Command(cmd));
    }
    let mut out = Vec::with_capacity(data.len());
    let mut iter = data.iter().enumerate();
    while let Some((i, &b)) = iter.next() {
        match b {
            FESC => match iter.next() {
                Some((_, &TFEND)) => out.push(FEND),
                Some((_, &TFESC)) => out.push(FESC),
                _ => return Err(KissError::Escape(base + 1 + i)),
            },
            FEND => return Err(KissError::Delimiter),
            _ => out.push(b),
        }
    }
    Ok(out)
}

/// Splits a KISS byte stream into frame bodies. Runs of FEND between frames
/// are skipped; each non-empty frame yields its own result.
pub fn kiss_split(stream: &[u8]) -> Vec<Result<Vec<u8>, KissError>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in stream.split(|&b| b == FEND) {
        if !chunk.is_empty() {
            out.push(unescape(chunk, offset));
        }
        offset += chunk.len() + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_body() {
        let body = b"hello";
        let framed = kiss_wrap(body);
        assert_eq!(framed.len(), body.len() + 3);
        assert_eq!(kiss_unwrap(&framed).unwrap(), body);
    }

    #[test]
    fn escapes() {
        assert_eq!(kiss_wrap(&[0xC0]), vec![0xC0, 0x00, 0xDB, 0xDC, 0xC0]);
        assert_eq!(kiss_wrap(&[0xDB]), vec![0xC0, 0x00, 0xDB, 0xDD, 0xC0]);
        assert_eq!(kiss_unwrap(&[0xC0, 0x00, 0xDB, 0xDC, 0xC0]).unwrap(), vec![0xC0]);
    }

    #[test]
    fn malformed() {
        assert_eq!(kiss_unwrap(&[0x00, 0x01]), Err(KissError::Delimiter));
        assert_eq!(kiss_unwrap(&[0xC0, 0xC0]), Err(KissError::Empty));
        assert_eq!(kiss_unwrap(&[0xC0, 0x01, 0x41, 0xC0]), Err(KissError::Command(1)));
        assert_eq!(kiss_unwrap(&[0xC0, 0x00, 0xDB, 0x41, 0xC0]), Err(KissError::Escape(2)));
        assert_eq!(kiss_unwrap(&[0xC0, 0x00, 0xDB, 0xC0]), Err(KissError::Escape(2)));
    }

    #[test]
    fn stream_split() {
        let mut stream = vec![0xC0, 0xC0];
        stream.extend(kiss_wrap(&[1, 0xC0, 2]));
        stream.extend(kiss_wrap(&[3]));
        stream.extend([0xC0, 0x00, 0xDB, 0x00, 0xC0]);
        let parts = kiss_split(&stream);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].as_deref().unwrap(), &[1, 0xC0, 2]);
        assert_eq!(parts[1].as_deref().unwrap(), &[3]);
        assert!(matches!(parts[2], Err(KissError::Escape(_))));
    }
}
