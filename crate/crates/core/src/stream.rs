//! Packet stream files.
//!
//! * binary: each record is a 2-byte big-endian length followed by the frame
//! * hex: one lowercase hex frame per line
//! * kiss: KISS data frames carrying frame bodies (no flags or checksum)

use std::path::Path;

use thiserror::Error;

use crate::framing::{kiss_split, kiss_wrap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamFormat {
    Binary,
    Hex,
    Kiss,
}

impl StreamFormat {
    /// Guesses from the file extension: `.hex`/`.txt` are hex, `.kiss` is
    /// KISS, anything else binary.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("hex" | "txt") => StreamFormat::Hex,
            Some("kiss") => StreamFormat::Kiss,
            _ => StreamFormat::Binary,
        }
    }
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("record of {0} bytes does not fit a 16-bit length prefix")]
    RecordTooLong(usize),
    #[error("stream truncated inside record {0}")]
    Truncated(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A record read from a stream; malformed ones are kept so they can be counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Record {
    Frame(Vec<u8>),
    Malformed(String),
}

pub fn write_records<B: AsRef<[u8]>>(records: &[B], format: StreamFormat) -> Result<Vec<u8>, StreamError> {
    let mut out = Vec::new();
    for r in records {
        let r = r.as_ref();
        match format {
            StreamFormat::Binary => {
                let len = u16::try_from(r.len()).map_err(|_| StreamError::RecordTooLong(r.len()))?;
                out.extend_from_slice(&len.to_be_bytes());
                out.extend_from_slice(r);
            }
            StreamFormat::Hex => {
                out.extend(to_hex(r).bytes());
                out.push(b'\n');
            }
            StreamFormat::Kiss => out.extend(kiss_wrap(r)),
        }
    }
    Ok(out)
}

pub fn read_records(data: &[u8], format: StreamFormat) -> Result<Vec<Record>, StreamError> {
    match format {
        StreamFormat::Binary => {
            let mut out = Vec::new();
            let mut rest = data;
            while !rest.is_empty() {
                if rest.len() < 2 {
                    return Err(StreamError::Truncated(out.len()));
                }
                let len = usize::from(u16::from_be_bytes([rest[0], rest[1]]));
                if rest.len() < 2 + len {
                    return Err(StreamError::Truncated(out.len()));
                }
                out.push(Record::Frame(rest[2..2 + len].to_vec()));
                rest = &rest[2 + len..];
            }
            Ok(out)
        }
        StreamFormat::Hex => Ok(String::from_utf8_lossy(data)
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| match from_hex(l) {
                Some(bytes) => Record::Frame(bytes),
                None => Record::Malformed(format!("bad hex line {l:?}")),
            })
            .collect()),
        StreamFormat::Kiss => Ok(kiss_split(data)
            .into_iter()
            .map(|r| match r {
                Ok(body) => Record::Frame(body),
                Err(e) => Record::Malformed(e.to_string()),
            })
            .collect()),
    }
}

pub fn write_file<B: AsRef<[u8]>>(path: &Path, records: &[B], format: StreamFormat) -> Result<(), StreamError> {
    std::fs::write(path, write_records(records, format)?)?;
    Ok(())
}

pub fn read_file(path: &Path, format: StreamFormat) -> Result<Vec<Record>, StreamError> {
    read_records(&std::fs::read(path)?, format)
}

fn to_hex(bytes: &[u8]) -> String {
    use std::fmt::Write;
    bytes.iter().fold(String::with_capacity(bytes.len() * 2), |mut s, b| {
        write!(s, "{b:02x}").expect("write to string");
        s
    })
}

fn from_hex(s: &str) -> Option<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| s.get(i..i + 2).and_then(|h| u8::from_str_radix(h, 16).ok()))
        .collect()
}
