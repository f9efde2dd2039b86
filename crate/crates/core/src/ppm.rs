//! Binary PPM (P6) reading and writing, 8 bits per channel.

use thiserror::Error;

use crate::image::{Image, ImageError};

#[derive(Debug, Error)]
pub enum PpmError {
    #[error("not a binary PPM (P6) file")]
    Magic,
    #[error("malformed PPM header")]
    Header,
    #[error("unsupported maximum value {0}, only 255 is supported")]
    MaxValue(u32),
    #[error("pixel data is {got} bytes, expected {expected}")]
    Data { expected: usize, got: usize },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn write_ppm(image: &Image) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.pixels().len() * 3);
    out.extend_from_slice(header.as_bytes());
    out.extend(image.pixels().iter().flatten());
    out
}

pub fn read_ppm(data: &[u8]) -> Result<Image, PpmError> {
    if !data.starts_with(b"P6") {
        return Err(PpmError::Magic);
    }
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for field in &mut fields {
        // whitespace and comments
        loop {
            match data.get(pos) {
                Some(c) if c.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while data.get(pos).is_some_and(|&c| c != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while data.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&data[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PpmError::Header)?;
    }
    // exactly one whitespace byte separates the header from the raster
    if !data.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(PpmError::Header);
    }
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(PpmError::MaxValue(maxval));
    }
    let (width, height) = (width as usize, height as usize);
    let raster = &data[pos..];
    let expected = width * height * 3;
    if raster.len() != expected {
        return Err(PpmError::Data {
            expected,
            got: raster.len(),
        });
    }
    let pixels = raster.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect();
    Ok(Image::new(width, height, pixels)?)
}

pub fn load(path: &std::path::Path) -> Result<Image, PpmError> {
    read_ppm(&std::fs::read(path)?)
}

pub fn save(path: &std::path::Path, image: &Image) -> Result<(), PpmError> {
    std::fs::write(path, write_ppm(image))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let img = Image::from_fn(32, 16, |r, c| [r as u8, c as u8, (r * c) as u8]).unwrap();
        let bytes = write_ppm(&img);
        let back = read_ppm(&bytes).unwrap();
        assert_eq!(back, img);
        assert_eq!(write_ppm(&back), bytes);
    }

    #[test]
    fn header_with_comments() {
        let mut data = b"P6 # made by hand\n16\t16 # size\n255\n".to_vec();
        data.extend(vec![7u8; 16 * 16 * 3]);
        assert_eq!(read_ppm(&data).unwrap().get(3, 3), [7, 7, 7]);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(read_ppm(b"P3\n16 16\n255\n"), Err(PpmError::Magic)));
        assert!(matches!(read_ppm(b"P6\n16 x\n255\n"), Err(PpmError::Header)));
        assert!(matches!(read_ppm(b"P6\n16 16\n65535\n"), Err(PpmError::MaxValue(65535))));
        assert!(matches!(read_ppm(b"P6\n16 16\n255\n\x00"), Err(PpmError::Data { .. })));
        let mut data = b"P6\n17 16\n255\n".to_vec();
        data.extend(vec![0u8; 17 * 16 * 3]);
        assert!(matches!(read_ppm(&data), Err(PpmError::Image(ImageError::NotMultipleOf16(17)))));
    }
}
