//! Deterministic test images.

use std::f64::consts::PI;

use crate::image::{Image, ImageError};

/// A smooth scene: colour gradients, a soft-edged disc and a few gentle
/// waves. Mostly compressible in the DCT domain, like a photograph.
pub fn test_card(width: usize, height: usize) -> Result<Image, ImageError> {
    let (w, h) = (width as f64, height as f64);
    Image::from_fn(width, height, |row, col| {
        let (x, y) = (col as f64 / w, row as f64 / h);
        let sky = [70.0 + 90.0 * y, 120.0 + 60.0 * y, 200.0 - 40.0 * y];
        let ground = [90.0 + 40.0 * x, 140.0 - 30.0 * x, 60.0 + 20.0 * x];
        let horizon = 0.6 + 0.05 * (2.0 * PI * x).sin();
        let blend = 1.0 / (1.0 + (-(y - horizon) * 40.0).exp());
        let mut rgb: [f64; 3] = std::array::from_fn(|i| sky[i] * (1.0 - blend) + ground[i] * blend);

        let (dx, dy) = (x - 0.7, y - 0.3);
        let r = (dx * dx + dy * dy).sqrt();
        let sun = 1.0 / (1.0 + ((r - 0.12) * 60.0).exp());
        let sun_rgb = [250.0, 210.0, 90.0];
        for i in 0..3 {
            rgb[i] = rgb[i] * (1.0 - sun) + sun_rgb[i] * sun;
            rgb[i] += 12.0 * (2.0 * PI * (3.0 * x + 2.0 * y)).cos();
        }
        rgb.map(|v| v.round().clamp(0.0, 255.0) as u8)
    })
}
