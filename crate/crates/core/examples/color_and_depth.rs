// Colour conversion and bit-depth reduction.
//
// `cargo run --example color_and_depth`

use std::error::Error;

use pcsi::image::{dequantize_channel, quantize_channel, rgb_to_ycbcr, ycbcr_to_rgb};
use pcsi::{psnr, ColorDepth};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for rgb in [[255, 0, 0], [0, 255, 0], [0, 0, 255], [200, 200, 200]] {
        let p = rgb_to_ycbcr(rgb[0], rgb[1], rgb[2]);
        println!("rgb {rgb:?} -> ycbcr ({}, {}, {}) -> rgb {:?}", p.y, p.cb, p.cr, ycbcr_to_rgb(p));
    }

    let d4 = ColorDepth::new(4)?;
    let q = quantize_channel(200, d4);
    println!("200 at 4 bits is {q}, which comes back as {}", dequantize_channel(q, d4));

    // how much each depth costs on a smooth scene
    let card = pcsi::synthetic::test_card(64, 64)?;
    for bits in 1..=8 {
        let depth = ColorDepth::new(bits)?;
        let db = psnr(&card.quantized(depth), &card)?;
        println!("{bits} bits/channel ({:>2}-bit colour): {db:6.2} dB", depth.total_bits());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
