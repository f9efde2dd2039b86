// Progressive reconstruction: quality against the share of packets received.
//
// `cargo run --release --example reconstruct -- out_dir` writes PPM files
// to `out_dir` as well.

use std::error::Error;
use std::path::Path;

use pcsi::{ppm, psnr, ColorDepth, Receiver, SolverConfig, TransmissionPlan, Transmitter};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example_in(out_dir: Option<&Path>) -> Result<(), Box<dyn Error>> {
    let image = pcsi::synthetic::test_card(96, 64)?;
    let depth = ColorDepth::new(4)?;
    let plan = TransmissionPlan::fill(64, 96, depth, 256, None, None)?;
    let tx = Transmitter::new(&image, plan, 0)?;
    let mut payloads = tx.full_pass();
    payloads.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    println!("{} packets per pass", payloads.len());

    let mut rx = Receiver::new();
    let mut received = 0;
    for share in [0.1, 0.25, 0.536, 1.0] {
        let target = ((share * payloads.len() as f64).round() as usize).max(1);
        for p in &payloads[received..target] {
            rx.accept_payload(p)?;
        }
        received = target;
        let set = rx.image(0).expect("packets arrived");
        let out = pcsi::reconstruct(set, &SolverConfig::default())?;
        println!(
            "{:>5.1}% of packets ({} luma, {} colour samples): {:.2} dB",
            100.0 * received as f64 / payloads.len() as f64,
            set.luma_count(),
            set.chroma_count(),
            psnr(&out, &image)?
        );
        if let Some(dir) = out_dir {
            ppm::save(&dir.join(format!("reconstruct_{received:03}.ppm")), &out)?;
        }
    }
    println!("quantization alone: {:.2} dB", psnr(&image.quantized(depth), &image)?);
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run_example_in(None)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let dir = std::env::args().nth(1);
    run_example_in(dir.as_deref().map(Path::new))
}
