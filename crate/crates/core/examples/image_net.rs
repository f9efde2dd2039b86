// Two stations sending different images on one channel; the receiver
// keeps them apart by image id.
//
// `cargo run --release --example image_net`

use std::error::Error;

use pcsi::{psnr, ColorDepth, Image, Receiver, SolverConfig, TransmissionPlan, Transmitter};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let depth = ColorDepth::new(4)?;
    let a = pcsi::synthetic::test_card(64, 48)?;
    let b = Image::from_fn(32, 32, |r, c| [(r * 8) as u8, 128, (c * 8) as u8])?;
    let ta = Transmitter::new(&a, TransmissionPlan::fill(48, 64, depth, 200, None, None)?, 10)?;
    let tb = Transmitter::new(&b, TransmissionPlan::fill(32, 32, depth, 120, None, None)?, 11)?;

    let mut rx = Receiver::new();
    for (pa, pb) in ta.payloads(6).zip(tb.payloads(6)) {
        rx.accept_payload(&pa)?;
        rx.accept_payload(&pb)?;
    }
    for (id, result) in rx.reconstruct_all(&SolverConfig::default()) {
        let out = result?;
        let original = if id == 10 { &a } else { &b };
        let set = rx.image(id).expect("listed");
        println!(
            "image {id}: {}x{}, {} of {} packets, {:.2} dB",
            out.width(),
            out.height(),
            set.packet_ids().len(),
            set.plan().packets_per_pass(),
            psnr(&out, original)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
