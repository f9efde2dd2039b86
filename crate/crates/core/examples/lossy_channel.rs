// Push framed packets through the simulated channel and see what the
// receiver makes of them.
//
// `cargo run --example lossy_channel`

use std::error::Error;

use pcsi::channel::frame_survival;
use pcsi::{apply_channel, ChannelModel, FrameCodec, Framing, Receiver, TransmissionPlan, Transmitter};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let image = pcsi::synthetic::test_card(128, 96)?;
    let plan = TransmissionPlan::fill(96, 128, pcsi::ColorDepth::new(4)?, 256, None, None)?;
    let tx = Transmitter::new(&image, plan, 1)?;
    let codec = FrameCodec::new(Framing::Ax25);
    let frames: Vec<Vec<u8>> = tx.full_pass().iter().map(|p| codec.wrap(p)).collect::<Result<_, _>>()?;

    for (ber, loss) in [(0.0, 0.0), (1e-4, 0.0), (3e-4, 0.0), (1e-4, 0.3)] {
        let model = ChannelModel::new(ber, loss, 42)?;
        let out = apply_channel(&frames, &model);
        let mut rx = Receiver::new();
        for o in out.iter().filter(|o| !o.dropped) {
            let _ = rx.accept_frame(&codec, &o.bytes);
        }
        let expected = (1.0 - loss) * frame_survival(276, ber);
        println!(
            "ber {ber:.0e} loss {loss}: {}/{} accepted (expect {:.0}), rejected {:?}",
            rx.accepted(),
            frames.len(),
            expected * frames.len() as f64,
            rx.rejected()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
