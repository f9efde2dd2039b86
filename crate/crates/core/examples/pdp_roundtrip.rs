// Build one payload by hand, decode it, and armor it as base91 text.
//
// `cargo run --example pdp_roundtrip`

use std::error::Error;

use pcsi::{base91, decode_pdp, encode_pdp, ColorDepth, PdpHeader, TransmissionPlan, YcbcrPixel};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let depth = ColorDepth::new(4)?;
    let plan = TransmissionPlan::new(240, 320, depth, 25, 75)?;
    println!("25 colour + 75 grey at 4 bits: {} byte payload", plan.pdp_len);

    let header = PdpHeader::for_plan(&plan, 3, 1234);
    let color: Vec<YcbcrPixel> = (0..25).map(|i| YcbcrPixel::new(i % 16, 8, 15 - i % 16)).collect();
    let grey: Vec<u8> = (0..75).map(|i| (i * 7 % 16) as u8).collect();
    let raw = encode_pdp(&plan, &header, &color, &grey)?;
    let hex: Vec<String> = raw[..10].iter().map(|b| format!("{b:02x}")).collect();
    println!("first bytes: {}", hex.join(" "));

    let back = decode_pdp(&raw, None)?;
    assert_eq!(back.color, color);
    assert_eq!(back.grey, grey);
    println!(
        "decoded image {} packet {}: {}x{}, {} colour / {} grey",
        back.header.image_id,
        back.header.packet_id,
        back.header.cols(),
        back.header.rows(),
        back.color.len(),
        back.grey.len()
    );

    let text = base91::encode_bytes(&raw);
    println!("base91 ({} chars): {}...", text.len(), &text[..24]);
    assert_eq!(base91::decode_bytes(&text)?, raw);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
