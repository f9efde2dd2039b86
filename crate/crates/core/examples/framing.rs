// The same payload as an AX.25 UI frame, an SSDV-style frame and a KISS
// record, plus what a flipped bit does to each.
//
// `cargo run --example framing`

use std::error::Error;

use pcsi::framing::{crc16, decode_ax25, decode_ssdv_style, kiss_unwrap, kiss_wrap, CrcVariant};
use pcsi::{FrameCodec, Framing};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("crc x25 of \"123456789\": {:04x}", crc16(b"123456789", CrcVariant::X25));
    println!("crc ccitt-false: {:04x}", crc16(b"123456789", CrcVariant::CcittFalse));

    let pdp: Vec<u8> = (0..100u8).map(|i| i.wrapping_mul(37)).collect();
    for framing in [Framing::Ax25, Framing::Ssdv] {
        let mut codec = FrameCodec::new(framing);
        codec.callsign = "N0CALL".into();
        let frame = codec.wrap(&pdp)?;
        println!("{framing:?}: {} bytes on air for {} payload bytes", frame.len(), pdp.len());

        let mut hit = frame.clone();
        hit[frame.len() / 2] ^= 0x08;
        println!("  one bit flipped -> {:?}", codec.unwrap(&hit).unwrap_err());

        let kiss = kiss_wrap(&codec.wrap_body(&pdp)?);
        assert_eq!(codec.unwrap_body(&kiss_unwrap(&kiss)?)?, pdp);
        println!("  as a KISS record: {} bytes", kiss.len());
    }

    let frame = FrameCodec::new(Framing::Ax25).wrap(&pdp)?;
    let ax = decode_ax25(&frame)?;
    println!("ax25 from {} to {}", ax.src, ax.dest);
    let ssdv = decode_ssdv_style(&pcsi::framing::encode_ssdv_style("VK3ABC", &pdp)?)?;
    println!("ssdv-style callsign {}", ssdv.callsign);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
