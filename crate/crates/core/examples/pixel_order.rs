// The shared pseudo-random pixel order and how packets slice it.
//
// `cargo run --example pixel_order`

use std::error::Error;

use pcsi::sequence::{linear_to_rowcol, Lcg};
use pcsi::{ColorDepth, PixelPermutation, TransmissionPlan};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut lcg = Lcg::default();
    let first: Vec<u32> = (0..4).map(|_| lcg.next_value()).collect();
    println!("lcg from seed 1: {first:?}");

    let (rows, cols) = (16, 32);
    let perm = PixelPermutation::build(rows, cols);
    let head: Vec<(usize, usize)> = perm.as_slice()[..6]
        .iter()
        .map(|&k| linear_to_rowcol(k as usize, rows, cols))
        .collect();
    println!("first pixels sent for a {cols}x{rows} image (row, col): {head:?}");

    let plan = TransmissionPlan::fill(rows, cols, ColorDepth::new(4)?, 64, Some(10), None)?;
    println!(
        "{} colour + {} grey per packet, {} packets per pass",
        plan.n_color,
        plan.n_grey,
        plan.packets_per_pass()
    );
    let mut seen = vec![0u32; rows * cols];
    for id in 0..plan.packets_per_pass() as u16 {
        let (color, grey) = plan.packet_slice(&perm, id);
        for k in color.iter().chain(&grey) {
            seen[*k as usize] += 1;
        }
    }
    let missing = seen.iter().filter(|&&n| n == 0).count();
    let twice = seen.iter().filter(|&&n| n > 1).count();
    println!("one pass: {missing} pixels missing, {twice} sent twice (wrap-around)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
