// Net efficiency against payload length and the best length per BER.
//
// `cargo run --example link_budget -- 20` (argument: observed loss in percent)

use std::error::Error;

use pcsi::channel::efficiency_curve;
use pcsi::{ber_from_loss, net_efficiency, optimal_pdp, Framing};

pub fn run_example_with(loss_percent: f64) -> Result<(), Box<dyn Error>> {
    for ber in [1e-5, 1e-4, 1e-3, 1e-2] {
        let ax = optimal_pdp(ber, Framing::Ax25)?;
        let ss = optimal_pdp(ber, Framing::Ssdv)?;
        println!(
            "ber {ber:.0e}: ax25 best {:>3} bytes ({:.3}), ssdv best {:>3} bytes ({:.3}), ratio {:.2}",
            ax.pdp_len,
            ax.efficiency,
            ss.pdp_len,
            ss.efficiency,
            ss.efficiency / ax.efficiency
        );
    }

    // a coarse text plot of one curve
    let curve = efficiency_curve(1e-3, Framing::Ssdv)?;
    for p in curve.iter().step_by(24) {
        let bar = "#".repeat((p.efficiency * 100.0) as usize);
        println!("{:>4} {bar}", p.pdp_len);
    }

    let ber = ber_from_loss(loss_percent)?;
    let best = optimal_pdp(ber, Framing::Ax25)?;
    println!(
        "{loss_percent}% loss of full AX.25 frames means ber {ber:.3e}; use {} byte payloads ({:.3} vs {:.3} at 256)",
        best.pdp_len,
        best.efficiency,
        net_efficiency(256, ber, Framing::Ax25)?
    );
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run_example_with(50.0)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args().nth(1) {
        Some(arg) => run_example_with(arg.parse()?),
        None => run_example(),
    }
}
