//! Lossy channel simulation and link-budget arithmetic.
//!
//! The simulator draws from ChaCha8 seeded with a `u64`, independent of the
//! pixel-order LCG, so a given seed reproduces the same drops and bit flips
//! on every platform.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::framing::Framing;
use crate::pdp::{HEADER_LEN, MAX_PDP_LEN};

/// Bits of a 256-byte-payload AX.25 frame without flags, used to map
/// packet loss to bit error rate.
pub const REFERENCE_FRAME_BITS: f64 = 2192.0;

/// Smallest PDP with at least one byte of pixel data.
pub const MIN_PDP_LEN: usize = HEADER_LEN + 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("bit error rate {0} outside [0, 1)")]
    Ber(f64),
    #[error("loss probability {0} outside [0, 1]")]
    Loss(f64),
    #[error("packet loss {0}% outside [0, 100)")]
    LossPercent(f64),
    #[error("payload length {0} below {MIN_PDP_LEN}")]
    PayloadLen(usize),
    #[error("framing {0:?} has no efficiency model")]
    Framing(Framing),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    ber: f64,
    loss: f64,
    seed: u64,
}

impl ChannelModel {
    pub fn new(ber: f64, loss: f64, seed: u64) -> Result<Self, ChannelError> {
        if !(0.0..1.0).contains(&ber) {
            return Err(ChannelError::Ber(ber));
        }
        if !(0.0..=1.0).contains(&loss) {
            return Err(ChannelError::Loss(loss));
        }
        Ok(Self { ber, loss, seed })
    }

    pub fn ber(&self) -> f64 {
        self.ber
    }

    pub fn loss(&self) -> f64 {
        self.loss
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// What happened to one frame on the way through the channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelOutput {
    pub bytes: Vec<u8>,
    pub dropped: bool,
    pub flipped_bits: usize,
}

/// Drops each frame with probability `loss`, then flips every bit of the
/// survivors independently with probability `ber`. Dropped frames keep
/// their original bytes.
pub fn apply_channel<B: AsRef<[u8]>>(frames: &[B], model: &ChannelModel) -> Vec<ChannelOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    frames
        .iter()
        .map(|frame| {
            let mut bytes = frame.as_ref().to_vec();
            // always consume one draw so drop decisions don't shift with BER
            let dropped = rng.random::<f64>() < model.loss;
            let mut flipped_bits = 0;
            if !dropped && model.ber > 0.0 {
                for byte in &mut bytes {
                    for bit in 0..8 {
                        if rng.random::<f64>() < model.ber {
                            *byte ^= 1 << bit;
                            flipped_bits += 1;
                        }
                    }
                }
            }
            ChannelOutput {
                bytes,
                dropped,
                flipped_bits,
            }
        })
        .collect()
}

/// Fraction of transmitted bits that arrive as pixel data.
pub fn net_efficiency(pdp_len: usize, ber: f64, framing: Framing) -> Result<f64, ChannelError> {
    if pdp_len < MIN_PDP_LEN {
        return Err(ChannelError::PayloadLen(pdp_len));
    }
    if !(0.0..1.0).contains(&ber) {
        return Err(ChannelError::Ber(ber));
    }
    let overhead = match framing {
        Framing::Ax25 | Framing::Ssdv => framing.overhead() as f64,
        Framing::Raw => return Err(ChannelError::Framing(framing)),
    };
    let x = pdp_len as f64;
    // every transmitted bit, including flags and FCS, must survive
    let exposed_bits = 8.0 * (x + overhead);
    Ok((x - HEADER_LEN as f64) / (x + overhead) * (1.0 - ber).powf(exposed_bits))
}

/// Bit error rate implied by a packet loss percentage on 256-byte AX.25 frames.
pub fn ber_from_loss(loss_percent: f64) -> Result<f64, ChannelError> {
    if !(0.0..100.0).contains(&loss_percent) {
        return Err(ChannelError::LossPercent(loss_percent));
    }
    Ok(1.0 - (1.0 - loss_percent / 100.0).powf(1.0 / REFERENCE_FRAME_BITS))
}

/// Probability that a frame of `bytes` arrives without a single flipped bit.
pub fn frame_survival(bytes: usize, ber: f64) -> f64 {
    (1.0 - ber).powf(8.0 * bytes as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyPoint {
    pub pdp_len: usize,
    pub framing: Framing,
    pub ber: f64,
    pub efficiency: f64,
}

/// Efficiency for every payload length in `[8, 256]`.
pub fn efficiency_curve(ber: f64, framing: Framing) -> Result<Vec<EfficiencyPoint>, ChannelError> {
    (MIN_PDP_LEN..=MAX_PDP_LEN)
        .map(|pdp_len| {
            net_efficiency(pdp_len, ber, framing).map(|efficiency| EfficiencyPoint {
                pdp_len,
                framing,
                ber,
                efficiency,
            })
        })
        .collect()
}

/// Best payload length by exhaustive scan; ties go to the longer payload.
pub fn optimal_pdp(ber: f64, framing: Framing) -> Result<EfficiencyPoint, ChannelError> {
    let curve = efficiency_curve(ber, framing)?;
    Ok(curve
        .into_iter()
        .reduce(|best, p| if p.efficiency >= best.efficiency { p } else { best })
        .expect("non-empty scan range"))
}

pub fn framing_name(framing: Framing) -> &'static str {
    match framing {
        Framing::Ax25 => "ax25",
        Framing::Ssdv => "ssdv",
        Framing::Raw => "raw",
    }
}

/// CSV with columns `framing,pdp_len,ber,efficiency`.
pub fn curves_csv(bers: &[f64], framings: &[Framing]) -> Result<String, ChannelError> {
    let mut out = String::from("framing,pdp_len,ber,efficiency\n");
    for &framing in framings {
        for &ber in bers {
            for p in efficiency_curve(ber, framing)? {
                writeln!(
                    out,
                    "{},{},{:e},{:.6}",
                    framing_name(framing),
                    p.pdp_len,
                    p.ber,
                    p.efficiency
                )
                .expect("write to string");
            }
        }
    }
    Ok(out)
}
