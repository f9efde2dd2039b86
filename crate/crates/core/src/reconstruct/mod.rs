//! Image reconstruction from whatever pixels have arrived.
//!
//! Each of Y, Cb and Cr is solved independently as a sparse DCT fit to the
//! received samples (Cb and Cr only have samples at full-colour pixels),
//! then the channels are recombined into RGB.

mod dct;
mod solver;

use std::collections::BTreeSet;

use thiserror::Error;

pub use dct::{Dct2d, Grid};
pub use solver::{
    objective, smooth_gradient, soft_threshold, solve_channel, solve_with, ChannelSamples, SolveError, SolveReport,
    SolverConfig,
};

use crate::image::{dequantize_channel, ycbcr_f64_to_rgb, ColorDepth, Image, ImageError};
use crate::pdp::PdpPayload;
use crate::sequence::{linear_to_rowcol, PixelPermutation, TransmissionPlan};

/// Neutral chroma used when no full-colour pixel has arrived.
const NEUTRAL_CHROMA: f64 = 128.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReconstructError {
    #[error("no packets received")]
    NoPackets,
    #[error("packet {packet_id} disagrees with earlier packets of image {image_id}")]
    Inconsistent { image_id: u8, packet_id: u16 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error("images are {0}x{1} and {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
}

/// Samples accumulated for one image, dequantized to the 0..=255 scale.
/// A pixel received more than once keeps its most recent value.
#[derive(Debug, Clone)]
pub struct ReceivedPixelSet {
    image_id: u8,
    plan: TransmissionPlan,
    y: Vec<Option<u8>>,
    cb: Vec<Option<u8>>,
    cr: Vec<Option<u8>>,
    packets: BTreeSet<u16>,
}

impl ReceivedPixelSet {
    /// Empty set for the image described by `first`, which is not ingested.
    pub fn for_payload(first: &PdpPayload) -> Self {
        Self::new(first.header.image_id, first.plan())
    }

    pub fn new(image_id: u8, plan: TransmissionPlan) -> Self {
        let total = plan.total_pixels();
        Self {
            image_id,
            plan,
            y: vec![None; total],
            cb: vec![None; total],
            cr: vec![None; total],
            packets: BTreeSet::new(),
        }
    }

    pub fn image_id(&self) -> u8 {
        self.image_id
    }

    pub fn plan(&self) -> &TransmissionPlan {
        &self.plan
    }

    pub fn rows(&self) -> usize {
        self.plan.rows
    }

    pub fn cols(&self) -> usize {
        self.plan.cols
    }

    pub fn depth(&self) -> ColorDepth {
        self.plan.depth
    }

    pub fn packet_ids(&self) -> &BTreeSet<u16> {
        &self.packets
    }

    pub fn luma_count(&self) -> usize {
        self.y.iter().flatten().count()
    }

    pub fn chroma_count(&self) -> usize {
        self.cb.iter().flatten().count()
    }

    /// Stores the samples of one payload. `permutation` must be the pixel
    /// order for this image's dimensions.
    pub fn ingest(&mut self, payload: &PdpPayload, permutation: &PixelPermutation) -> Result<(), ReconstructError> {
        let h = &payload.header;
        if h.image_id != self.image_id || payload.plan() != self.plan {
            return Err(ReconstructError::Inconsistent {
                image_id: self.image_id,
                packet_id: h.packet_id,
            });
        }
        let depth = self.plan.depth;
        let (color_idx, grey_idx) = self.plan.packet_slice(permutation, h.packet_id);
        for (&k, px) in color_idx.iter().zip(&payload.color) {
            let k = k as usize;
            self.y[k] = Some(dequantize_channel(px.y, depth));
            self.cb[k] = Some(dequantize_channel(px.cb, depth));
            self.cr[k] = Some(dequantize_channel(px.cr, depth));
        }
        for (&k, &y) in grey_idx.iter().zip(&payload.grey) {
            self.y[k as usize] = Some(dequantize_channel(y, depth));
        }
        self.packets.insert(h.packet_id);
        Ok(())
    }

    fn samples(&self, channel: &[Option<u8>]) -> ChannelSamples {
        let mut s = ChannelSamples::new(self.rows(), self.cols());
        for (k, v) in channel.iter().enumerate() {
            if let Some(v) = v {
                s.insert(k, f64::from(*v)).expect("index within grid");
            }
        }
        s
    }

    pub fn luma_samples(&self) -> ChannelSamples {
        self.samples(&self.y)
    }

    pub fn chroma_samples(&self) -> (ChannelSamples, ChannelSamples) {
        (self.samples(&self.cb), self.samples(&self.cr))
    }
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub image: Image,
    pub luma: SolveReport,
    /// `None` when no full-colour pixel was received and chroma was left neutral.
    pub chroma: Option<(SolveReport, SolveReport)>,
}

pub fn reconstruct(rx: &ReceivedPixelSet, cfg: &SolverConfig) -> Result<Image, ReconstructError> {
    reconstruct_detailed(rx, cfg).map(|r| r.image)
}

/// Solves the three channels concurrently and converts back to RGB.
pub fn reconstruct_detailed(rx: &ReceivedPixelSet, cfg: &SolverConfig) -> Result<Reconstruction, ReconstructError> {
    if rx.packets.is_empty() {
        return Err(ReconstructError::NoPackets);
    }
    cfg.validate()?;
    let (rows, cols) = (rx.rows(), rx.cols());
    let dct = Dct2d::new(rows, cols);
    let y_samples = rx.luma_samples();
    let (cb_samples, cr_samples) = rx.chroma_samples();

    let (luma, chroma) = std::thread::scope(|scope| {
        let chroma = (!cb_samples.is_empty()).then(|| {
            let cb = scope.spawn(|| solve_with(&dct, &cb_samples, cfg));
            let cr = scope.spawn(|| solve_with(&dct, &cr_samples, cfg));
            (cb, cr)
        });
        let luma = solve_with(&dct, &y_samples, cfg);
        let chroma = chroma.map(|(cb, cr)| {
            (
                cb.join().expect("chroma solve panicked"),
                cr.join().expect("chroma solve panicked"),
            )
        });
        (luma, chroma)
    });
    let luma = luma?;
    let chroma = match chroma {
        Some((cb, cr)) => Some((cb?, cr?)),
        None => None,
    };

    let mut pixels = vec![[0u8; 3]; rows * cols];
    for k in 0..rows * cols {
        let (row, col) = linear_to_rowcol(k, rows, cols);
        let y = luma.channel.data[k];
        let (cb, cr) = match &chroma {
            Some((cb, cr)) => (cb.channel.data[k], cr.channel.data[k]),
            None => (NEUTRAL_CHROMA, NEUTRAL_CHROMA),
        };
        pixels[row * cols + col] = ycbcr_f64_to_rgb(y, cb, cr);
    }
    let image = Image::new(cols, rows, pixels)?;
    Ok(Reconstruction { image, luma, chroma })
}

/// Peak signal-to-noise ratio over all RGB samples, in dB. Identical images
/// give `f64::INFINITY`.
pub fn psnr(a: &Image, b: &Image) -> Result<f64, ReconstructError> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(ReconstructError::DimensionMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    let sq: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .flat_map(|(p, q)| p.iter().zip(q).map(|(&u, &v)| (f64::from(u) - f64::from(v)).powi(2)))
        .sum();
    let mse = sq / (3 * a.pixels().len()) as f64;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}
