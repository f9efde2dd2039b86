//! Sender side: turns an image into PDP payloads.

use thiserror::Error;

use crate::image::{rgb_to_ycbcr, Image, YcbcrPixel};
use crate::pdp::{encode_pdp, PdpError, PdpHeader};
use crate::sequence::{linear_to_rowcol, PixelPermutation, PlanError, TransmissionPlan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransmitError {
    #[error("plan is for {plan_rows}x{plan_cols} but the image is {rows}x{cols}")]
    Dimensions {
        plan_rows: usize,
        plan_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Pdp(#[from] PdpError),
}

/// Precomputed quantized samples and pixel order for one image.
#[derive(Debug, Clone)]
pub struct Transmitter {
    plan: TransmissionPlan,
    image_id: u8,
    permutation: PixelPermutation,
    // quantized YCbCr, indexed by column-major linear pixel index
    samples: Vec<YcbcrPixel>,
}

impl Transmitter {
    pub fn new(image: &Image, plan: TransmissionPlan, image_id: u8) -> Result<Self, TransmitError> {
        let (rows, cols) = (image.height(), image.width());
        if (plan.rows, plan.cols) != (rows, cols) {
            return Err(TransmitError::Dimensions {
                plan_rows: plan.rows,
                plan_cols: plan.cols,
                rows,
                cols,
            });
        }
        plan.check_packet_ids()?;
        let samples = (0..rows * cols)
            .map(|k| {
                let (row, col) = linear_to_rowcol(k, rows, cols);
                let [r, g, b] = image.get(row, col);
                rgb_to_ycbcr(r, g, b).quantize(plan.depth)
            })
            .collect();
        Ok(Self {
            plan,
            image_id,
            permutation: PixelPermutation::build(rows, cols),
            samples,
        })
    }

    pub fn plan(&self) -> &TransmissionPlan {
        &self.plan
    }

    pub fn image_id(&self) -> u8 {
        self.image_id
    }

    pub fn permutation(&self) -> &PixelPermutation {
        &self.permutation
    }

    /// Encoded payload for `packet_id`.
    pub fn payload(&self, packet_id: u16) -> Vec<u8> {
        let (color_idx, grey_idx) = self.plan.packet_slice(&self.permutation, packet_id);
        let color: Vec<YcbcrPixel> = color_idx.iter().map(|&k| self.samples[k as usize]).collect();
        let grey: Vec<u8> = grey_idx.iter().map(|&k| self.samples[k as usize].y).collect();
        let header = PdpHeader::for_plan(&self.plan, self.image_id, packet_id);
        encode_pdp(&self.plan, &header, &color, &grey).expect("plan-consistent samples always encode")
    }

    /// Payloads for packet ids `0..count`. Ids wrap at 65536.
    pub fn payloads(&self, count: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..count).map(|i| self.payload((i % 65536) as u16))
    }

    /// One payload per packet of a single full pass.
    pub fn full_pass(&self) -> Vec<Vec<u8>> {
        self.payloads(self.plan.packets_per_pass()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::ColorDepth;
    use crate::pdp::decode_pdp;

    #[test]
    fn payloads_have_plan_length() {
        let img = Image::from_fn(32, 16, |r, c| [(r * 8) as u8, (c * 4) as u8, 99]).unwrap();
        let plan = TransmissionPlan::fill(16, 32, ColorDepth::new(4).unwrap(), 64, None, None).unwrap();
        let tx = Transmitter::new(&img, plan, 3).unwrap();
        let all = tx.full_pass();
        assert_eq!(all.len(), plan.packets_per_pass());
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.len(), plan.pdp_len);
            let d = decode_pdp(p, Some(plan.pdp_len)).unwrap();
            assert_eq!(d.header.packet_id as usize, i);
            assert_eq!(d.header.image_id, 3);
            assert_eq!(d.plan(), plan);
        }
    }

    #[test]
    fn samples_follow_the_permutation() {
        let img = Image::from_fn(16, 16, |r, c| [(r * 16 + c) as u8, 0, 0]).unwrap();
        let plan = TransmissionPlan::new(16, 16, ColorDepth::FULL, 2, 3).unwrap();
        let tx = Transmitter::new(&img, plan, 0).unwrap();
        let d = decode_pdp(&tx.payload(5), None).unwrap();
        let (c, g) = plan.packet_slice(tx.permutation(), 5);
        for (k, px) in c.iter().zip(&d.color) {
            let (row, col) = linear_to_rowcol(*k as usize, 16, 16);
            let [r, gg, b] = img.get(row, col);
            assert_eq!(*px, rgb_to_ycbcr(r, gg, b));
        }
        for (k, y) in g.iter().zip(&d.grey) {
            let (row, col) = linear_to_rowcol(*k as usize, 16, 16);
            let [r, gg, b] = img.get(row, col);
            assert_eq!(*y, rgb_to_ycbcr(r, gg, b).y);
        }
    }

    #[test]
    fn plan_must_match_image() {
        let img = Image::filled(16, 32, [0; 3]).unwrap();
        let plan = TransmissionPlan::new(16, 16, ColorDepth::FULL, 1, 0).unwrap();
        assert!(matches!(Transmitter::new(&img, plan, 0), Err(TransmitError::Dimensions { .. })));
    }
}
