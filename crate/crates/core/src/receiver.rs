//! Receiver side: accumulates payloads per image id.

use std::collections::{BTreeMap, HashMap};

use crate::link::{FrameCodec, RejectReason};
use crate::pdp::{decode_pdp, PdpError};
use crate::reconstruct::{reconstruct, ReceivedPixelSet, ReconstructError, SolverConfig};
use crate::sequence::PixelPermutation;
use crate::Image;

#[derive(Debug, Default)]
pub struct Receiver {
    images: BTreeMap<u8, ReceivedPixelSet>,
    permutations: HashMap<(usize, usize), PixelPermutation>,
    rejected: BTreeMap<RejectReason, usize>,
    accepted: usize,
}

impl Receiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decodes and stores one raw payload, returning its image id.
    pub fn accept_payload(&mut self, raw: &[u8]) -> Result<u8, RejectReason> {
        let result = self.ingest(raw);
        match result {
            Ok(_) => self.accepted += 1,
            Err(reason) => *self.rejected.entry(reason).or_default() += 1,
        }
        result
    }

    /// Unwraps a complete frame and stores its payload.
    pub fn accept_frame(&mut self, codec: &FrameCodec, frame: &[u8]) -> Result<u8, RejectReason> {
        match codec.unwrap(frame) {
            Ok(pdp) => self.accept_payload(&pdp),
            Err(reason) => Err(self.reject(reason)),
        }
    }

    /// Unwraps a KISS frame body and stores its payload.
    pub fn accept_body(&mut self, codec: &FrameCodec, body: &[u8]) -> Result<u8, RejectReason> {
        match codec.unwrap_body(body) {
            Ok(pdp) => self.accept_payload(&pdp),
            Err(reason) => Err(self.reject(reason)),
        }
    }

    /// Counts a record rejected before it reached the receiver.
    pub fn reject(&mut self, reason: RejectReason) -> RejectReason {
        *self.rejected.entry(reason).or_default() += 1;
        reason
    }

    fn ingest(&mut self, raw: &[u8]) -> Result<u8, RejectReason> {
        let payload = decode_pdp(raw, None).map_err(|e| match e {
            PdpError::NonZeroPadding => RejectReason::Padding,
            _ => RejectReason::Header,
        })?;
        let plan = payload.plan();
        if plan.pixels_per_packet() == 0 {
            return Err(RejectReason::Header);
        }
        let id = payload.header.image_id;
        let permutation = self
            .permutations
            .entry((plan.rows, plan.cols))
            .or_insert_with(|| PixelPermutation::build(plan.rows, plan.cols));
        let set = self
            .images
            .entry(id)
            .or_insert_with(|| ReceivedPixelSet::for_payload(&payload));
        set.ingest(&payload, permutation).map_err(|_| RejectReason::Inconsistent)?;
        Ok(id)
    }

    pub fn images(&self) -> &BTreeMap<u8, ReceivedPixelSet> {
        &self.images
    }

    pub fn image(&self, id: u8) -> Option<&ReceivedPixelSet> {
        self.images.get(&id)
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn rejected(&self) -> &BTreeMap<RejectReason, usize> {
        &self.rejected
    }

    pub fn rejected_total(&self) -> usize {
        self.rejected.values().sum()
    }

    /// Reconstructs every image seen so far.
    pub fn reconstruct_all(&self, cfg: &SolverConfig) -> Vec<(u8, Result<Image, ReconstructError>)> {
        self.images
            .iter()
            .map(|(&id, set)| (id, reconstruct(set, cfg)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::Framing;
    use crate::image::ColorDepth;
    use crate::sequence::TransmissionPlan;
    use crate::transmit::Transmitter;

    fn transmitter(id: u8, rows: usize, cols: usize) -> Transmitter {
        let img = Image::from_fn(cols, rows, |r, c| [(r * 3) as u8, (c * 5) as u8, 60]).unwrap();
        let plan = TransmissionPlan::fill(rows, cols, ColorDepth::new(4).unwrap(), 100, None, None).unwrap();
        Transmitter::new(&img, plan, id).unwrap()
    }

    #[test]
    fn images_are_kept_apart() {
        let a = transmitter(1, 16, 32);
        let b = transmitter(2, 32, 16);
        let mut rx = Receiver::new();
        for (pa, pb) in a.payloads(3).zip(b.payloads(2)) {
            assert_eq!(rx.accept_payload(&pa), Ok(1));
            assert_eq!(rx.accept_payload(&pb), Ok(2));
        }
        rx.accept_payload(&a.payload(2)).unwrap();
        assert_eq!(rx.images().len(), 2);
        assert_eq!(rx.image(1).unwrap().packet_ids().len(), 3);
        assert_eq!(rx.image(2).unwrap().packet_ids().len(), 2);
        assert_eq!(rx.accepted(), 5);
    }

    #[test]
    fn rejections_are_counted() {
        let a = transmitter(1, 16, 16);
        let codec = FrameCodec::new(Framing::Ax25);
        let mut rx = Receiver::new();
        let mut frame = codec.wrap(&a.payload(0)).unwrap();
        frame[30] ^= 4;
        assert_eq!(rx.accept_frame(&codec, &frame), Err(RejectReason::Crc));
        assert_eq!(rx.accept_payload(&[0; 3]), Err(RejectReason::Header));
        rx.accept_payload(&a.payload(0)).unwrap();
        let mut other = a.payload(2);
        other[6] = 7;
        assert_eq!(rx.accept_payload(&other), Err(RejectReason::Inconsistent));
        assert_eq!(rx.rejected()[&RejectReason::Crc], 1);
        assert_eq!(rx.rejected_total(), 3);
    }
}
