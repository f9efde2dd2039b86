//! Packet compressed sensing imaging.
//!
//! An image is sent as a stream of self-contained packets. Each packet
//! carries a fixed number of pixels drawn from a deterministic pseudo-random
//! order, so any subset of packets is a random sample of the whole image.
//! The receiver recovers the full raster by fitting a sparse set of DCT
//! coefficients to the pixels it has; every extra packet sharpens the result
//! and no packet is required.
//!
//! The pieces, in pipeline order:
//!
//! - [`image`]: RGB rasters, YCbCr conversion and bit-depth quantization
//! - [`sequence`]: the shared pixel order and per-image [`TransmissionPlan`]
//! - [`pdp`]: the 7-byte-header payload format, and [`base91`] armor
//! - [`framing`]: AX.25 UI, SSDV-style and KISS encapsulation
//! - [`channel`]: lossy channel simulation and link-budget arithmetic
//! - [`reconstruct`]: L1-regularised DCT fitting and PSNR
//! - [`transmit`], [`receiver`], [`link`], [`stream`], [`ppm`]: plumbing
//!   that ties the above into an encoder and decoder
//!
//! ```
//! use pcsi::{ColorDepth, Image, Receiver, SolverConfig, TransmissionPlan, Transmitter};
//!
//! let image = pcsi::synthetic::test_card(32, 32).unwrap();
//! let plan = TransmissionPlan::fill(32, 32, ColorDepth::new(4).unwrap(), 128, None, None).unwrap();
//! let tx = Transmitter::new(&image, plan, 0).unwrap();
//!
//! let mut rx = Receiver::new();
//! for payload in tx.full_pass().iter().step_by(2) {
//!     rx.accept_payload(payload).unwrap();
//! }
//! let out = pcsi::reconstruct(rx.image(0).unwrap(), &SolverConfig::default()).unwrap();
//! assert_eq!((out.width(), out.height()), (32, 32));
//! ```

#![forbid(unsafe_code)]

pub mod base91;
pub mod bits;
pub mod channel;
pub mod framing;
pub mod image;
pub mod link;
pub mod pdp;
pub mod ppm;
pub mod receiver;
pub mod reconstruct;
pub mod sequence;
pub mod stream;
pub mod synthetic;
pub mod transmit;

pub use channel::{apply_channel, ber_from_loss, net_efficiency, optimal_pdp, ChannelModel};
pub use framing::Framing;
pub use image::{ColorDepth, Image, YcbcrPixel};
pub use link::{FrameCodec, RejectReason};
pub use pdp::{decode_pdp, encode_pdp, PdpHeader, PdpPayload};
pub use receiver::Receiver;
pub use reconstruct::{psnr, reconstruct, ReceivedPixelSet, SolverConfig};
pub use sequence::{PixelPermutation, TransmissionPlan};
pub use transmit::Transmitter;
