//! End-to-end behaviour of transmitter, channel, receiver and solver together.

use pcsi::channel::frame_survival;
use pcsi::image::rgb_to_luma;
use pcsi::framing::{decode_ax25, encode_ax25, Ax25Address};
use pcsi::reconstruct::{solve_channel, ChannelSamples};
use pcsi::{
    apply_channel, ppm, psnr, ChannelModel, ColorDepth, FrameCodec, Framing, Image, Receiver, SolverConfig,
    TransmissionPlan, Transmitter,
};
use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn depth4() -> ColorDepth {
    ColorDepth::new(4).unwrap()
}

fn transmitter(image: &Image, id: u8) -> Transmitter {
    let plan = TransmissionPlan::fill(image.height(), image.width(), depth4(), 256, None, None).unwrap();
    Transmitter::new(image, plan, id).unwrap()
}

fn decode_subset(tx: &Transmitter, payloads: &[Vec<u8>], keep: &[usize]) -> Image {
    let mut rx = Receiver::new();
    for &i in keep {
        rx.accept_payload(&payloads[i]).unwrap();
    }
    pcsi::reconstruct(rx.image(tx.image_id()).unwrap(), &SolverConfig::default()).unwrap()
}

#[test]
fn all_packets_beat_thirty_db() {
    let image = pcsi::synthetic::test_card(64, 64).unwrap();
    let tx = transmitter(&image, 0);
    let payloads = tx.full_pass();
    let all: Vec<usize> = (0..payloads.len()).collect();
    let out = decode_subset(&tx, &payloads, &all);
    let floor = psnr(&image, &image.quantized(depth4())).unwrap();
    let got = psnr(&out, &image).unwrap();
    // smoothing can land slightly above the quantization floor
    assert!(got >= 30.0 && got >= floor - 1.0, "reconstruction {got} dB, floor {floor} dB");
}

#[test]
fn more_packets_never_hurt() {
    let image = pcsi::synthetic::test_card(64, 64).unwrap();
    let tx = transmitter(&image, 0);
    // two passes so 20% and 80% are not tiny counts
    let payloads: Vec<Vec<u8>> = tx.payloads(2 * tx.plan().packets_per_pass()).collect();
    for seed in 0..5 {
        let mut order: Vec<usize> = (0..payloads.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let n = payloads.len() as f64;
        let low = decode_subset(&tx, &payloads, &order[..(0.2 * n).round() as usize]);
        let high = decode_subset(&tx, &payloads, &order[..(0.8 * n).round() as usize]);
        let (low, high) = (psnr(&low, &image).unwrap(), psnr(&high, &image).unwrap());
        assert!(high >= low, "seed {seed}: 80% gives {high} dB, 20% gives {low} dB");
    }
}

#[test]
fn single_packet_fills_the_raster() {
    let image = pcsi::synthetic::test_card(48, 32).unwrap();
    let tx = transmitter(&image, 3);
    let out = decode_subset(&tx, &[tx.payload(5)], &[0]);
    assert_eq!((out.width(), out.height()), (48, 32));
}

#[test]
fn lossy_ax25_link_end_to_end() {
    let image = pcsi::synthetic::test_card(64, 48).unwrap();
    let tx = transmitter(&image, 9);
    let codec = FrameCodec::new(Framing::Ax25);
    let frames: Vec<Vec<u8>> = tx.full_pass().iter().map(|p| codec.wrap(p).unwrap()).collect();
    let out = apply_channel(&frames, &ChannelModel::new(2e-4, 0.3, 11).unwrap());

    let mut rx = Receiver::new();
    let mut crc_failures = 0;
    for o in out.iter().filter(|o| !o.dropped) {
        if rx.accept_frame(&codec, &o.bytes).is_err() {
            crc_failures += 1;
        }
    }
    let expected_bad = out.iter().filter(|o| !o.dropped && o.flipped_bits > 0).count();
    assert_eq!(crc_failures, expected_bad);
    assert_eq!(rx.rejected_total(), crc_failures);
    let set = rx.image(9).unwrap();
    assert_eq!(set.packet_ids().len(), rx.accepted());
    let img = pcsi::reconstruct(set, &SolverConfig::default()).unwrap();
    assert!(psnr(&img, &image).unwrap() > 20.0);
}

#[test]
fn duplicate_packets_change_nothing() {
    let image = pcsi::synthetic::test_card(32, 32).unwrap();
    let tx = transmitter(&image, 1);
    let payloads = tx.full_pass();
    let once = decode_subset(&tx, &payloads, &[0, 2]);
    let twice = decode_subset(&tx, &payloads, &[0, 2, 0, 2, 2]);
    assert_eq!(once, twice);
}

#[test]
fn interleaved_images_are_reconstructed_separately() {
    let a = pcsi::synthetic::test_card(32, 32).unwrap();
    let b = Image::from_fn(48, 16, |r, c| [(r * 10) as u8, (c * 5) as u8, 200]).unwrap();
    let (ta, tb) = (transmitter(&a, 1), transmitter(&b, 2));
    let mut rx = Receiver::new();
    for (pa, pb) in ta.full_pass().iter().zip(tb.full_pass().iter().cycle()) {
        rx.accept_payload(pa).unwrap();
        rx.accept_payload(pb).unwrap();
    }
    let out = rx.reconstruct_all(&SolverConfig::default());
    assert_eq!(out.len(), 2);
    let (ia, ib) = (out[0].1.as_ref().unwrap(), out[1].1.as_ref().unwrap());
    assert_eq!((ia.width(), ia.height()), (32, 32));
    assert_eq!((ib.width(), ib.height()), (48, 16));
    assert!(psnr(ia, &a).unwrap() > 25.0);
    assert!(psnr(ib, &b).unwrap() > 25.0);
}

#[test]
fn crc_failure_rate_matches_survival_probability() {
    // 256-byte payloads in 276-byte frames: 2208 exposed bits
    let pcsi = Ax25Address::new("PCSI", 0).unwrap();
    let n = 4000;
    let mut rng = ChaCha8Rng::seed_from_u64(2208);
    let frames: Vec<Vec<u8>> = (0..n)
        .map(|_| {
            let info: Vec<u8> = (0..256).map(|_| rng.random()).collect();
            encode_ax25(&pcsi, &pcsi, &[], &info).unwrap()
        })
        .collect();
    let out = apply_channel(&frames, &ChannelModel::new(1e-3, 0.0, 5).unwrap());
    let failed = out.iter().filter(|o| decode_ax25(&o.bytes).is_err()).count();
    let p = 1.0 - frame_survival(276, 1e-3);
    assert!((p - (1.0 - (1.0f64 - 1e-3).powi(2208))).abs() < 1e-12);
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    let rate = failed as f64 / n as f64;
    assert!((rate - p).abs() <= 3.0 * sigma, "rate {rate}, expected {p} +- {}", 3.0 * sigma);
}

#[test]
fn larger_weight_gives_sparser_solutions() {
    let image = pcsi::synthetic::test_card(32, 32).unwrap();
    for seed in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = ChannelSamples::from_pairs(
            32,
            32,
            sample(&mut rng, 1024, 300).into_iter().map(|k| {
                let [r, g, b] = image.get(k % 32, k / 32);
                (k, f64::from(rgb_to_luma(r, g, b)))
            }),
        )
        .unwrap();
        let zeros: Vec<usize> = [1.0, 2.0, 4.0, 8.0]
            .into_iter()
            .map(|c| {
                let cfg = SolverConfig {
                    c,
                    max_iters: 5000,
                    tolerance: 1e-12,
                    ..SolverConfig::default()
                };
                solve_channel(&samples, &cfg).unwrap().zero_coefficients()
            })
            .collect();
        assert!(zeros.windows(2).all(|w| w[0] <= w[1]), "seed {seed}: {zeros:?}");
    }
}

#[test]
fn pipeline_is_deterministic() {
    let run = || {
        let image = pcsi::synthetic::test_card(32, 32).unwrap();
        let tx = transmitter(&image, 4);
        let codec = FrameCodec::new(Framing::Ssdv);
        let frames: Vec<Vec<u8>> = tx.payloads(12).map(|p| codec.wrap(&p).unwrap()).collect();
        let out = apply_channel(&frames, &ChannelModel::new(1e-4, 0.4, 77).unwrap());
        let mut rx = Receiver::new();
        for o in out.iter().filter(|o| !o.dropped) {
            let _ = rx.accept_frame(&codec, &o.bytes);
        }
        ppm::write_ppm(&pcsi::reconstruct(rx.image(4).unwrap(), &SolverConfig::default()).unwrap())
    };
    assert_eq!(run(), run());
}

#[test]
fn ppm_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("card.ppm");
    let image = pcsi::synthetic::test_card(48, 32).unwrap();
    ppm::save(&path, &image).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    let loaded = ppm::load(&path).unwrap();
    assert_eq!(loaded, image);
    ppm::save(&path, &loaded).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), bytes);
}
