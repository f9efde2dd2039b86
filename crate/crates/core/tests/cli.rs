//! Runs the `pcsi` binary against temporary files.

use std::path::Path;
use std::process::{Command, Output};

use pcsi::stream::{read_file, Record, StreamFormat};

fn pcsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcsi")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = pcsi(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn records(path: &Path) -> Vec<Vec<u8>> {
    read_file(path, StreamFormat::from_path(path))
        .unwrap()
        .into_iter()
        .map(|r| match r {
            Record::Frame(f) => f,
            Record::Malformed(m) => panic!("{m}"),
        })
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_prints_plan_and_writes_a_full_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames.bin");
    let text = ok(&["encode", "--test-card", "320x240", "--out", s(&out)]);
    assert!(text.contains("83 colour + 249 grey"), "{text}");
    assert!(text.contains("232 packets per full pass"), "{text}");
    let frames = records(&out);
    assert_eq!(frames.len(), 232);
    assert!(frames.iter().all(|f| f.len() == 276));

    ok(&["encode", "--test-card", "32x32", "--packets", "1", "--out", s(&out)]);
    assert_eq!(records(&out).len(), 1);
}

#[test]
fn encode_decode_without_channel() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("card.ppm");
    let image = pcsi::synthetic::test_card(64, 64).unwrap();
    pcsi::ppm::save(&src, &image).unwrap();
    for (framing, file, extra) in [
        ("ax25", "a.bin", None),
        ("ssdv", "b.hex", None),
        ("raw", "c.kiss", None),
        ("ssdv", "d.bin", Some("--base91")),
    ] {
        let frames = dir.path().join(file);
        let img = dir.path().join(format!("{file}.ppm"));
        let mut args = vec!["encode", "--input", s(&src), "--framing", framing, "--out", s(&frames)];
        let mut dargs = vec!["decode", "--in", s(&frames), "--out", s(&img), "--framing", framing];
        if let Some(flag) = extra {
            args.extend([flag, "--pdp-size", "200"]);
            dargs.push(flag);
        }
        ok(&args);
        ok(&dargs);
        let out = pcsi::ppm::load(&img).unwrap();
        let q = pcsi::psnr(&out, &image).unwrap();
        let floor = pcsi::psnr(&image.quantized(pcsi::ColorDepth::new(4).unwrap()), &image).unwrap();
        assert!(q >= 30.0 && q >= floor - 1.0, "{framing}: {q} dB, floor {floor} dB");
    }
}

#[test]
fn channel_is_deterministic_and_transparent_when_clean() {
    let dir = tempfile::tempdir().unwrap();
    let frames = dir.path().join("f.bin");
    ok(&["encode", "--test-card", "64x64", "--out", s(&frames)]);
    let same = dir.path().join("same.bin");
    ok(&["channel", "--in", s(&frames), "--out", s(&same)]);
    assert_eq!(std::fs::read(&frames).unwrap(), std::fs::read(&same).unwrap());

    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    let text = ok(&["channel", "--in", s(&frames), "--out", s(&a), "--loss", "0.5", "--seed", "9"]);
    ok(&["channel", "--in", s(&frames), "--out", s(&b), "--loss", "0.5", "--seed", "9"]);
    assert!(text.contains("frames in 13"), "{text}");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(records(&a).len() < 13);
}

#[test]
fn decode_after_loss_reports_and_fills_raster() {
    let dir = tempfile::tempdir().unwrap();
    let frames = dir.path().join("f.bin");
    let lossy = dir.path().join("g.bin");
    let img = dir.path().join("out.ppm");
    let reference = dir.path().join("ref.ppm");
    pcsi::ppm::save(&reference, &pcsi::synthetic::test_card(64, 64).unwrap()).unwrap();
    ok(&["encode", "--input", s(&reference), "--out", s(&frames)]);
    ok(&["channel", "--in", s(&frames), "--out", s(&lossy), "--loss", "0.46", "--ber", "1e-4", "--seed", "1"]);
    let text = ok(&[
        "decode",
        "--in",
        s(&lossy),
        "--out",
        s(&img),
        "--progressive",
        "2",
        "--reference",
        s(&reference),
    ]);
    assert!(text.contains("PSNR"), "{text}");
    let out = pcsi::ppm::load(&img).unwrap();
    assert_eq!((out.width(), out.height()), (64, 64));
    assert!(dir.path().join("out_0_00002.ppm").exists(), "{text}");
}

#[test]
fn decode_separates_image_ids() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.hex");
    let b = dir.path().join("b.hex");
    ok(&["encode", "--test-card", "32x32", "--image-id", "5", "--out", s(&a)]);
    ok(&["encode", "--test-card", "16x48", "--image-id", "6", "--out", s(&b)]);
    let mixed = dir.path().join("mixed.hex");
    let mut text = std::fs::read_to_string(&a).unwrap();
    text.push_str(&std::fs::read_to_string(&b).unwrap());
    std::fs::write(&mixed, text).unwrap();
    let img = dir.path().join("img.ppm");
    ok(&["decode", "--in", s(&mixed), "--out", s(&img)]);
    let five = pcsi::ppm::load(&dir.path().join("img_5.ppm")).unwrap();
    let six = pcsi::ppm::load(&dir.path().join("img_6.ppm")).unwrap();
    assert_eq!((five.width(), five.height()), (32, 32));
    assert_eq!((six.width(), six.height()), (16, 48));
}

#[test]
fn corrupt_stream_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let frames = dir.path().join("f.bin");
    ok(&["encode", "--test-card", "32x32", "--out", s(&frames)]);
    let mut recs = records(&frames);
    for r in &mut recs {
        r[20] ^= 0x10;
    }
    pcsi::stream::write_file(&frames, &recs, StreamFormat::Binary).unwrap();
    let out = pcsi(&["decode", "--in", s(&frames), "--out", s(&dir.path().join("x.ppm"))]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains(&format!("rejected {} (crc)", recs.len())), "{stdout}");
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(pcsi(&["encode"]).status.code(), Some(1));
    assert_eq!(pcsi(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        pcsi(&["encode", "--test-card", "30x30", "--out", "/dev/null"]).status.code(),
        Some(1)
    );
    assert_eq!(pcsi(&["--help"]).status.code(), Some(0));
}

#[test]
fn analyze_tables_and_csv() {
    let text = ok(&["analyze", "--ber", "1e-5"]);
    assert!(text.lines().any(|l| l.contains("ax25") && l.contains(" 256 ")), "{text}");
    let text = ok(&["analyze", "--loss", "50"]);
    assert!(text.lines().next().unwrap().starts_with("ber 3.16"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    ok(&["analyze", "--ber", "1e-4,1e-3,1e-2", "--framing", "ssdv", "--out", s(&csv)]);
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("framing,pdp_len,ber,efficiency"));
    assert_eq!(lines.count(), 249 * 3);
}
