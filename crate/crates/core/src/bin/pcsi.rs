//! Command-line front end: encode, channel, decode, analyze.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pcsi::channel::{curves_csv, framing_name};
use pcsi::framing::Ax25Address;
use pcsi::stream::{self, Record, StreamFormat};
use pcsi::{
    apply_channel, ber_from_loss, optimal_pdp, ppm, psnr, ChannelModel, ColorDepth, FrameCodec, Framing, Image,
    Receiver, SolverConfig, TransmissionPlan, Transmitter,
};

#[derive(Parser)]
#[command(name = "pcsi", version, about = "Packet compressed sensing imaging")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split an image into framed packets.
    Encode(EncodeArgs),
    /// Pass a packet stream through a lossy channel.
    Channel(ChannelArgs),
    /// Reconstruct images from a packet stream.
    Decode(DecodeArgs),
    /// Efficiency curves and best payload lengths.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FramingArg {
    Ax25,
    Ssdv,
    Raw,
}

impl From<FramingArg> for Framing {
    fn from(f: FramingArg) -> Self {
        match f {
            FramingArg::Ax25 => Framing::Ax25,
            FramingArg::Ssdv => Framing::Ssdv,
            FramingArg::Raw => Framing::Raw,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Binary,
    Hex,
    Kiss,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long, value_enum, default_value = "ax25")]
    framing: FramingArg,
    /// Payloads are base91 armored.
    #[arg(long)]
    base91: bool,
    /// Stream container; guessed from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Binary PPM (P6) image.
    #[arg(long, required_unless_present = "test_card", conflicts_with = "test_card")]
    input: Option<PathBuf>,
    /// Use the built-in synthetic scene, e.g. 320x240.
    #[arg(long, value_name = "WxH")]
    test_card: Option<String>,
    #[arg(long, default_value_t = 256)]
    pdp_size: usize,
    #[arg(long, default_value_t = 4)]
    bits_per_channel: u8,
    #[arg(long)]
    n_color: Option<usize>,
    #[arg(long)]
    n_grey: Option<usize>,
    #[arg(long, default_value_t = 0)]
    image_id: u8,
    #[command(flatten)]
    link: LinkArgs,
    /// Callsign for SSDV-style frames.
    #[arg(long, default_value = "PCSI")]
    callsign: String,
    #[arg(long, default_value = "PCSI")]
    dest: String,
    #[arg(long, default_value = "PCSI")]
    src: String,
    /// Digipeater path entry; repeatable.
    #[arg(long = "digi")]
    digis: Vec<String>,
    /// Number of packets; default is one full pass.
    #[arg(long)]
    packets: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ChannelArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    ber: f64,
    /// Probability of dropping a whole frame.
    #[arg(long, default_value_t = 0.0)]
    loss: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Output PPM. With several images the id is appended to the name.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 4.0)]
    c: f64,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    /// Also write a partial reconstruction every K accepted packets.
    #[arg(long, value_name = "K")]
    progressive: Option<usize>,
    #[command(flatten)]
    link: LinkArgs,
    /// Original image; prints PSNR against it.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Framings to tabulate; both when omitted.
    #[arg(long, value_enum)]
    framing: Vec<FramingArg>,
    #[arg(long, value_delimiter = ',', default_values_t = [1e-5, 1e-4, 1e-3, 1e-2])]
    ber: Vec<f64>,
    /// Packet loss in percent of 256-byte AX.25 frames; replaces --ber.
    #[arg(long, conflicts_with = "ber")]
    loss: Option<f64>,
    /// CSV file for the full curves.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    NoData(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::NoData(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::NoData(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Encode(a) => encode(a),
        Command::Channel(a) => channel(a),
        Command::Decode(a) => decode(a),
        Command::Analyze(a) => analyze(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pcsi: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn stream_format(arg: Option<FormatArg>, path: &Path) -> StreamFormat {
    match arg {
        Some(FormatArg::Binary) => StreamFormat::Binary,
        Some(FormatArg::Hex) => StreamFormat::Hex,
        Some(FormatArg::Kiss) => StreamFormat::Kiss,
        None => StreamFormat::from_path(path),
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize), Failure> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| usage(format!("expected WxH, got {s:?}")))?;
    let w = w.parse().map_err(|_| usage(format!("bad width {w:?}")))?;
    let h = h.parse().map_err(|_| usage(format!("bad height {h:?}")))?;
    Ok((w, h))
}

fn encode(a: EncodeArgs) -> Result<(), Failure> {
    let image = match (&a.input, &a.test_card) {
        (Some(path), _) => ppm::load(path).map_err(usage)?,
        (None, Some(dims)) => {
            let (w, h) = parse_dims(dims)?;
            pcsi::synthetic::test_card(w, h).map_err(usage)?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let depth = ColorDepth::new(a.bits_per_channel).map_err(usage)?;
    let plan = TransmissionPlan::fill(image.height(), image.width(), depth, a.pdp_size, a.n_color, a.n_grey)
        .map_err(usage)?;
    let tx = Transmitter::new(&image, plan, a.image_id).map_err(usage)?;

    let codec = FrameCodec {
        base91: a.link.base91,
        dest: Ax25Address::parse(&a.dest).map_err(usage)?,
        src: Ax25Address::parse(&a.src).map_err(usage)?,
        digis: a.digis.iter().map(|d| Ax25Address::parse(d)).collect::<Result<_, _>>().map_err(usage)?,
        callsign: a.callsign.clone(),
        ..FrameCodec::new(a.link.framing.into())
    };
    let format = stream_format(a.link.format, &a.out);
    let count = a.packets.unwrap_or(plan.packets_per_pass());
    let frames = tx
        .payloads(count)
        .map(|p| match format {
            StreamFormat::Kiss => codec.wrap_body(&p),
            _ => codec.wrap(&p),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    stream::write_file(&a.out, &frames, format).map_err(usage)?;

    println!(
        "image {}x{} id {} depth {} bits/channel",
        plan.cols,
        plan.rows,
        a.image_id,
        depth.bits()
    );
    println!(
        "pdp {} bytes: {} colour + {} grey pixels per packet",
        plan.pdp_len, plan.n_color, plan.n_grey
    );
    println!("{} packets per full pass, wrote {count}", plan.packets_per_pass());
    Ok(())
}

fn frames_of(records: Vec<Record>) -> (Vec<Vec<u8>>, usize) {
    let mut malformed = 0;
    let frames = records
        .into_iter()
        .filter_map(|r| match r {
            Record::Frame(f) => Some(f),
            Record::Malformed(_) => {
                malformed += 1;
                None
            }
        })
        .collect();
    (frames, malformed)
}

fn channel(a: ChannelArgs) -> Result<(), Failure> {
    let model = ChannelModel::new(a.ber, a.loss, a.seed).map_err(usage)?;
    let in_format = stream_format(a.format, &a.input);
    let out_format = stream_format(a.format, &a.out);
    let (frames, malformed) = frames_of(stream::read_file(&a.input, in_format).map_err(usage)?);
    let out = apply_channel(&frames, &model);
    let survivors: Vec<&[u8]> = out.iter().filter(|o| !o.dropped).map(|o| o.bytes.as_slice()).collect();
    stream::write_file(&a.out, &survivors, out_format).map_err(usage)?;

    let dropped = out.iter().filter(|o| o.dropped).count();
    let corrupted = out.iter().filter(|o| !o.dropped && o.flipped_bits > 0).count();
    let flips: usize = out.iter().map(|o| o.flipped_bits).sum();
    println!("frames in {}, dropped {dropped}, corrupted {corrupted}, out {}", frames.len(), survivors.len());
    println!("bits flipped {flips}");
    if malformed > 0 {
        println!("skipped {malformed} malformed records");
    }
    if !frames.is_empty() {
        let intact = survivors.len() - corrupted;
        println!("intact {:.1}%", 100.0 * intact as f64 / frames.len() as f64);
    }
    Ok(())
}

fn output_path(base: &Path, id: u8, many: bool, step: Option<usize>) -> PathBuf {
    if !many && step.is_none() {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("image");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("ppm");
    let mut name = stem.to_owned();
    if many {
        name.push_str(&format!("_{id}"));
    }
    if let Some(n) = step {
        name.push_str(&format!("_{n:05}"));
    }
    base.with_file_name(format!("{name}.{ext}"))
}

fn decode(a: DecodeArgs) -> Result<(), Failure> {
    let cfg = SolverConfig {
        c: a.c,
        max_iters: a.max_iters,
        ..SolverConfig::default()
    };
    cfg.validate().map_err(usage)?;
    if a.progressive == Some(0) {
        return Err(usage("--progressive needs K >= 1"));
    }
    let reference: Option<Image> = a.reference.as_deref().map(ppm::load).transpose().map_err(usage)?;
    let codec = FrameCodec {
        base91: a.link.base91,
        ..FrameCodec::new(a.link.framing.into())
    };
    let format = stream_format(a.link.format, &a.input);
    let records = stream::read_file(&a.input, format).map_err(usage)?;

    let mut rx = Receiver::new();
    for record in records {
        let accepted = match record {
            Record::Frame(f) if format == StreamFormat::Kiss => rx.accept_body(&codec, &f),
            Record::Frame(f) => rx.accept_frame(&codec, &f),
            Record::Malformed(_) => Err(rx.reject(pcsi::RejectReason::Framing)),
        };
        if let (Ok(id), Some(k)) = (accepted, a.progressive) {
            if rx.accepted().is_multiple_of(k) {
                let set = rx.image(id).expect("accepted image is stored");
                let img = pcsi::reconstruct(set, &cfg).map_err(usage)?;
                let path = output_path(&a.out, id, true, Some(rx.accepted()));
                ppm::save(&path, &img).map_err(usage)?;
                println!("progressive {} packets -> {}", rx.accepted(), path.display());
            }
        }
    }

    for (reason, n) in rx.rejected() {
        println!("rejected {n} ({reason})");
    }
    if rx.images().is_empty() {
        return Err(Failure::NoData(format!(
            "no valid packets ({} records rejected)",
            rx.rejected_total()
        )));
    }
    let many = rx.images().len() > 1;
    for (id, result) in rx.reconstruct_all(&cfg) {
        let set = rx.image(id).expect("listed image");
        let img = result.map_err(usage)?;
        let path = output_path(&a.out, id, many, None);
        ppm::save(&path, &img).map_err(usage)?;
        let received = set.packet_ids().len();
        let pass = set.plan().packets_per_pass();
        print!(
            "image {id}: {}x{}, {received} distinct packets ({:.1}% of a pass), {} luma / {} colour samples -> {}",
            set.cols(),
            set.rows(),
            100.0 * received as f64 / pass as f64,
            set.luma_count(),
            set.chroma_count(),
            path.display()
        );
        match &reference {
            Some(r) => match psnr(&img, r) {
                Ok(q) => println!(", PSNR {q:.2} dB"),
                Err(e) => println!(", no PSNR: {e}"),
            },
            None => println!(),
        }
    }
    Ok(())
}

fn analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let bers = match a.loss {
        Some(loss) => {
            let ber = ber_from_loss(loss).map_err(usage)?;
            println!("ber {ber:.6e} for {loss}% loss");
            vec![ber]
        }
        None => a.ber,
    };
    let framings: Vec<Framing> = if a.framing.is_empty() {
        vec![Framing::Ax25, Framing::Ssdv]
    } else {
        a.framing.iter().map(|&f| f.into()).collect()
    };
    println!("{:>10} {:>6} {:>5} {:>10}", "ber", "frame", "x*", "efficiency");
    for &ber in &bers {
        for &framing in &framings {
            let best = optimal_pdp(ber, framing).map_err(usage)?;
            println!(
                "{:>10.3e} {:>6} {:>5} {:>10.4}",
                ber,
                framing_name(framing),
                best.pdp_len,
                best.efficiency
            );
        }
    }
    if let Some(out) = a.out {
        let csv = curves_csv(&bers, &framings).map_err(usage)?;
        std::fs::write(&out, csv).map_err(usage)?;
        println!("curves written to {}", out.display());
    }
    Ok(())
}
