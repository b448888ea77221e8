use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use irdenoise::bench::{density_tag, run_bench, BenchConfig};
use irdenoise::parallel::with_threads;
use irdenoise::pgm::{load_pgm, save_pgm};
use irdenoise::synth::Fixture;
use irdenoise::{inject_impulse, run_filter, GrayImage, Method, NoiseSpec, WindowSpec};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "irdenoise",
    version,
    about = "Impulse-noise removal for 8-bit grayscale PGM images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corrupt an image with seeded salt-and-pepper noise
    AddNoise(AddNoiseArgs),
    /// Run the FNR or median filter
    Filter(FilterArgs),
    /// Compare MF and FNR on noisy copies of a clean image
    Bench(BenchArgs),
    /// Write a synthetic test image
    Synth(SynthArgs),
}

#[derive(Args)]
struct NoiseArgs {
    /// Fraction of pixels to corrupt
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    /// Share of corrupted pixels set to 255 (rest become 0)
    #[arg(long, default_value_t = 0.5)]
    salt_fraction: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct AddNoiseArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Where to write the corruption mask (default: <output>_mask.pgm)
    #[arg(long)]
    mask: Option<PathBuf>,
    #[command(flatten)]
    noise: NoiseArgs,
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value = "fnr", value_parser = ["fnr", "mf"])]
    method: String,
    /// Odd window side, at least 3
    #[arg(long, default_value_t = 3)]
    window: usize,
    #[arg(long, default_value_t = 2)]
    passes: usize,
    /// Also write the stats JSON here
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Clean reference image
    #[arg(long)]
    input: PathBuf,
    /// Directory for noisy, mask and filtered images
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 3)]
    window: usize,
    #[arg(long, default_value_t = 2)]
    passes: usize,
    /// Comma-separated noise densities, one report row each
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.3])]
    density: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    salt_fraction: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report path (default: <output>/report.json)
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_parser = ["ramp", "radial", "structured"])]
    fixture: String,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 128)]
    width: usize,
    #[arg(long, default_value_t = 128)]
    height: usize,
}

enum Failure {
    /// Bad arguments, unreadable input or unwritable output. Exit code 2.
    Usage(String),
    Internal(String),
}

impl From<irdenoise::Error> for Failure {
    fn from(e: irdenoise::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read_image(path: &Path) -> Result<GrayImage, Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot open {}: {e}", path.display())))?;
    load_pgm(&bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    path.with_file_name(format!("{stem}{suffix}"))
}

fn add_noise(args: AddNoiseArgs) -> CmdResult {
    let img = read_image(&args.input)?;
    let spec = NoiseSpec::new(
        args.noise.density,
        args.noise.salt_fraction,
        args.noise.seed,
    )?;
    let (noisy, mask) = inject_impulse(&img, &spec)?;
    let mask_path = args
        .mask
        .unwrap_or_else(|| sibling(&args.output, "_mask.pgm"));
    write_file(&args.output, &save_pgm(&noisy))?;
    write_file(&mask_path, &save_pgm(&mask.to_image()))?;
    println!("corrupted {} of {} pixels", mask.count(), img.len());
    Ok(())
}

fn filter(args: FilterArgs) -> CmdResult {
    let img = read_image(&args.input)?;
    let spec = WindowSpec::new(args.window)?;
    let method: Method = args.method.parse()?;
    let (out, stats) = with_threads(args.threads, || run_filter(&img, spec, method, args.passes))?;
    write_file(&args.output, &save_pgm(&out))?;
    let stats = serde_json::to_value(stats).map_err(|e| Failure::Internal(e.to_string()))?;
    let json = json!({
        "method": method.name(),
        "window": spec.side(),
        "width": img.width(),
        "height": img.height(),
        "stats": stats,
    });
    let text = serde_json::to_string_pretty(&json).map_err(|e| Failure::Internal(e.to_string()))?;
    if let Some(path) = &args.report {
        write_file(path, text.as_bytes())?;
    }
    println!("{text}");
    Ok(())
}

fn bench(args: BenchArgs) -> CmdResult {
    let img = read_image(&args.input)?;
    if args.passes == 0 {
        return Err(Failure::Usage("--passes must be at least 1".into()));
    }
    let config = BenchConfig {
        window: WindowSpec::new(args.window)?,
        passes: args.passes,
        densities: args.density,
        salt_fraction: args.salt_fraction,
        seed: args.seed,
        ..BenchConfig::default()
    };
    let outcome = with_threads(args.threads, || run_bench(&img, &config))?;
    fs::create_dir_all(&args.output)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", args.output.display())))?;
    for run in &outcome.runs {
        let tag = density_tag(run.density);
        let images = [
            ("noisy", &run.noisy),
            ("mf", &run.mf),
            ("fnr", &run.fnr),
            ("mask", &run.mask.to_image()),
        ];
        for (name, image) in images {
            write_file(
                &args.output.join(format!("{tag}_{name}.pgm")),
                &save_pgm(image),
            )?;
        }
    }
    let report = outcome.report.to_json();
    let report_path = args
        .report
        .unwrap_or_else(|| args.output.join("report.json"));
    write_file(&report_path, report.as_bytes())?;
    for row in &outcome.report.rows {
        println!(
            "density {:.2}: noisy {:.2} dB | MF {:.2} dB, {} sorts | FNR {:.2} dB, {} sorts | gain {:+.2} dB",
            row.density,
            row.noisy.psnr_db,
            row.mf.quality.psnr_db,
            row.mf.stats.sorts,
            row.fnr.quality.psnr_db,
            row.fnr.stats.sorts,
            row.psnr_gain_db(),
        );
    }
    println!("report written to {}", report_path.display());
    Ok(())
}

fn synth(args: SynthArgs) -> CmdResult {
    let fixture: Fixture = args.fixture.parse()?;
    let img = fixture.generate(args.width, args.height)?;
    write_file(&args.output, &save_pgm(&img))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::AddNoise(a) => add_noise(a),
        Command::Filter(a) => filter(a),
        Command::Bench(a) => bench(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
