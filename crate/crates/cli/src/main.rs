use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use riesz_denoise::sweep::{self, format_psnr, SweepConfig};
use riesz_denoise::{
    denoise_with, inject_spn, read_pgm, write_pgm, Error, FilterKind, FilterParams, NoiseSpec,
    QualityReport, SsimMode, SsimParams,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

/// Salt-and-pepper noise injection, adaptive Riesz-mean denoising and
/// density-sweep benchmarks for 8-bit PGM images.
#[derive(Parser, Debug)]
#[command(name = "riesz-denoise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Corrupt an image with seeded salt-and-pepper noise.
    AddNoise(AddNoiseArgs),
    /// Denoise an image with one filter.
    Denoise(DenoiseArgs),
    /// Run a corpus density sweep and write a CSV table.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct AddNoiseArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Fraction of pixels to corrupt, in [0, 1].
    #[arg(long, value_parser = parse_unit)]
    density: f64,
    #[arg(long)]
    seed: u64,
    /// Fraction of corrupted pixels set to 255 instead of 0.
    #[arg(long, default_value_t = 0.5, value_parser = parse_unit)]
    salt_ratio: f64,
    /// Overwrite an existing output file.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct DenoiseArgs {
    /// One of armf, damrmf, awmrmf, smf.
    #[arg(long, value_parser = parse_filter)]
    filter: FilterKind,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Clean image; prints PSNR, SSIM and runtime when given.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Override the outer-loop start radius of the adaptive filters.
    #[arg(long)]
    t_start: Option<usize>,
    /// Window radius of the median baseline.
    #[arg(long, default_value_t = 1)]
    smf_radius: usize,
    #[arg(long, value_enum, default_value_t = SsimArg::Windowed)]
    ssim_mode: SsimArg,
    /// Overwrite an existing output file.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Directory of clean *.pgm images.
    #[arg(long)]
    corpus: PathBuf,
    /// Comma-separated filter list, run in the given order.
    #[arg(long, value_delimiter = ',', value_parser = parse_filter,
          default_value = "armf,damrmf,awmrmf")]
    filters: Vec<FilterKind>,
    /// Comma-separated densities in (0, 1); defaults to 0.60..=0.95 step 0.05.
    #[arg(long, value_delimiter = ',', value_parser = parse_open_unit)]
    densities: Vec<f64>,
    /// Noise realizations per (image, filter, density) cell.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// First seed; cells use seed-base, seed-base+1, ...
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = SsimArg::Windowed)]
    ssim_mode: SsimArg,
    /// Worker threads for the filters (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SsimArg {
    Windowed,
    Global,
}

impl From<SsimArg> for SsimParams {
    fn from(a: SsimArg) -> Self {
        SsimParams {
            mode: match a {
                SsimArg::Windowed => SsimMode::Windowed,
                SsimArg::Global => SsimMode::Global,
            },
            ..SsimParams::default()
        }
    }
}

fn parse_filter(s: &str) -> Result<FilterKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn parse_open_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is outside (0, 1)"))
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFilter(_)
            | Error::FilterParam(_)
            | Error::NoiseSpec(_)
            | Error::SweepConfig(_) => Failure::Usage(e.to_string()),
            e => Failure::Data(e),
        }
    }
}

impl From<riesz_denoise::PgmError> for Failure {
    fn from(e: riesz_denoise::PgmError) -> Self {
        Failure::Data(e.into())
    }
}

fn add_noise(args: AddNoiseArgs) -> Result<(), Failure> {
    let img = read_pgm(&args.input)?;
    let spec = NoiseSpec::with_salt_fraction(args.density, args.salt_ratio, args.seed)?;
    let (noisy, record) = inject_spn(&img, &spec);
    write_pgm(&noisy, &args.output, args.force)?;
    println!("corrupted {} of {} pixels", record.len(), img.len());
    Ok(())
}

fn denoise(args: DenoiseArgs) -> Result<(), Failure> {
    let img = read_pgm(&args.input)?;
    // load the reference first so a bad path fails before any work
    let reference = args.reference.as_ref().map(read_pgm).transpose()?;
    let params = FilterParams {
        t_start: args.t_start,
        smf_radius: args.smf_radius,
    };
    let out = denoise_with(&img, args.filter, &params)?;
    write_pgm(&out.image, &args.output, args.force)?;
    if let Some(reference) = reference {
        let r =
            QualityReport::measure(&reference, &out.image, out.seconds, &args.ssim_mode.into())?;
        println!(
            "PSNR={} SSIM={:.6} SECONDS={:.6}",
            format_psnr(r.psnr),
            r.ssim,
            r.seconds
        );
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    let config = SweepConfig {
        filters: args.filters,
        densities: if args.densities.is_empty() {
            sweep::default_densities()
        } else {
            args.densities
        },
        seeds: (args.seed_base..args.seed_base + args.seeds).collect(),
        ssim: args.ssim_mode.into(),
        params: FilterParams::default(),
    };
    config.validate()?;

    let corpus = sweep::load_corpus(&args.corpus)?;
    for (path, e) in &corpus.failures {
        eprintln!("skipping {}: {e}", path.display());
    }
    let run = || sweep::run_sweep(&corpus.images, &config);
    let (result, failures) = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    for (id, e) in &failures {
        eprintln!("skipping {id}: {e}");
    }
    result.write_csv(&args.output).map_err(Error::from)?;
    eprintln!(
        "wrote {} rows for {} images to {}",
        result.rows.len(),
        corpus.images.len() - failures.len(),
        args.output.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::AddNoise(a) => add_noise(a),
        Command::Denoise(a) => denoise(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
