//! Mean PSNR/SSIM/time of every filter on one image at one noise density.
//!
//! Usage: cargo run --release --example compare_filters -- data/lena.pgm 0.9 5

use riesz_denoise::{
    aggregate, denoise, inject_spn, read_pgm, FilterKind, NoiseSpec, QualityReport, SsimParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    if args.len() < 2 {
        eprintln!("usage: compare_filters <image.pgm> [density] [seeds]");
        std::process::exit(1);
    }
    let clean = read_pgm(&args[1])?;
    let density: f64 = args.get(2).map_or(Ok(0.9), |s| s.parse())?;
    let seeds: u64 = args.get(3).map_or(Ok(5), |s| s.parse())?;

    let (noisy, _) = inject_spn(&clean, &NoiseSpec::new(density, 0)?);
    let noisy_report = QualityReport::measure(&clean, &noisy, 0.0, &SsimParams::default())?;
    println!(
        "noisy        PSNR {:8.4}  SSIM {:.4}",
        noisy_report.psnr, noisy_report.ssim
    );

    for kind in FilterKind::ALL {
        let mut reports = Vec::new();
        for seed in 0..seeds {
            let (noisy, _) = inject_spn(&clean, &NoiseSpec::new(density, seed)?);
            let out = denoise(&noisy, kind)?;
            reports.push(QualityReport::measure(
                &clean,
                &out.image,
                out.seconds,
                &SsimParams::default(),
            )?);
        }
        let m = aggregate(&reports)?;
        println!(
            "{:<12} PSNR {:8.4}  SSIM {:.4}  {:.3} s",
            kind.name(),
            m.psnr,
            m.ssim,
            m.seconds
        );
    }
    Ok(())
}
