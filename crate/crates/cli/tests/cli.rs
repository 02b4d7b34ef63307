use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use riesz_denoise::{read_pgm, write_pgm, GrayImage};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_riesz-denoise"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn sample(dir: &Path, name: &str, size: usize) -> PathBuf {
    let img = GrayImage::new(
        size,
        size,
        (0..size * size)
            .map(|i| (10 + (i * 7) % 230) as u8)
            .collect(),
    )
    .unwrap();
    let path = dir.join(name);
    write_pgm(&img, &path, false).unwrap();
    path
}

#[test]
fn add_noise_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 20);
    let (a, b) = (dir.path().join("a.pgm"), dir.path().join("b.pgm"));
    for out in [&a, &b] {
        let o = run(&[
            "add-noise",
            "--input",
            p(&input),
            "--output",
            p(out),
            "--density",
            "0.9",
            "--seed",
            "42",
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), "corrupted 360 of 400 pixels");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(read_pgm(&a).unwrap().noisy_count(), 360);
}

#[test]
fn zero_density_copies_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 8);
    let out = dir.path().join("out.pgm");
    let o = run(&[
        "add-noise",
        "--input",
        p(&input),
        "--output",
        p(&out),
        "--density",
        "0",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(read_pgm(&out).unwrap(), read_pgm(&input).unwrap());
}

#[test]
fn out_of_range_density_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 8);
    let out = dir.path().join("out.pgm");
    let o = run(&[
        "add-noise",
        "--input",
        p(&input),
        "--output",
        p(&out),
        "--density",
        "1.5",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("1.5"));
    assert!(!out.exists());
}

#[test]
fn unknown_filter_lists_valid_names() {
    let o = run(&[
        "denoise", "--filter", "bogus", "--input", "x.pgm", "--output", "y.pgm",
    ]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    for name in ["armf", "damrmf", "awmrmf", "smf"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn clean_image_passes_through_awmrmf() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 12);
    let out = dir.path().join("out.pgm");
    let o = run(&[
        "denoise",
        "--filter",
        "awmrmf",
        "--input",
        p(&input),
        "--output",
        p(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&input).unwrap());
}

#[test]
fn reference_prints_one_metrics_line() {
    let dir = tempfile::tempdir().unwrap();
    let clean = sample(dir.path(), "clean.pgm", 24);
    let noisy = dir.path().join("noisy.pgm");
    let out = dir.path().join("out.pgm");
    run(&[
        "add-noise",
        "--input",
        p(&clean),
        "--output",
        p(&noisy),
        "--density",
        "0.7",
        "--seed",
        "3",
    ]);
    let o = run(&[
        "denoise",
        "--filter",
        "armf",
        "--input",
        p(&noisy),
        "--output",
        p(&out),
        "--reference",
        p(&clean),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let fields: Vec<&str> = lines[0].split(' ').collect();
    assert!(fields[0].starts_with("PSNR="));
    assert!(fields[1].starts_with("SSIM="));
    assert!(fields[2].starts_with("SECONDS="));
    let psnr: f64 = fields[0][5..].parse().unwrap();
    assert!(psnr > 10.0);
}

#[test]
fn existing_output_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 8);
    let out = sample(dir.path(), "out.pgm", 6);
    let args = [
        "add-noise",
        "--input",
        p(&input),
        "--output",
        p(&out),
        "--density",
        "0.5",
        "--seed",
        "1",
    ];
    let o = run(&args);
    assert_eq!(code(&o), 2);
    assert_eq!(read_pgm(&out).unwrap().width(), 6);
    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(code(&run(&forced)), 0);
    assert_eq!(read_pgm(&out).unwrap().width(), 8);
}

#[test]
fn bad_pgm_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pgm");
    std::fs::write(&bad, b"P2 2 2 255\n1 2 3 4").unwrap();
    let out = dir.path().join("out.pgm");
    let o = run(&[
        "denoise",
        "--filter",
        "armf",
        "--input",
        p(&bad),
        "--output",
        p(&out),
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "denoise",
        "--filter",
        "armf",
        "--input",
        p(&dir.path().join("missing.pgm")),
        "--output",
        p(&out),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn too_small_image_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = sample(dir.path(), "in.pgm", 4);
    let o = run(&[
        "denoise",
        "--filter",
        "damrmf",
        "--input",
        p(&input),
        "--output",
        p(&dir.path().join("o.pgm")),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sweep_writes_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    sample(&corpus, "img.pgm", 16);
    let csv = dir.path().join("out.csv");
    let o = run(&[
        "sweep",
        "--corpus",
        p(&corpus),
        "--filters",
        "armf",
        "--densities",
        "0.6,0.95",
        "--seeds",
        "1",
        "--output",
        p(&csv),
        "--threads",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "image,filter,density,seed,psnr_db,ssim,mse,seconds"
    );
    // two data rows, two density means, one grand mean
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("img,armf,0.60,0,"));
    assert!(lines[2].starts_with("img,armf,0.95,0,"));
    assert!(lines[5].starts_with("mean,armf,all,all,"));
}

#[test]
fn sweep_rejects_bad_density() {
    let o = run(&[
        "sweep",
        "--corpus",
        ".",
        "--densities",
        "0.6,1.0",
        "--output",
        "x.csv",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn help_and_missing_args() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["sweep", "--help"])), 0);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["add-noise"])), 1);
}
