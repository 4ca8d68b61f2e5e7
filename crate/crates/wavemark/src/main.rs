//! Command-line front end: thin wiring around the library pipeline.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/format error, 3 internal
//! invariant failure.

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use wavemark::attack::AttackSpec;
use wavemark::bench::{run_bench, runs_to_csv, summary_path, summary_to_csv, BenchConfig, Suite};
use wavemark::keyfile::{load_key, save_key};
use wavemark::report::ReportFile;
use wavemark::watermark::{
    capacity, detect, embed, generate_watermark, BitSequence, Method, WatermarkKey,
    DEFAULT_EPSILON, DEFAULT_SEED,
};
use wavemark::{pgm, quantize_to_8bit, CropRect};

const EXIT_USAGE: i32 = 1;
const EXIT_DATA: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

struct CliError {
    code: i32,
    message: String,
}

fn usage(e: impl Display) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn data(e: impl Display) -> CliError {
    CliError {
        code: EXIT_DATA,
        message: e.to_string(),
    }
}

fn internal(e: impl Display) -> CliError {
    CliError {
        code: EXIT_INTERNAL,
        message: format!("internal invariant failure: {e}"),
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "wavemark",
    version,
    about = "Block-based wavelet-domain image watermarking toolkit"
)]
struct Cli {
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,

    /// Suppress informational output.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    M1,
    M2,
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackKind {
    Jpeg,
    Awgn,
    Mean,
    Median,
    Rotate,
    Scale,
    Crop,
}

#[derive(Subcommand)]
enum Command {
    /// Write a watermark key file.
    GenKey {
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Strength factor (> 1). Defaults: 1.01 for m1, 1.025 for m2.
        #[arg(long)]
        alpha: Option<f64>,
        /// Block side in pixels (power of two). Defaults: 32 for m1, 16 for m2.
        #[arg(long)]
        block_size: Option<usize>,
        /// Decomposition depth. Default: log2(block_size).
        #[arg(long)]
        levels: Option<u32>,
        /// Number of embedding blocks (m2 only). Default: 256.
        #[arg(long)]
        num_blocks: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Detection guard for near-zero coefficients.
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Print the payload capacity for a WxH geometry, e.g. 512x512.
        #[arg(long)]
        geometry: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed a payload into a PGM image.
    Embed {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Payload file of '0'/'1' characters; generated from the key seed
        /// and written next to the output when omitted.
        #[arg(long)]
        bits: Option<PathBuf>,
    },
    /// Apply a deterministic attack to a PGM image.
    Attack {
        #[arg(long = "type", value_enum)]
        kind: AttackKind,
        /// JPEG quality 1..=100.
        #[arg(long)]
        quality: Option<u32>,
        /// Noise standard deviation.
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 0)]
        noise_seed: u64,
        /// Filter window (odd, >= 3).
        #[arg(long)]
        window: Option<usize>,
        /// Rotation angle in degrees.
        #[arg(long)]
        angle: Option<f64>,
        /// Scale factor in (0, 1].
        #[arg(long)]
        factor: Option<f64>,
        /// Crop rectangle as x,y,w,h.
        #[arg(long)]
        rect: Option<String>,
        /// Crop fill value.
        #[arg(long, default_value_t = 0)]
        fill: u8,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Recover the payload from a received image (non-blind).
    Detect {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        received: PathBuf,
        /// Expected payload; adds BER and correlation to the report.
        #[arg(long)]
        expected_bits: Option<PathBuf>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Run an attack-grid robustness benchmark over a directory of images.
    Bench {
        #[arg(long)]
        images: PathBuf,
        /// jpeg | noise | rotation | scaling | filtering | crop | all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        out: PathBuf,
        /// Key file for Method 1 (defaults to the built-in m1 key).
        #[arg(long)]
        m1_key: Option<PathBuf>,
        /// Key file for Method 2 (defaults to the built-in m2 key).
        #[arg(long)]
        m2_key: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        runs: u32,
    },
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => match run(cli) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {}", e.message);
                e.code
            }
        },
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                0
            } else {
                eprint!("{e}");
                EXIT_USAGE
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> CliResult {
    let ctx = Context {
        force: cli.force,
        quiet: cli.quiet,
    };
    match cli.command {
        Command::GenKey {
            method,
            alpha,
            block_size,
            levels,
            num_blocks,
            seed,
            epsilon,
            geometry,
            out,
        } => gen_key(
            &ctx, method, alpha, block_size, levels, num_blocks, seed, epsilon, geometry, &out,
        ),
        Command::Embed {
            key,
            input,
            output,
            bits,
        } => embed_cmd(&ctx, &key, &input, &output, bits.as_deref()),
        Command::Attack {
            kind,
            quality,
            sigma,
            noise_seed,
            window,
            angle,
            factor,
            rect,
            fill,
            input,
            output,
        } => {
            let spec = build_attack_spec(
                kind, quality, sigma, noise_seed, window, angle, factor, rect, fill,
            )?;
            attack_cmd(&ctx, &spec, &input, &output)
        }
        Command::Detect {
            key,
            original,
            received,
            expected_bits,
            report,
        } => detect_cmd(
            &ctx,
            &key,
            &original,
            &received,
            expected_bits.as_deref(),
            &report,
        ),
        Command::Bench {
            images,
            suite,
            out,
            m1_key,
            m2_key,
            runs,
        } => bench_cmd(
            &ctx,
            &images,
            &suite,
            &out,
            m1_key.as_deref(),
            m2_key.as_deref(),
            runs,
        ),
    }
}

struct Context {
    force: bool,
    quiet: bool,
}

impl Context {
    fn info(&self, line: impl Display) {
        if !self.quiet {
            println!("{line}");
        }
    }

    fn ensure_writable(&self, path: &Path) -> CliResult {
        if path.exists() && !self.force {
            return Err(data(format!(
                "refusing to overwrite {}; pass --force",
                path.display()
            )));
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn gen_key(
    ctx: &Context,
    method: MethodArg,
    alpha: Option<f64>,
    block_size: Option<usize>,
    levels: Option<u32>,
    num_blocks: Option<usize>,
    seed: u64,
    epsilon: f64,
    geometry: Option<String>,
    out: &Path,
) -> CliResult {
    let mut key = match method {
        MethodArg::M1 => WatermarkKey::method1_defaults(seed),
        MethodArg::M2 => WatermarkKey::method2_defaults(seed),
    };
    if matches!(method, MethodArg::M1) && num_blocks.is_some() {
        return Err(usage("--num-blocks applies to method m2 only"));
    }
    if let Some(alpha) = alpha {
        key.alpha = alpha;
    }
    if let Some(block_size) = block_size {
        key.block_size = block_size;
        // default depth follows the block size unless pinned explicitly
        if levels.is_none() && block_size.is_power_of_two() && block_size > 1 {
            key.levels = block_size.trailing_zeros();
        }
    }
    if let Some(levels) = levels {
        key.levels = levels;
    }
    if let Some(n) = num_blocks {
        key.num_blocks = Some(n);
    }
    key.epsilon = epsilon;
    key.validate().map_err(usage)?;

    if let Some(geometry) = &geometry {
        let (width, height) = parse_geometry(geometry)?;
        let bits = capacity(&key, width, height).map_err(usage)?;
        ctx.info(format!("capacity at {width}x{height}: {bits} bits"));
    }

    ctx.ensure_writable(out)?;
    save_key(&key, out).map_err(data)?;
    ctx.info(format!("wrote key: {}", out.display()));
    Ok(())
}

fn parse_geometry(text: &str) -> Result<(usize, usize), CliError> {
    let (w, h) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| usage(format!("geometry '{text}' is not WxH")))?;
    let width = w
        .trim()
        .parse()
        .map_err(|_| usage(format!("geometry width '{w}' is not a positive integer")))?;
    let height = h
        .trim()
        .parse()
        .map_err(|_| usage(format!("geometry height '{h}' is not a positive integer")))?;
    if width == 0 || height == 0 {
        return Err(usage(format!("geometry '{text}' has a zero side")));
    }
    Ok((width, height))
}

fn embed_cmd(
    ctx: &Context,
    key_path: &Path,
    input: &Path,
    output: &Path,
    bits_path: Option<&Path>,
) -> CliResult {
    let key = load_key(key_path).map_err(data)?;
    let input8 = pgm::load_pgm(input).map_err(data)?;
    let original = input8.to_gray();
    let cap = capacity(&key, original.width(), original.height()).map_err(data)?;

    let sidecar = sidecar_path(output);
    ctx.ensure_writable(output)?;
    let payload = match bits_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| data(wavemark::Error::io(path, e)))?;
            text.trim().parse::<BitSequence>().map_err(data)?
        }
        None => {
            ctx.ensure_writable(&sidecar)?;
            generate_watermark(key.seed, cap)
        }
    };
    if payload.len() != cap {
        return Err(data(format!(
            "payload holds {} bits but the key/image pairing carries {cap}",
            payload.len()
        )));
    }

    let marked = embed(&original, &payload, &key).map_err(data)?;
    let marked8 = quantize_to_8bit(&marked);
    pgm::save_pgm(&marked8, output).map_err(data)?;
    if bits_path.is_none() {
        std::fs::write(&sidecar, format!("{payload}\n"))
            .map_err(|e| data(wavemark::Error::io(&sidecar, e)))?;
        ctx.info(format!(
            "payload: generated {cap} bits (seed {}) -> {}",
            key.seed,
            sidecar.display()
        ));
    }
    let fidelity = wavemark::psnr(&input8, &marked8).map_err(internal)?;
    ctx.info(format!("psnr_db: {fidelity}"));
    ctx.info(format!("wrote image: {}", output.display()));
    Ok(())
}

/// Payload sidecar written next to an embed output: `<output>.bits`.
fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".bits");
    output.with_file_name(name)
}

#[allow(clippy::too_many_arguments)]
fn build_attack_spec(
    kind: AttackKind,
    quality: Option<u32>,
    sigma: Option<f64>,
    noise_seed: u64,
    window: Option<usize>,
    angle: Option<f64>,
    factor: Option<f64>,
    rect: Option<String>,
    fill: u8,
) -> Result<AttackSpec, CliError> {
    let missing = |flag: &str| usage(format!("attack type requires {flag}"));
    let spec = match kind {
        AttackKind::Jpeg => AttackSpec::Jpeg {
            quality: quality.ok_or_else(|| missing("--quality"))?,
        },
        AttackKind::Awgn => AttackSpec::Awgn {
            sigma: sigma.ok_or_else(|| missing("--sigma"))?,
            noise_seed,
        },
        AttackKind::Mean => AttackSpec::MeanFilter {
            window: window.ok_or_else(|| missing("--window"))?,
        },
        AttackKind::Median => AttackSpec::MedianFilter {
            window: window.ok_or_else(|| missing("--window"))?,
        },
        AttackKind::Rotate => AttackSpec::Rotate {
            angle_degrees: angle.ok_or_else(|| missing("--angle"))?,
        },
        AttackKind::Scale => AttackSpec::Scale {
            factor: factor.ok_or_else(|| missing("--factor"))?,
        },
        AttackKind::Crop => {
            let text = rect.ok_or_else(|| missing("--rect x,y,w,h"))?;
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(usage(format!("--rect '{text}' is not x,y,w,h")));
            }
            let mut nums = [0usize; 4];
            for (slot, part) in nums.iter_mut().zip(&parts) {
                *slot = part
                    .parse()
                    .map_err(|_| usage(format!("--rect component '{part}' is not an integer")))?;
            }
            AttackSpec::Crop {
                rect: CropRect {
                    x: nums[0],
                    y: nums[1],
                    width: nums[2],
                    height: nums[3],
                },
                fill,
            }
        }
    };
    spec.validate_params().map_err(usage)?;
    Ok(spec)
}

fn attack_cmd(ctx: &Context, spec: &AttackSpec, input: &Path, output: &Path) -> CliResult {
    ctx.ensure_writable(output)?;
    let image = pgm::load_pgm(input).map_err(data)?.to_gray();
    let attacked = spec.apply(&image).map_err(data)?;
    pgm::save_pgm(&quantize_to_8bit(&attacked), output).map_err(data)?;
    ctx.info(format!(
        "attack: kind={} {}",
        spec.kind(),
        spec.params_string()
    ));
    ctx.info(format!("wrote image: {}", output.display()));
    Ok(())
}

fn detect_cmd(
    ctx: &Context,
    key_path: &Path,
    original_path: &Path,
    received_path: &Path,
    expected_bits: Option<&Path>,
    report_path: &Path,
) -> CliResult {
    let key = load_key(key_path).map_err(data)?;
    ctx.ensure_writable(report_path)?;
    let original = pgm::load_pgm(original_path).map_err(data)?.to_gray();
    let received = pgm::load_pgm(received_path).map_err(data)?.to_gray();
    let expected = match expected_bits {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| data(wavemark::Error::io(path, e)))?;
            Some(text.trim().parse::<BitSequence>().map_err(data)?)
        }
        None => None,
    };
    let detection = detect(&original, &received, &key).map_err(data)?;
    let file = ReportFile::build(&detection, &key, expected.as_ref()).map_err(data)?;
    file.save(report_path).map_err(data)?;
    if let (Some(ber), Some(cc)) = (file.ber_percent, file.corr_coeff) {
        ctx.info(format!("ber_percent: {ber}"));
        ctx.info(format!("corr_coeff: {cc}"));
    }
    ctx.info(format!("wrote report: {}", report_path.display()));
    Ok(())
}

fn bench_cmd(
    ctx: &Context,
    images_dir: &Path,
    suite_name: &str,
    out: &Path,
    m1_key: Option<&Path>,
    m2_key: Option<&Path>,
    runs: u32,
) -> CliResult {
    let suite: Suite = suite_name.parse().map_err(usage)?;
    if runs == 0 {
        return Err(usage("--runs must be at least 1"));
    }
    let mut config = BenchConfig::new(suite);
    config.runs = runs;
    if let Some(path) = m1_key {
        config.m1 = load_key(path).map_err(data)?;
        if config.m1.method != Method::M1 {
            return Err(data(format!("{} is not a method M1 key", path.display())));
        }
    }
    if let Some(path) = m2_key {
        config.m2 = load_key(path).map_err(data)?;
        if config.m2.method != Method::M2 {
            return Err(data(format!("{} is not a method M2 key", path.display())));
        }
    }
    let summary_out = summary_path(out);
    ctx.ensure_writable(out)?;
    ctx.ensure_writable(&summary_out)?;

    let mut names: Vec<PathBuf> = std::fs::read_dir(images_dir)
        .map_err(|e| data(wavemark::Error::io(images_dir, e)))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .map(|e| e.eq_ignore_ascii_case("pgm"))
                .unwrap_or(false)
        })
        .collect();
    names.sort();
    if names.is_empty() {
        return Err(data(format!(
            "no .pgm images found in {}",
            images_dir.display()
        )));
    }

    let mut all_rows = Vec::new();
    let mut all_summaries = Vec::new();
    for path in &names {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match pgm::load_pgm(path) {
            Ok(buffer) => {
                let (rows, summaries) = run_bench(&[(name, buffer)], &config);
                all_rows.extend(rows);
                all_summaries.extend(summaries);
            }
            Err(e) => {
                // unloadable image: one error row in each table, keep going
                ctx.info(format!("skipping {name}: {e}"));
                all_rows.push(wavemark::bench::BenchRow {
                    image: name.clone(),
                    method: Method::M1,
                    attack_kind: "load",
                    attack_params: String::new(),
                    run: 0,
                    ber_percent: None,
                    psnr_db: None,
                    corr_coeff: None,
                    wall_ms: 0,
                    error: Some(e.to_string()),
                });
                all_summaries.push(wavemark::bench::SummaryRow {
                    image: name,
                    method: Method::M1,
                    attack_kind: "load",
                    attack_params: String::new(),
                    ber_percent: None,
                    psnr_db: None,
                    corr_coeff: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }

    std::fs::write(out, runs_to_csv(&all_rows))
        .map_err(|e| data(wavemark::Error::io(out, e)))?;
    std::fs::write(&summary_out, summary_to_csv(&all_summaries))
        .map_err(|e| data(wavemark::Error::io(&summary_out, e)))?;
    ctx.info(format!(
        "wrote {} rows: {} and summary: {}",
        all_rows.len(),
        out.display(),
        summary_out.display()
    ));
    Ok(())
}
