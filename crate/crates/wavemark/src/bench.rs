//! Robustness benchmark runner.
//!
//! Runs an attack-grid suite for both methods over a set of images, five
//! runs per cell by default. Run `r` uses payload seed `key.seed + r`, and
//! AWGN cells additionally derive their noise seed from that payload seed,
//! so a benchmark invocation is reproducible end to end from the key seeds
//! alone.
//!
//! Two tables come out of a run: per-run rows
//! (`image,method,attack_kind,attack_params,run,ber_percent,psnr_db,corr_coeff,wall_ms,error`)
//! and a summary with the per-cell means of the measurement columns. The
//! measurement columns are deterministic; `wall_ms` is honest wall time and
//! is the one column that varies between invocations, which is why the
//! summary omits it. `psnr_db` is the distortion of the attacked image
//! relative to the original; an infinite PSNR serializes as `inf`. Floats
//! are printed in shortest round-trip form, and each summary mean is the
//! left-to-right sum of its run values divided by the run count, so every
//! summary cell is exactly recomputable from the per-run CSV.

use crate::attack::{AttackSpec, CropRect};
use crate::error::Result;
use crate::image::{quantize_to_8bit, GrayImage, PixelBuffer8};
use crate::metrics::{ber, corr_coeff, psnr, Psnr};
use crate::rng::derive_seed;
use crate::watermark::{capacity, detect, embed, generate_watermark, Method, WatermarkKey};
use crate::{error::Error, watermark::BitSequence};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const DEFAULT_RUNS: u32 = 5;

/// Attack-grid selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// JPEG qualities 10..=90 step 10.
    Jpeg,
    /// AWGN standard deviations {5, 10, 15, 20, 25, 30}.
    Noise,
    /// Rotation angles {0.5, -0.5, 1, -1, 5, -5, 10, 30} degrees.
    Rotation,
    /// Scale factors {0.9, 0.8, 0.7, 0.6, 0.5}.
    Scaling,
    /// Mean and median windows {3, 5, 7}.
    Filtering,
    /// Corner 1/16-area and centered 1/4-area fills.
    Crop,
    /// All of the above.
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Jpeg => "jpeg",
            Suite::Noise => "noise",
            Suite::Rotation => "rotation",
            Suite::Scaling => "scaling",
            Suite::Filtering => "filtering",
            Suite::Crop => "crop",
            Suite::All => "all",
        }
    }

    /// The grid cells for an image of the given dimensions. AWGN cells
    /// carry a placeholder noise seed that [`run_bench`] resolves per run.
    pub fn cells(&self, width: usize, height: usize) -> Vec<AttackSpec> {
        match self {
            Suite::Jpeg => (1..=9)
                .map(|q| AttackSpec::Jpeg { quality: q * 10 })
                .collect(),
            Suite::Noise => [5.0, 10.0, 15.0, 20.0, 25.0, 30.0]
                .iter()
                .map(|&sigma| AttackSpec::Awgn {
                    sigma,
                    noise_seed: 0,
                })
                .collect(),
            Suite::Rotation => [0.5, -0.5, 1.0, -1.0, 5.0, -5.0, 10.0, 30.0]
                .iter()
                .map(|&angle_degrees| AttackSpec::Rotate { angle_degrees })
                .collect(),
            Suite::Scaling => [0.9, 0.8, 0.7, 0.6, 0.5]
                .iter()
                .map(|&factor| AttackSpec::Scale { factor })
                .collect(),
            Suite::Filtering => {
                let mut cells: Vec<AttackSpec> = [3, 5, 7]
                    .iter()
                    .map(|&window| AttackSpec::MeanFilter { window })
                    .collect();
                cells.extend([3, 5, 7].iter().map(|&window| AttackSpec::MedianFilter { window }));
                cells
            }
            Suite::Crop => vec![
                AttackSpec::Crop {
                    rect: CropRect {
                        x: 0,
                        y: 0,
                        width: width / 4,
                        height: height / 4,
                    },
                    fill: 0,
                },
                AttackSpec::Crop {
                    rect: CropRect {
                        x: width / 4,
                        y: height / 4,
                        width: width / 2,
                        height: height / 2,
                    },
                    fill: 0,
                },
            ],
            Suite::All => {
                let mut cells = Vec::new();
                for suite in [
                    Suite::Jpeg,
                    Suite::Noise,
                    Suite::Rotation,
                    Suite::Scaling,
                    Suite::Filtering,
                    Suite::Crop,
                ] {
                    cells.extend(suite.cells(width, height));
                }
                cells
            }
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jpeg" => Ok(Suite::Jpeg),
            "noise" | "awgn" => Ok(Suite::Noise),
            "rotation" | "rotate" => Ok(Suite::Rotation),
            "scaling" | "scale" => Ok(Suite::Scaling),
            "filtering" | "filter" => Ok(Suite::Filtering),
            "crop" => Ok(Suite::Crop),
            "all" => Ok(Suite::All),
            _ => Err(Error::UnknownSuite { name: s.into() }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    pub runs: u32,
    pub m1: WatermarkKey,
    pub m2: WatermarkKey,
}

impl BenchConfig {
    /// Default keys for both methods, five runs.
    pub fn new(suite: Suite) -> Self {
        BenchConfig {
            suite,
            runs: DEFAULT_RUNS,
            m1: WatermarkKey::method1_defaults(crate::watermark::DEFAULT_SEED),
            m2: WatermarkKey::method2_defaults(crate::watermark::DEFAULT_SEED),
        }
    }
}

/// One (image, method, attack, run) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub method: Method,
    pub attack_kind: &'static str,
    pub attack_params: String,
    pub run: u32,
    pub ber_percent: Option<f64>,
    pub psnr_db: Option<Psnr>,
    pub corr_coeff: Option<f64>,
    pub wall_ms: u64,
    pub error: Option<String>,
}

/// Per-cell mean of the run rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub image: String,
    pub method: Method,
    pub attack_kind: &'static str,
    pub attack_params: String,
    pub ber_percent: Option<f64>,
    pub psnr_db: Option<Psnr>,
    pub corr_coeff: Option<f64>,
    pub error: Option<String>,
}

/// Seedless cell rendering used for summary grouping: the per-run noise
/// seed is a derived quantity, not part of the cell identity.
fn cell_params(cell: &AttackSpec) -> String {
    match cell {
        AttackSpec::Awgn { sigma, .. } => format!("sigma={sigma}"),
        other => other.params_string(),
    }
}

fn resolve_for_run(cell: &AttackSpec, payload_seed: u64) -> AttackSpec {
    match cell {
        AttackSpec::Awgn { sigma, .. } => AttackSpec::Awgn {
            sigma: *sigma,
            noise_seed: derive_seed(payload_seed),
        },
        other => other.clone(),
    }
}

struct RunOutcome {
    ber_percent: f64,
    psnr_db: Psnr,
    corr: f64,
}

fn evaluate_cell(
    original: &GrayImage,
    original8: &PixelBuffer8,
    watermarked: &GrayImage,
    bits: &BitSequence,
    key: &WatermarkKey,
    attack: &AttackSpec,
) -> Result<RunOutcome> {
    let attacked = attack.apply(watermarked)?;
    let report = detect(original, &attacked, key)?;
    Ok(RunOutcome {
        ber_percent: ber(bits, &report.bits)?,
        psnr_db: psnr(original8, &quantize_to_8bit(&attacked))?,
        corr: corr_coeff(bits, &report.bits)?,
    })
}

/// Runs the suite over every image for both methods.
///
/// Per-image failures (bad geometry, undersized selection) become rows with
/// the `error` column set; the run continues with the next image.
pub fn run_bench(
    images: &[(String, PixelBuffer8)],
    config: &BenchConfig,
) -> (Vec<BenchRow>, Vec<SummaryRow>) {
    assert!(config.runs >= 1, "bench needs at least one run");
    let mut rows = Vec::new();
    let mut summaries = Vec::new();

    for (name, image8) in images {
        let original = image8.to_gray();
        let cells = config.suite.cells(image8.width(), image8.height());
        for key in [&config.m1, &config.m2] {
            let method = key.method;

            // payloads and watermarked images are shared across cells
            let prepared: std::result::Result<Vec<(BitSequence, GrayImage)>, Error> = (0..config
                .runs)
                .map(|run| {
                    let payload_seed = key.seed.wrapping_add(u64::from(run));
                    let cap = capacity(key, image8.width(), image8.height())?;
                    let bits = generate_watermark(payload_seed, cap);
                    let marked = embed(&original, &bits, key)?;
                    Ok((bits, quantize_to_8bit(&marked).to_gray()))
                })
                .collect();

            match prepared {
                Ok(prepared) => {
                    for cell in &cells {
                        let mut cell_rows = Vec::with_capacity(config.runs as usize);
                        for (run, (bits, watermarked)) in prepared.iter().enumerate() {
                            let payload_seed = key.seed.wrapping_add(run as u64);
                            let resolved = resolve_for_run(cell, payload_seed);
                            let started = Instant::now();
                            let outcome = evaluate_cell(
                                &original,
                                image8,
                                watermarked,
                                bits,
                                key,
                                &resolved,
                            );
                            let wall_ms = started.elapsed().as_millis() as u64;
                            let row = match outcome {
                                Ok(o) => BenchRow {
                                    image: name.clone(),
                                    method,
                                    attack_kind: resolved.kind(),
                                    attack_params: resolved.params_string(),
                                    run: run as u32,
                                    ber_percent: Some(o.ber_percent),
                                    psnr_db: Some(o.psnr_db),
                                    corr_coeff: Some(o.corr),
                                    wall_ms,
                                    error: None,
                                },
                                Err(e) => BenchRow {
                                    image: name.clone(),
                                    method,
                                    attack_kind: resolved.kind(),
                                    attack_params: resolved.params_string(),
                                    run: run as u32,
                                    ber_percent: None,
                                    psnr_db: None,
                                    corr_coeff: None,
                                    wall_ms,
                                    error: Some(e.to_string()),
                                },
                            };
                            cell_rows.push(row);
                        }
                        summaries.push(summarize_cell(name, method, cell, &cell_rows));
                        rows.extend(cell_rows);
                    }
                }
                Err(e) => {
                    // embedding itself is impossible for this image/method
                    let message = e.to_string();
                    for cell in &cells {
                        for run in 0..config.runs {
                            rows.push(BenchRow {
                                image: name.clone(),
                                method,
                                attack_kind: cell.kind(),
                                attack_params: cell_params(cell),
                                run,
                                ber_percent: None,
                                psnr_db: None,
                                corr_coeff: None,
                                wall_ms: 0,
                                error: Some(message.clone()),
                            });
                        }
                        summaries.push(SummaryRow {
                            image: name.clone(),
                            method,
                            attack_kind: cell.kind(),
                            attack_params: cell_params(cell),
                            ber_percent: None,
                            psnr_db: None,
                            corr_coeff: None,
                            error: Some(message.clone()),
                        });
                    }
                }
            }
        }
    }
    (rows, summaries)
}

fn summarize_cell(
    image: &str,
    method: Method,
    cell: &AttackSpec,
    cell_rows: &[BenchRow],
) -> SummaryRow {
    let failed = cell_rows.iter().find_map(|r| r.error.clone());
    if let Some(error) = failed {
        return SummaryRow {
            image: image.to_string(),
            method,
            attack_kind: cell.kind(),
            attack_params: cell_params(cell),
            ber_percent: None,
            psnr_db: None,
            corr_coeff: None,
            error: Some(error),
        };
    }
    let runs = cell_rows.len() as f64;
    let ber_mean = cell_rows
        .iter()
        .map(|r| r.ber_percent.unwrap())
        .sum::<f64>()
        / runs;
    let corr_mean = cell_rows
        .iter()
        .map(|r| r.corr_coeff.unwrap())
        .sum::<f64>()
        / runs;
    let psnr_mean = if cell_rows
        .iter()
        .any(|r| r.psnr_db.unwrap().is_infinite())
    {
        Psnr::Infinite
    } else {
        Psnr::Finite(
            cell_rows
                .iter()
                .map(|r| r.psnr_db.unwrap().as_db().unwrap())
                .sum::<f64>()
                / runs,
        )
    };
    SummaryRow {
        image: image.to_string(),
        method,
        attack_kind: cell.kind(),
        attack_params: cell_params(cell),
        ber_percent: Some(ber_mean),
        psnr_db: Some(psnr_mean),
        corr_coeff: Some(corr_mean),
        error: None,
    }
}

fn opt_float(v: &Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_psnr(v: &Option<Psnr>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Per-run CSV (headers included).
pub fn runs_to_csv(rows: &[BenchRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "image",
            "method",
            "attack_kind",
            "attack_params",
            "run",
            "ber_percent",
            "psnr_db",
            "corr_coeff",
            "wall_ms",
            "error",
        ])
        .expect("csv header");
    for r in rows {
        writer
            .write_record([
                r.image.as_str(),
                r.method.as_str(),
                r.attack_kind,
                r.attack_params.as_str(),
                &r.run.to_string(),
                &opt_float(&r.ber_percent),
                &opt_psnr(&r.psnr_db),
                &opt_float(&r.corr_coeff),
                &r.wall_ms.to_string(),
                r.error.as_deref().unwrap_or(""),
            ])
            .expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv is utf-8")
}

/// Summary CSV (headers included).
pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "image",
            "method",
            "attack_kind",
            "attack_params",
            "ber_percent",
            "psnr_db",
            "corr_coeff",
            "error",
        ])
        .expect("csv header");
    for r in rows {
        writer
            .write_record([
                r.image.as_str(),
                r.method.as_str(),
                r.attack_kind,
                r.attack_params.as_str(),
                &opt_float(&r.ber_percent),
                &opt_psnr(&r.psnr_db),
                &opt_float(&r.corr_coeff),
                r.error.as_deref().unwrap_or(""),
            ])
            .expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv is utf-8")
}

/// Sibling path of the per-run CSV holding the summary:
/// `results.csv` -> `results_summary.csv`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "bench".into());
    let name = match path.extension() {
        Some(ext) => format!("{stem}_summary.{}", ext.to_string_lossy()),
        None => format!("{stem}_summary"),
    };
    path.with_file_name(name)
}
