//! Acceptance suite: one test per criterion, each printing a PASS/SKIP
//! line (run with `cargo test --test acceptance -- --nocapture` to see
//! them).
//!
//! Criteria marked image-conditional need the standard 512x512 test
//! images; point WAVEMARK_IMAGE_DIR at a directory containing
//! goldhill.pgm, baboon.pgm, barbara.pgm, boat.pgm and lena.pgm to enable
//! them. Without the images those checks are skipped with a notice and
//! the synthetic fallbacks run instead.

use std::path::PathBuf;
use std::time::Instant;
use wavemark::attack::AttackSpec;
use wavemark::bench::summary_path;
use wavemark::rng::{derive_seed, SplitMix64};
use wavemark::synth::textured_image;
use wavemark::watermark::{
    capacity, detect, detection_threshold, embed, generate_watermark, vote_lowpass, BitSequence,
    WatermarkKey, DEFAULT_SEED,
};
use wavemark::wavelet::{dwt2d, idwt2d, FilterBank};
use wavemark::{ber, corr_coeff, psnr, quantize_to_8bit, GrayImage, Method, PixelBuffer8, Psnr};

fn pass(id: &str, detail: impl std::fmt::Display) {
    println!("[{id}] PASS - {detail}");
}

fn skip_notice(id: &str, detail: impl std::fmt::Display) {
    println!("[{id}] SKIP (image-conditional) - {detail}");
}

fn image_dir() -> Option<PathBuf> {
    std::env::var_os("WAVEMARK_IMAGE_DIR").map(PathBuf::from)
}

/// Loads `<dir>/<name>.pgm` when the image directory is configured and the
/// file exists; a configured-but-malformed image is a hard error so it
/// cannot silently skip a conditional check.
fn standard_image(name: &str) -> Option<PixelBuffer8> {
    let dir = image_dir()?;
    let path = dir.join(format!("{name}.pgm"));
    if !path.exists() {
        return None;
    }
    let buf = wavemark::pgm::load_pgm(&path)
        .unwrap_or_else(|e| panic!("failed to load {}: {e}", path.display()));
    assert_eq!(
        buf.dimensions(),
        (512, 512),
        "{name}.pgm must be 512x512"
    );
    Some(buf)
}

fn default_keys() -> [WatermarkKey; 2] {
    [
        WatermarkKey::method1_defaults(DEFAULT_SEED),
        WatermarkKey::method2_defaults(DEFAULT_SEED),
    ]
}

/// Embed with a seeded payload, store to 8 bits, attack, detect, BER.
fn attacked_ber(
    original: &GrayImage,
    key: &WatermarkKey,
    payload_seed: u64,
    attack: Option<&AttackSpec>,
) -> f64 {
    let cap = capacity(key, original.width(), original.height()).unwrap();
    let bits = generate_watermark(payload_seed, cap);
    let marked = embed(original, &bits, key).unwrap();
    let stored = quantize_to_8bit(&marked).to_gray();
    let received = match attack {
        Some(spec) => spec.apply(&stored).unwrap(),
        None => stored,
    };
    let report = detect(original, &received, key).unwrap();
    ber(&bits, &report.bits).unwrap()
}

/// Mean BER over `runs` payload seeds (`key.seed + run`).
fn mean_ber_over_runs(
    original: &GrayImage,
    key: &WatermarkKey,
    runs: u64,
    attack: &AttackSpec,
) -> f64 {
    let total: f64 = (0..runs)
        .map(|run| attacked_ber(original, key, key.seed + run, Some(attack)))
        .sum();
    total / runs as f64
}

#[test]
fn a01_perfect_reconstruction() {
    let started = Instant::now();
    let fb = FilterBank::symlet8();
    let mut worst_abs = 0.0f64;
    let mut worst_energy = 0.0f64;
    for side in [8usize, 16, 32, 64] {
        let levels = side.trailing_zeros();
        let mut rng = SplitMix64::new(side as u64);
        for _ in 0..1000 {
            let block: Vec<f64> = (0..side * side).map(|_| rng.next_range(0.0, 255.0)).collect();
            let pyramid = dwt2d(&block, side, levels, &fb).unwrap();
            assert_eq!(pyramid.total_coefficients(), side * side);

            let pixel_energy: f64 = block.iter().map(|v| v * v).sum();
            let coeff_energy: f64 = pyramid.ll().iter().map(|v| v * v).sum::<f64>()
                + pyramid
                    .details()
                    .iter()
                    .map(|d| {
                        d.lh.iter()
                            .chain(&d.hl)
                            .chain(&d.hh)
                            .map(|v| v * v)
                            .sum::<f64>()
                    })
                    .sum::<f64>();
            worst_energy = worst_energy.max((coeff_energy - pixel_energy).abs() / pixel_energy);

            let reconstructed = idwt2d(&pyramid, &fb).unwrap();
            for (a, b) in block.iter().zip(&reconstructed) {
                worst_abs = worst_abs.max((a - b).abs());
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(worst_abs < 1e-8, "round-trip max abs error {worst_abs}");
    assert!(worst_energy < 1e-9, "energy relative error {worst_energy}");
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "took {elapsed:?}, budget 10 s"
    );
    pass(
        "A1",
        format!(
            "4000 blocks: max abs error {worst_abs:.2e}, energy rel error {worst_energy:.2e}, {elapsed:?}"
        ),
    );
}

#[test]
fn a02_filter_bank_sanity() {
    let fb = FilterBank::symlet8();
    let energy: f64 = fb.analysis_low.iter().map(|h| h * h).sum();
    let dc: f64 = fb.analysis_low.iter().sum();
    let high_sum: f64 = fb.analysis_high.iter().sum();
    assert!((energy - 1.0).abs() < 1e-12, "sum h^2 = {energy}");
    assert!(
        (dc - std::f64::consts::SQRT_2).abs() < 1e-12,
        "sum h = {dc}"
    );
    assert!(high_sum.abs() < 1e-12, "sum g = {high_sum}");

    // constant-block rule: full-depth LL of a constant-c block is c * 2^L
    let c = 100.0;
    for side in [4usize, 8, 16, 32, 64] {
        let levels = side.trailing_zeros();
        let pyramid = dwt2d(&vec![c; side * side], side, levels, &fb).unwrap();
        let expected = c * f64::from(1u32 << levels);
        assert_eq!(pyramid.ll().len(), 1);
        assert!(
            (pyramid.ll()[0] - expected).abs() < 1e-9,
            "side {side}: LL {} vs {expected}",
            pyramid.ll()[0]
        );
        for bands in pyramid.details() {
            for v in bands.lh.iter().chain(&bands.hl).chain(&bands.hh) {
                assert!(v.abs() < 1e-9);
            }
        }
    }
    pass(
        "A2",
        format!("sum h^2 - 1 = {:.1e}, sum h - sqrt2 = {:.1e}, sum g = {:.1e}, constant rule holds at sides 4..64",
            energy - 1.0, dc - std::f64::consts::SQRT_2, high_sum),
    );
}

#[test]
fn a03_no_attack_round_trip() {
    let started = Instant::now();
    for key in default_keys() {
        for i in 0..20u64 {
            let original = textured_image(500 + i, 512, 512);
            let e = attacked_ber(&original, &key, key.seed + i, None);
            assert_eq!(
                e, 0.0,
                "method {} image seed {}: BER {e} != 0 through quantization",
                key.method,
                500 + i
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    pass(
        "A3",
        format!("BER = 0 on 20 textured images for both default keys, {elapsed:?}"),
    );
}

#[test]
fn a04_imperceptibility_band() {
    // unconditional: watermarked PSNR >= 40 dB on every test image
    let mut min_db = f64::INFINITY;
    for key in default_keys() {
        for i in 0..20u64 {
            let original = textured_image(500 + i, 512, 512);
            let cap = capacity(&key, 512, 512).unwrap();
            let bits = generate_watermark(key.seed + i, cap);
            let marked = embed(&original, &bits, &key).unwrap();
            let db = match psnr(&quantize_to_8bit(&original), &quantize_to_8bit(&marked)).unwrap()
            {
                Psnr::Finite(db) => db,
                Psnr::Infinite => f64::INFINITY,
            };
            assert!(
                db >= 40.0,
                "method {} image seed {}: PSNR {db} dB < 40",
                key.method,
                500 + i
            );
            min_db = min_db.min(db);
        }
    }

    // image-conditional: mean watermarked PSNR of the standard set within
    // +-3 dB of the reported per-method ranges
    let names = ["goldhill", "baboon", "barbara", "boat"];
    let images: Vec<(&str, PixelBuffer8)> = names
        .iter()
        .filter_map(|n| standard_image(n).map(|img| (*n, img)))
        .collect();
    if images.len() == names.len() {
        for (key, lo, hi) in [
            (WatermarkKey::method1_defaults(DEFAULT_SEED), 45.60, 46.45),
            (WatermarkKey::method2_defaults(DEFAULT_SEED), 47.34, 48.04),
        ] {
            let mut sum = 0.0;
            for (name, img8) in &images {
                let original = img8.to_gray();
                let cap = capacity(&key, 512, 512).unwrap();
                let bits = generate_watermark(key.seed, cap);
                let marked = embed(&original, &bits, &key).unwrap();
                let db = psnr(img8, &quantize_to_8bit(&marked))
                    .unwrap()
                    .as_db()
                    .unwrap_or(f64::INFINITY);
                println!("[A4] {} {name}: {db:.2} dB", key.method);
                sum += db;
            }
            let mean = sum / images.len() as f64;
            assert!(
                mean >= lo - 3.0 && mean <= hi + 3.0,
                "method {}: mean PSNR {mean:.2} outside [{:.2}, {:.2}]",
                key.method,
                lo - 3.0,
                hi + 3.0
            );
        }
        pass("A4", format!("all >= 40 dB (min {min_db:.2}); standard-image means inside the reported bands +-3 dB"));
    } else {
        skip_notice(
            "A4",
            "standard images absent; checked PSNR >= 40 dB on 20 synthetic images only",
        );
        pass("A4", format!("min watermarked PSNR {min_db:.2} dB >= 40"));
    }
}

#[test]
fn a05_jpeg_robustness() {
    let key = WatermarkKey::method2_defaults(DEFAULT_SEED);
    let images: Vec<GrayImage> = (0..5).map(|i| textured_image(1000 + i, 512, 512)).collect();
    let qualities: Vec<u32> = (1..=9).map(|q| q * 10).collect();
    let mut means = Vec::new();
    for &quality in &qualities {
        let spec = AttackSpec::Jpeg { quality };
        let total: f64 = images
            .iter()
            .map(|img| mean_ber_over_runs(img, &key, 5, &spec))
            .sum();
        means.push(total / images.len() as f64);
    }
    for (&quality, &mean) in qualities.iter().zip(&means) {
        if quality >= 40 {
            assert!(
                mean <= 1.0,
                "quality {quality}: mean BER {mean}% exceeds 1%"
            );
        }
    }
    for window in means.windows(2) {
        assert!(
            window[1] <= window[0],
            "BER increased with quality: {means:?}"
        );
    }
    pass(
        "A5",
        format!(
            "M2 mean BER by quality 10..90: {:?} (non-increasing, <= 1% from q40)",
            means.iter().map(|m| (m * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn a06_paper_point_check_lena() {
    let Some(lena) = standard_image("lena") else {
        skip_notice("A6", "lena.pgm absent; point-check not run");
        return;
    };
    let key = WatermarkKey::method2_defaults(DEFAULT_SEED);
    let original = lena.to_gray();
    let q10 = mean_ber_over_runs(&original, &key, 5, &AttackSpec::Jpeg { quality: 10 });
    let q20 = mean_ber_over_runs(&original, &key, 5, &AttackSpec::Jpeg { quality: 20 });
    assert!(
        (q10 - 3.91).abs() <= 3.0,
        "Lena M2 q10 BER {q10}% outside 3.91 +- 3"
    );
    assert!(q20 <= 1.0, "Lena M2 q20 BER {q20}% exceeds 1%");
    pass("A6", format!("Lena M2: q10 {q10:.2}%, q20 {q20:.2}%"));
}

#[test]
fn a07_noise_robustness() {
    // sigma = 0 reproduces the quantized image: exact recovery
    let original = textured_image(700, 512, 512);
    for key in default_keys() {
        let spec = AttackSpec::Awgn {
            sigma: 0.0,
            noise_seed: derive_seed(key.seed),
        };
        let e = attacked_ber(&original, &key, key.seed, Some(&spec));
        assert_eq!(e, 0.0, "method {}: sigma 0 BER {e}", key.method);
    }

    // trend over sigma, 5 noise/payload seeds, at most one adjacent
    // inversion tolerated per method
    let sigmas = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0];
    let images: Vec<GrayImage> = (0..3).map(|i| textured_image(700 + i, 512, 512)).collect();
    for key in default_keys() {
        let mut means = Vec::new();
        for &sigma in &sigmas {
            let mut total = 0.0;
            for img in &images {
                for run in 0..5u64 {
                    let payload_seed = key.seed + run;
                    let spec = AttackSpec::Awgn {
                        sigma,
                        noise_seed: derive_seed(payload_seed),
                    };
                    total += attacked_ber(img, &key, payload_seed, Some(&spec));
                }
            }
            means.push(total / (images.len() * 5) as f64);
        }
        let inversions = means
            .windows(2)
            .filter(|w| w[1] < w[0])
            .count();
        assert!(
            inversions <= 1,
            "method {}: {inversions} adjacent inversions in {means:?}",
            key.method
        );
        println!(
            "[A7] {} mean BER by sigma 5..30: {:?}",
            key.method,
            means.iter().map(|m| (m * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        );
    }
    pass("A7", "sigma 0 exact; BER non-decreasing in sigma for both methods");
}

#[test]
fn a08_rotation_small_angle() {
    let key = WatermarkKey::method2_defaults(DEFAULT_SEED);
    let names = ["goldhill", "baboon", "barbara", "boat"];
    let images: Vec<(&str, PixelBuffer8)> = names
        .iter()
        .filter_map(|n| standard_image(n).map(|img| (*n, img)))
        .collect();
    if images.len() == names.len() {
        for (name, img8) in &images {
            let original = img8.to_gray();
            for angle in [0.5, -0.5] {
                let spec = AttackSpec::Rotate {
                    angle_degrees: angle,
                };
                let mean = mean_ber_over_runs(&original, &key, 5, &spec);
                assert_eq!(mean, 0.0, "{name} at {angle} deg: BER {mean}%");
            }
        }
        pass("A8", "M2 BER = 0 at +-0.5 deg on all four standard images");
    } else {
        // synthetic fallback
        for angle in [0.5, -0.5] {
            let spec = AttackSpec::Rotate {
                angle_degrees: angle,
            };
            let mut total = 0.0;
            for i in 0..5u64 {
                let original = textured_image(1000 + i, 512, 512);
                total += mean_ber_over_runs(&original, &key, 5, &spec);
            }
            let mean = total / 5.0;
            assert!(mean <= 3.0, "M2 at {angle} deg: mean BER {mean}% > 3%");
            println!("[A8] synthetic M2 at {angle} deg: mean BER {mean:.3}%");
        }
        skip_notice("A8", "standard images absent; synthetic fallback held (<= 3%)");
        pass("A8", "M2 mean BER <= 3% at +-0.5 deg on synthetic textures");
    }
}

#[test]
fn a09_filtering_ordering() {
    let spec = AttackSpec::MeanFilter { window: 3 };
    let m2 = WatermarkKey::method2_defaults(DEFAULT_SEED);
    let names = ["goldhill", "baboon", "barbara", "boat"];
    let images: Vec<(&str, PixelBuffer8)> = names
        .iter()
        .filter_map(|n| standard_image(n).map(|img| (*n, img)))
        .collect();
    if images.len() == names.len() {
        for (name, img8) in &images {
            let original = img8.to_gray();
            let mean = mean_ber_over_runs(&original, &m2, 5, &spec);
            assert!(mean <= 6.0, "{name}: M2 3x3-mean BER {mean}% > 6%");
            println!("[A9] {name}: M2 3x3-mean BER {mean:.2}%");
        }
        pass("A9", "M2 BER <= 6% under 3x3 mean on all four standard images");
    } else {
        // synthetic fallback: M2 strictly more robust than M1 on average
        let m1 = WatermarkKey::method1_defaults(DEFAULT_SEED);
        let mut m1_total = 0.0;
        let mut m2_total = 0.0;
        for i in 0..10u64 {
            let original = textured_image(2000 + i, 512, 512);
            m1_total += mean_ber_over_runs(&original, &m1, 5, &spec);
            m2_total += mean_ber_over_runs(&original, &m2, 5, &spec);
        }
        let (m1_mean, m2_mean) = (m1_total / 10.0, m2_total / 10.0);
        assert!(
            m2_mean < m1_mean,
            "M2 mean BER {m2_mean}% not strictly below M1's {m1_mean}% under 3x3 mean"
        );
        skip_notice("A9", "standard images absent; synthetic ordering fallback held");
        pass(
            "A9",
            format!("3x3 mean over 10 textures: M2 {m2_mean:.3}% < M1 {m1_mean:.3}%"),
        );
    }
}

#[test]
fn a10_vote_oracle_equivalence() {
    let mut rng = SplitMix64::new(0xace);
    let mut tie_cases = 0;
    let mut guard_cases = 0;
    for instance in 0..200 {
        let len = 1 + (rng.next_u64() % 32) as usize;
        let alpha = 1.001 + rng.next_range(0.0, 0.3);
        let threshold = detection_threshold(alpha).unwrap();
        let epsilon = 1e-6;

        let kind = instance % 4;
        let (original, received): (Vec<f64>, Vec<f64>) = match kind {
            // exact tie votes (even usable count, half above threshold)
            0 => {
                let n = 2 * (1 + (rng.next_u64() % 8) as usize);
                let orig: Vec<f64> = (0..n).map(|_| rng.next_range(10.0, 500.0)).collect();
                let recv = orig
                    .iter()
                    .enumerate()
                    .map(|(i, &o)| if i < n / 2 { o * alpha } else { o / alpha })
                    .collect();
                tie_cases += 1;
                (orig, recv)
            }
            // everything under the epsilon guard
            1 => {
                let n = 1 + (rng.next_u64() % 8) as usize;
                let orig: Vec<f64> = (0..n).map(|_| rng.next_range(-1e-7, 1e-7)).collect();
                let recv = (0..n).map(|_| rng.next_range(-10.0, 10.0)).collect();
                guard_cases += 1;
                (orig, recv)
            }
            // mixed random coefficients, some guarded
            _ => {
                let orig: Vec<f64> = (0..len)
                    .map(|_| {
                        if rng.next_unit_open() < 0.25 {
                            rng.next_range(-1e-7, 1e-7)
                        } else {
                            rng.next_range(-500.0, 500.0)
                        }
                    })
                    .collect();
                let recv = orig
                    .iter()
                    .map(|&o| {
                        let r = rng.next_unit_open();
                        if r < 0.4 {
                            o * alpha
                        } else if r < 0.8 {
                            o / alpha
                        } else {
                            o + rng.next_range(-1.0, 1.0)
                        }
                    })
                    .collect();
                (orig, recv)
            }
        };

        let vote = vote_lowpass(&original, &received, threshold, epsilon);

        // independent brute-force recount
        let mut usable = 0usize;
        let mut ones = 0usize;
        for (&o, &r) in original.iter().zip(&received) {
            if o.abs() >= epsilon {
                usable += 1;
                if r / o > threshold {
                    ones += 1;
                }
            }
        }
        let expected_bit = if usable == 0 {
            0
        } else {
            u8::from(2 * ones > usable)
        };
        assert_eq!(vote.bit, expected_bit, "instance {instance}");
        assert_eq!(vote.undecidable, usable == 0, "instance {instance}");
        if usable > 0 {
            assert_eq!(vote.margin, ones as f64 / usable as f64, "instance {instance}");
        }
    }
    pass(
        "A10",
        format!("200 instances match the brute-force recount ({tie_cases} ties, {guard_cases} all-guarded)"),
    );
}

#[test]
fn a11_metric_identities() {
    // payload-length sequences: the +-1 identity is bit-exact
    let mut rng = SplitMix64::new(0xbead);
    for _ in 0..1000 {
        let n = 256;
        let a = BitSequence::from_bits((0..n).map(|_| (rng.next_u64() >> 63) as u8).collect())
            .unwrap();
        let b = BitSequence::from_bits((0..n).map(|_| (rng.next_u64() >> 63) as u8).collect())
            .unwrap();
        let cc = corr_coeff(&a, &b).unwrap();
        let e = ber(&a, &b).unwrap();
        assert_eq!(cc, 1.0 - e / 50.0);
    }

    // closed-form PSNR case: unit difference at every pixel
    let x = PixelBuffer8::new(16, 16, vec![200; 256]).unwrap();
    let y = PixelBuffer8::new(16, 16, vec![201; 256]).unwrap();
    let db = psnr(&x, &y).unwrap().as_db().unwrap();
    assert!((db - 48.1308).abs() <= 1e-3, "PSNR {db}");
    pass(
        "A11",
        format!("corr = 1 - ber/50 exact on 1000 pairs; PSNR(MSE=1) = {db:.4} dB"),
    );
}

#[test]
fn a12_determinism() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_wavemark");
    let dir = tempfile::tempdir().unwrap();
    let images = dir.path().join("images");
    std::fs::create_dir(&images).unwrap();
    wavemark::pgm::save_pgm(
        &quantize_to_8bit(&textured_image(42, 512, 512)),
        images.join("tex.pgm"),
    )
    .unwrap();

    let run_bench = |out: &std::path::Path| {
        let status = Command::new(bin)
            .args(["--quiet", "bench", "--suite", "crop", "--runs", "5"])
            .arg("--images")
            .arg(&images)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
        (
            std::fs::read(out).unwrap(),
            std::fs::read(summary_path(out)).unwrap(),
        )
    };
    let (runs_a, summary_a) = run_bench(&dir.path().join("a.csv"));
    let (runs_b, summary_b) = run_bench(&dir.path().join("b.csv"));
    assert_eq!(summary_a, summary_b, "summary CSVs differ between runs");
    // the per-run table is identical except for the honest wall-clock
    // column, which cannot be byte-stable by construction
    let strip_wall = |bytes: &[u8]| -> Vec<String> {
        String::from_utf8(bytes.to_vec())
            .unwrap()
            .lines()
            .map(|line| {
                let fields: Vec<&str> = line.split(',').collect();
                let mut kept = fields.clone();
                if kept.len() >= 2 {
                    kept.remove(kept.len() - 2); // wall_ms
                }
                kept.join(",")
            })
            .collect()
    };
    assert_eq!(
        strip_wall(&runs_a),
        strip_wall(&runs_b),
        "per-run CSVs differ beyond wall_ms"
    );

    // embedding twice produces byte-identical image and sidecar
    let key_path = dir.path().join("key.json");
    let status = Command::new(bin)
        .args(["--quiet", "gen-key", "--method", "m2", "--out"])
        .arg(&key_path)
        .status()
        .unwrap();
    assert!(status.success());
    let embed_once = |out: &std::path::Path| {
        let status = Command::new(bin)
            .args(["--quiet", "embed"])
            .arg("--key")
            .arg(&key_path)
            .arg("--input")
            .arg(images.join("tex.pgm"))
            .arg("--output")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
        let mut sidecar = out.as_os_str().to_os_string();
        sidecar.push(".bits");
        (
            std::fs::read(out).unwrap(),
            std::fs::read(PathBuf::from(sidecar)).unwrap(),
        )
    };
    let (img_a, bits_a) = embed_once(&dir.path().join("wm_a.pgm"));
    let (img_b, bits_b) = embed_once(&dir.path().join("wm_b.pgm"));
    assert_eq!(img_a, img_b, "embed outputs differ");
    assert_eq!(bits_a, bits_b, "payload sidecars differ");
    pass(
        "A12",
        "bench CSVs byte-identical (per-run modulo the wall_ms column); embed byte-identical",
    );
}

#[test]
fn a13_performance_sanity() {
    let original = textured_image(77, 512, 512);
    for key in default_keys() {
        let cap = capacity(&key, 512, 512).unwrap();
        let bits = generate_watermark(key.seed, cap);
        let started = Instant::now();
        let marked = embed(&original, &bits, &key).unwrap();
        let embed_time = started.elapsed();
        let stored = quantize_to_8bit(&marked).to_gray();
        let started = Instant::now();
        let report = detect(&original, &stored, &key).unwrap();
        let detect_time = started.elapsed();
        assert_eq!(report.bits, bits);
        assert!(
            embed_time.as_secs_f64() < 2.0,
            "method {}: embed took {embed_time:?}",
            key.method
        );
        assert!(
            detect_time.as_secs_f64() < 2.0,
            "method {}: detect took {detect_time:?}",
            key.method
        );
        println!(
            "[A13] {}: embed {embed_time:?}, detect {detect_time:?}",
            key.method
        );
    }
    pass("A13", "embed and detect each complete in < 2 s at 512x512");
}
