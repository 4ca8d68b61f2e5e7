// temporary calibration probe; removed before finishing
use wavemark::attack::AttackSpec;
use wavemark::watermark::*;
use wavemark::*;

fn pipeline(img: &GrayImage, key: &WatermarkKey, run: u64, attack: &AttackSpec) -> f64 {
    let cap = capacity(key, img.width(), img.height()).unwrap();
    let bits = generate_watermark(key.seed + run, cap);
    let marked = embed(img, &bits, key).unwrap();
    let stored = quantize_to_8bit(&marked).to_gray();
    let attacked = attack.apply(&stored).unwrap();
    let report = detect(img, &attacked, key).unwrap();
    ber(&bits, &report.bits).unwrap()
}

fn main() {
    let images: Vec<GrayImage> = (0..5)
        .map(|i| synth::textured_image(1000 + i, 512, 512))
        .collect();
    let m1 = WatermarkKey::method1_defaults(DEFAULT_SEED);
    let m2 = WatermarkKey::method2_defaults(DEFAULT_SEED);

    println!("== JPEG sweep (mean over 5 images x 5 runs) ==");
    for q in (1..=9).map(|x| x * 10) {
        let spec = AttackSpec::Jpeg { quality: q };
        for (name, key) in [("M1", &m1), ("M2", &m2)] {
            let mut sum = 0.0;
            for img in &images {
                for run in 0..5 {
                    sum += pipeline(img, key, run, &spec);
                }
            }
            print!("{name} q{q}: {:.3}  ", sum / 25.0);
        }
        println!();
    }

    println!("== AWGN sweep (5 images x 5 seeds) ==");
    for sigma in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
        for (name, key) in [("M1", &m1), ("M2", &m2)] {
            let mut sum = 0.0;
            for img in &images {
                for run in 0..5u64 {
                    let spec = AttackSpec::Awgn {
                        sigma,
                        noise_seed: rng::derive_seed(key.seed + run),
                    };
                    sum += pipeline(img, key, run, &spec);
                }
            }
            print!("{name} s{sigma}: {:.3}  ", sum / 25.0);
        }
        println!();
    }

    println!("== rotation +-0.5 (M2, 5 images x 5 runs) ==");
    for angle in [0.5, -0.5] {
        let spec = AttackSpec::Rotate {
            angle_degrees: angle,
        };
        let mut sum = 0.0;
        let mut worst: f64 = 0.0;
        for img in &images {
            for run in 0..5 {
                let b = pipeline(img, &m2, run, &spec);
                sum += b;
                worst = worst.max(b);
            }
        }
        println!("angle {angle}: mean {:.3} worst {:.3}", sum / 25.0, worst);
    }

    println!("== 3x3 mean filter, M1 vs M2 over 10 images ==");
    let images10: Vec<GrayImage> = (0..10)
        .map(|i| synth::textured_image(2000 + i, 512, 512))
        .collect();
    let spec = AttackSpec::MeanFilter { window: 3 };
    for (name, key) in [("M1", &m1), ("M2", &m2)] {
        let mut sum = 0.0;
        for img in &images10 {
            for run in 0..5 {
                sum += pipeline(img, key, run, &spec);
            }
        }
        println!("{name}: mean {:.3}", sum / 50.0);
    }

    println!("== PSNR of watermarked (5 images) ==");
    for (name, key) in [("M1", &m1), ("M2", &m2)] {
        for (i, img) in images.iter().enumerate() {
            let cap = capacity(key, 512, 512).unwrap();
            let bits = generate_watermark(key.seed, cap);
            let marked = embed(img, &bits, key).unwrap();
            let p = psnr(&quantize_to_8bit(img), &quantize_to_8bit(&marked)).unwrap();
            print!("{name} img{i}: {p:.3}  ");
        }
        println!();
    }

    println!("== A3 probe: quantization-only BER over 20 images ==");
    for (name, key) in [("M1", &m1), ("M2", &m2)] {
        let mut total = 0.0;
        let mut min_mean: f64 = 255.0;
        for i in 0..20u64 {
            let img = synth::textured_image(500 + i, 512, 512);
            let grid = segment_blocks(&img, key.block_size).unwrap();
            for b in grid.blocks() {
                let m = b.iter().sum::<f64>() / b.len() as f64;
                min_mean = min_mean.min(m);
            }
            let cap = capacity(key, 512, 512).unwrap();
            let bits = generate_watermark(key.seed + i, cap);
            let marked = embed(&img, &bits, key).unwrap();
            let stored = quantize_to_8bit(&marked).to_gray();
            let report = detect(&img, &stored, key).unwrap();
            total += ber(&bits, &report.bits).unwrap();
        }
        println!("{name}: total BER {total}  min block mean {min_mean:.1}");
    }

    println!("== timing: embed + detect on one 512x512 ==");
    let img = &images[0];
    for (name, key) in [("M1", &m1), ("M2", &m2)] {
        let cap = capacity(key, 512, 512).unwrap();
        let bits = generate_watermark(key.seed, cap);
        let t0 = std::time::Instant::now();
        let marked = embed(img, &bits, key).unwrap();
        let t_embed = t0.elapsed();
        let stored = quantize_to_8bit(&marked).to_gray();
        let t1 = std::time::Instant::now();
        let _ = detect(img, &stored, key).unwrap();
        let t_detect = t1.elapsed();
        println!("{name}: embed {t_embed:?} detect {t_detect:?}");
    }
}
