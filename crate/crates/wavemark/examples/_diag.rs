// temporary diagnostic; removed before finishing
use wavemark::attack::AttackSpec;
use wavemark::watermark::*;
use wavemark::wavelet::*;
use wavemark::*;

fn ll_of(block: &[f64], side: usize, levels: u32, fb: &FilterBank) -> f64 {
    dwt2d(block, side, levels, fb).unwrap().ll()[0]
}

fn main() {
    let fb = FilterBank::symlet8();
    let img = synth::textured_image(2003, 512, 512);
    let spec = AttackSpec::MeanFilter { window: 3 };

    for (name, key) in [
        ("M1", WatermarkKey::method1_defaults(DEFAULT_SEED)),
        ("M2", WatermarkKey::method2_defaults(DEFAULT_SEED)),
    ] {
        let cap = capacity(&key, 512, 512).unwrap();
        let bits = generate_watermark(key.seed, cap);
        let marked = embed(&img, &bits, &key).unwrap();
        let stored = quantize_to_8bit(&marked).to_gray();
        let attacked = spec.apply(&stored).unwrap();
        let report = detect(&img, &attacked, &key).unwrap();

        let selected = select_blocks(&img, &key).unwrap();
        let grid_orig = segment_blocks(&img, key.block_size).unwrap();
        let grid_att = segment_blocks(&attacked, key.block_size).unwrap();
        let t = key.threshold().unwrap();

        let mut flips = 0;
        let mut ratios: Vec<f64> = Vec::new(); // |disturbance| / margin
        for (i, &b) in selected.iter().enumerate() {
            let ll_o = ll_of(grid_orig.block(b), key.block_size, key.levels, &fb);
            let ll_a = ll_of(grid_att.block(b), key.block_size, key.levels, &fb);
            let factor = if bits.bits()[i] == 1 { key.alpha } else { 1.0 / key.alpha };
            let expected = ll_o * factor;
            let disturbance = (ll_a - expected).abs();
            let margin = (ll_o * (key.alpha - 1.0 / key.alpha) / 2.0).abs();
            ratios.push(disturbance / margin);
            if report.bits.bits()[i] != bits.bits()[i] {
                flips += 1;
                if flips <= 5 {
                    let mean_o = grid_orig.block(b).iter().sum::<f64>()
                        / (key.block_size * key.block_size) as f64;
                    println!(
                        "  {name} flip at block {b}: mean {mean_o:.1} ll_o {ll_o:.1} \
                         disturb {disturbance:.2} margin {margin:.2} ratio {ll_a:.3}/{expected:.3} t={t:.6}"
                    );
                }
            }
        }
        ratios.sort_by(|a, b| a.total_cmp(b));
        let pct = |p: f64| ratios[((ratios.len() - 1) as f64 * p) as usize];
        println!(
            "{name}: flips {flips}/{cap}  disturbance/margin p50 {:.3} p90 {:.3} p99 {:.3} max {:.3}",
            pct(0.5),
            pct(0.9),
            pct(0.99),
            pct(1.0)
        );
    }
}
