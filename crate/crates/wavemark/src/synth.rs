//! Seeded synthetic test textures.
//!
//! The benchmark and test suites need 512x512 grayscale material without
//! bundling standard test images, so this generator imitates the image
//! statistics the watermark actually lives on in photographs:
//!
//! * a dead-leaves base (opaque overlapping rectangles at many scales)
//!   giving block-to-block brightness structure and sharp transitions
//!   everywhere, the content that stresses Method 1's all-blocks embedding
//!   under filtering and compression;
//! * fur-like micro-texture patches (balanced per-pixel grain under a
//!   smooth amplitude field, slightly brightened the way lit texture is),
//!   the high-variance mean-stable regions that variance-ranked selection
//!   favors;
//! * gentle cosine gratings and a little wideband noise tying it together.
//!
//! Every value is integral and in 0..=255, so 8-bit quantization is a
//! no-op on the output.

use crate::image::GrayImage;
use crate::rng::SplitMix64;

const GRATING_COUNT: usize = 4;

/// Deterministic textured image with integral values in 0..=255.
///
/// The same (seed, width, height) triple always produces the same pixels.
pub fn textured_image(seed: u64, width: usize, height: usize) -> GrayImage {
    assert!(width > 0 && height > 0, "texture dimensions must be positive");
    let mut rng = SplitMix64::new(seed);

    // dead-leaves base: later leaves paint over earlier ones
    let mut relief = vec![0.0; width * height];
    let leaf_count = (width * height / 256).max(16);
    for _ in 0..leaf_count {
        let w = rng.next_range(6.0, 80.0) as usize;
        let h = rng.next_range(6.0, 80.0) as usize;
        let x0 = (rng.next_range(0.0, width as f64) as usize).min(width - 1);
        let y0 = (rng.next_range(0.0, height as f64) as usize).min(height - 1);
        let magnitude = rng.next_range(18.0, 64.0);
        let sign = if rng.next_unit_open() < 0.5 { -1.0 } else { 1.0 };
        let delta = sign * magnitude;
        for y in y0..(y0 + h).min(height) {
            let row = y * width;
            for x in x0..(x0 + w).min(width) {
                relief[row + x] = delta;
            }
        }
    }

    struct Grating {
        fx: f64,
        fy: f64,
        phase: f64,
        amplitude: f64,
    }

    let gratings: Vec<Grating> = (0..GRATING_COUNT)
        .map(|_| {
            let orientation = rng.next_range(0.0, std::f64::consts::TAU);
            let frequency = rng.next_range(0.008, 0.09);
            Grating {
                fx: frequency * orientation.cos(),
                fy: frequency * orientation.sin(),
                phase: rng.next_range(0.0, std::f64::consts::TAU),
                amplitude: rng.next_range(6.0, 14.0),
            }
        })
        .collect();

    // smooth selector field for the micro-texture patches
    let grain_orientation = rng.next_range(0.0, std::f64::consts::TAU);
    let grain_frequency = rng.next_range(0.003, 0.008);
    let (grain_fx, grain_fy) = (
        grain_frequency * grain_orientation.cos(),
        grain_frequency * grain_orientation.sin(),
    );
    let grain_phase = rng.next_range(0.0, std::f64::consts::TAU);

    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (xf, yf) = (x as f64, y as f64);
            let mut v = 128.0 + relief[y * width + x];
            for g in &gratings {
                v += g.amplitude
                    * (std::f64::consts::TAU * (g.fx * xf + g.fy * yf) + g.phase).cos();
            }
            let patch = 0.5
                + 0.5
                    * (std::f64::consts::TAU * (grain_fx * xf + grain_fy * yf) + grain_phase)
                        .cos();
            // textured areas sit brighter, the way lit texture does in
            // photographs; flat shadow regions stay dark
            v += 24.0 * patch * patch;
            let grain_amp = 4.0 + 42.0 * patch * patch * patch;
            let grain_sign = if rng.next_unit_open() < 0.5 { -1.0 } else { 1.0 };
            v += grain_sign * rng.next_range(0.4, 1.0) * grain_amp;
            pixels.push(v.round().clamp(2.0, 253.0));
        }
    }
    GrayImage::new(width, height, pixels).expect("generated pixels are finite")
}
