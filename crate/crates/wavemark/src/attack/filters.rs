//! Sliding-window mean and median filtering with edge-replicate padding.

use super::quantize_roundtrip;
use crate::error::{Error, Result};
use crate::image::GrayImage;

fn check_window(img: &GrayImage, window: usize) -> Result<()> {
    if window < 3 || window % 2 == 0 || window > img.width().min(img.height()) {
        return Err(Error::InvalidWindow { window });
    }
    Ok(())
}

/// Clamped (edge-replicate) pixel fetch.
#[inline]
fn fetch(pixels: &[f64], width: usize, height: usize, x: isize, y: isize) -> f64 {
    let xc = x.clamp(0, width as isize - 1) as usize;
    let yc = y.clamp(0, height as isize - 1) as usize;
    pixels[yc * width + xc]
}

/// Arithmetic mean over the window x window neighborhood, then 8-bit
/// quantization. The window sum runs in row-major order so results are
/// bit-identical across implementations.
pub fn mean_filter(img: &GrayImage, window: usize) -> Result<GrayImage> {
    check_window(img, window)?;
    let (width, height) = img.dimensions();
    let radius = (window / 2) as isize;
    let count = (window * window) as f64;
    let src = img.pixels();
    let mut out = Vec::with_capacity(src.len());
    for y in 0..height as isize {
        for x in 0..width as isize {
            let mut sum = 0.0;
            for dy in -radius..=radius {
                for dx in -radius..=radius {
                    sum += fetch(src, width, height, x + dx, y + dy);
                }
            }
            out.push(sum / count);
        }
    }
    let filtered = GrayImage::new(width, height, out)?;
    Ok(quantize_roundtrip(&filtered))
}

/// Exact middle order statistic over the neighborhood (the window area is
/// odd), then 8-bit quantization.
pub fn median_filter(img: &GrayImage, window: usize) -> Result<GrayImage> {
    check_window(img, window)?;
    let (width, height) = img.dimensions();
    let radius = (window / 2) as isize;
    let src = img.pixels();
    let mut neighborhood = vec![0.0; window * window];
    let mid = neighborhood.len() / 2;
    let mut out = Vec::with_capacity(src.len());
    for y in 0..height as isize {
        for x in 0..width as isize {
            let mut i = 0;
            for dy in -radius..=radius {
                for dx in -radius..=radius {
                    neighborhood[i] = fetch(src, width, height, x + dx, y + dy);
                    i += 1;
                }
            }
            let (_, median, _) =
                neighborhood.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
            out.push(*median);
        }
    }
    let filtered = GrayImage::new(width, height, out)?;
    Ok(quantize_roundtrip(&filtered))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn window_validation() {
        let img = GrayImage::constant(9, 9, 1.0).unwrap();
        for bad in [0, 1, 2, 4, 11] {
            assert!(
                matches!(mean_filter(&img, bad), Err(Error::InvalidWindow { .. })),
                "window {bad}"
            );
            assert!(matches!(
                median_filter(&img, bad),
                Err(Error::InvalidWindow { .. })
            ));
        }
    }

    #[test]
    fn constants_are_fixed_points() {
        let img = GrayImage::constant(16, 16, 200.0).unwrap();
        assert_eq!(mean_filter(&img, 5).unwrap(), img);
        assert_eq!(median_filter(&img, 5).unwrap(), img);
    }

    #[test]
    fn mean_spreads_an_impulse() {
        // single white pixel in a black 9x9 field, window 3:
        // the 3x3 region around it becomes round(255/9) = 28
        let mut px = vec![0.0; 81];
        px[4 * 9 + 4] = 255.0;
        let img = GrayImage::new(9, 9, px).unwrap();
        let out = mean_filter(&img, 3).unwrap();
        for y in 0..9 {
            for x in 0..9 {
                let near = (3..=5).contains(&x) && (3..=5).contains(&y);
                let want = if near { 28.0 } else { 0.0 };
                assert_eq!(out.pixel(x, y), want, "at {x},{y}");
            }
        }
    }

    #[test]
    fn mean_on_step_edge() {
        // columns 0..4 black, 4..8 white; window 3 leaves a two-column
        // transition: round(255/3)=85 then round(510/3)=170
        let mut px = vec![0.0; 64];
        for y in 0..8 {
            for x in 4..8 {
                px[y * 8 + x] = 255.0;
            }
        }
        let img = GrayImage::new(8, 8, px).unwrap();
        let out = mean_filter(&img, 3).unwrap();
        for y in 0..8 {
            assert_eq!(out.pixel(2, y), 0.0);
            assert_eq!(out.pixel(3, y), 85.0);
            assert_eq!(out.pixel(4, y), 170.0);
            assert_eq!(out.pixel(5, y), 255.0);
        }
    }

    #[test]
    fn median_removes_an_impulse() {
        let mut px = vec![0.0; 81];
        px[4 * 9 + 4] = 255.0;
        let img = GrayImage::new(9, 9, px).unwrap();
        let out = median_filter(&img, 3).unwrap();
        assert!(out.pixels().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn median_against_brute_force_on_salt_and_pepper() {
        // ~10% corruption on a constant field; an output pixel differs from
        // 128 only where >= 5 of its 9 neighbors are corrupted.
        let mut rng = SplitMix64::new(77);
        let n = 32;
        let px: Vec<f64> = (0..n * n)
            .map(|_| {
                let r = rng.next_unit_open();
                if r < 0.05 {
                    0.0
                } else if r < 0.10 {
                    255.0
                } else {
                    128.0
                }
            })
            .collect();
        let img = GrayImage::new(n, n, px).unwrap();
        let out = median_filter(&img, 3).unwrap();
        for y in 0..n as isize {
            for x in 0..n as isize {
                // brute-force median of the clamped neighborhood
                let mut vals = Vec::with_capacity(9);
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        vals.push(super::fetch(img.pixels(), n, n, x + dx, y + dy));
                    }
                }
                vals.sort_by(|a, b| a.total_cmp(b));
                assert_eq!(out.pixel(x as usize, y as usize), vals[4]);
            }
        }
    }
}
