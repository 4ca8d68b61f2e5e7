//! Geometric attacks: rotation with known-angle compensation and
//! downscale/restore, both via bilinear resampling.
//!
//! Pixel centers sit on integer coordinates. Sample positions outside the
//! support are clamped to the nearest edge pixel, which realizes
//! edge-replicate extension. Each resampling leg quantizes its output, the
//! way an attacker saving the intermediate image would.

use super::quantize_roundtrip;
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Bilinear sample at a real-valued position, clamped to the image support.
#[inline]
fn sample_bilinear(pixels: &[f64], width: usize, height: usize, x: f64, y: f64) -> f64 {
    let x = x.clamp(0.0, (width - 1) as f64);
    let y = y.clamp(0.0, (height - 1) as f64);
    let x0 = x.floor() as usize;
    let y0 = y.floor() as usize;
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    let fx = x - x0 as f64;
    let fy = y - y0 as f64;
    let top = pixels[y0 * width + x0] * (1.0 - fx) + pixels[y0 * width + x1] * fx;
    let bottom = pixels[y1 * width + x0] * (1.0 - fx) + pixels[y1 * width + x1] * fx;
    top * (1.0 - fy) + bottom * fy
}

/// Rotates about the image center into a same-size canvas and quantizes.
///
/// Destination pixel (x, y) samples the source at the back-rotated
/// position, so `rotate_bilinear(img, a)` followed by
/// `rotate_bilinear(.., -a)` inverts the mapping exactly (up to
/// interpolation). A 90-degree rotation of a square image permutes the
/// pixel grid without interpolation error.
pub fn rotate_bilinear(img: &GrayImage, angle_degrees: f64) -> Result<GrayImage> {
    if !angle_degrees.is_finite() {
        return Err(Error::InvalidAngle {
            angle: angle_degrees,
        });
    }
    let (width, height) = img.dimensions();
    let cx = (width - 1) as f64 / 2.0;
    let cy = (height - 1) as f64 / 2.0;
    let theta = angle_degrees.to_radians();
    let (sin, cos) = (theta.sin(), theta.cos());
    let src = img.pixels();
    let mut out = Vec::with_capacity(src.len());
    for y in 0..height {
        for x in 0..width {
            let dx = x as f64 - cx;
            let dy = y as f64 - cy;
            // inverse map: rotate the destination offset by -theta
            let sx = cx + cos * dx + sin * dy;
            let sy = cy - sin * dx + cos * dy;
            out.push(sample_bilinear(src, width, height, sx, sy));
        }
    }
    let rotated = GrayImage::new(width, height, out)?;
    Ok(quantize_roundtrip(&rotated))
}

/// Rotation attack with known-angle compensation: rotate by the angle,
/// quantize, rotate back by the negated angle, quantize. The residual
/// distortion is interpolation error only.
pub fn rotate_attack(img: &GrayImage, angle_degrees: f64) -> Result<GrayImage> {
    let forward = rotate_bilinear(img, angle_degrees)?;
    rotate_bilinear(&forward, -angle_degrees)
}

/// Bilinear resample to the given dimensions and quantize.
///
/// Source coordinates follow the pixel-center convention
/// `src = (dst + 0.5) * old/new - 0.5`, clamped to the support.
pub fn resize_bilinear(img: &GrayImage, new_width: usize, new_height: usize) -> Result<GrayImage> {
    if new_width == 0 || new_height == 0 {
        return Err(Error::InvalidDimensions {
            width: new_width,
            height: new_height,
        });
    }
    let (width, height) = img.dimensions();
    let x_ratio = width as f64 / new_width as f64;
    let y_ratio = height as f64 / new_height as f64;
    let src = img.pixels();
    let mut out = Vec::with_capacity(new_width * new_height);
    for y in 0..new_height {
        let sy = (y as f64 + 0.5) * y_ratio - 0.5;
        for x in 0..new_width {
            let sx = (x as f64 + 0.5) * x_ratio - 0.5;
            out.push(sample_bilinear(src, width, height, sx, sy));
        }
    }
    let resized = GrayImage::new(new_width, new_height, out)?;
    Ok(quantize_roundtrip(&resized))
}

/// Scaling attack with restoration: downscale each axis to
/// `round(factor * dim)`, quantize, resample back to the original
/// dimensions, quantize.
pub fn scale_attack(img: &GrayImage, factor: f64) -> Result<GrayImage> {
    if !(factor > 0.0 && factor <= 1.0) || !factor.is_finite() {
        return Err(Error::InvalidScaleFactor { factor });
    }
    let (width, height) = img.dimensions();
    let new_width = (factor * width as f64).round() as usize;
    let new_height = (factor * height as f64).round() as usize;
    if new_width == 0 || new_height == 0 {
        return Err(Error::DegenerateScaledSize {
            scaled: new_width.min(new_height),
            factor,
        });
    }
    let down = resize_bilinear(img, new_width, new_height)?;
    resize_bilinear(&down, width, height)
}
