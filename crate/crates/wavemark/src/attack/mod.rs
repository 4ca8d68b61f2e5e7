//! Deterministic attack simulator.
//!
//! Every attack consumes and produces a [`GrayImage`] of unchanged
//! dimensions whose values are integral and within 0..=255 (the image an
//! attacker would actually save), so detection never needs a registration
//! step. Identity parameters reproduce the 8-bit-quantized input exactly,
//! and every attack is a pure function of its [`AttackSpec`] — the AWGN
//! noise field is part of the spec via its seed.

mod filters;
mod geometry;
mod jpeg;

pub use filters::{mean_filter, median_filter};
pub use geometry::{resize_bilinear, rotate_attack, rotate_bilinear, scale_attack};
pub use jpeg::{jpeg_attack, jpeg_quant_table};

use crate::error::{Error, Result};
use crate::image::{quantize_to_8bit, GrayImage};
use crate::rng::{gaussian_pair, SplitMix64};

/// Rectangle of a crop attack, in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CropRect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

/// One fully parameterized attack.
#[derive(Debug, Clone, PartialEq)]
pub enum AttackSpec {
    Jpeg { quality: u32 },
    Awgn { sigma: f64, noise_seed: u64 },
    MeanFilter { window: usize },
    MedianFilter { window: usize },
    Rotate { angle_degrees: f64 },
    Scale { factor: f64 },
    Crop { rect: CropRect, fill: u8 },
}

impl AttackSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            AttackSpec::Jpeg { .. } => "jpeg",
            AttackSpec::Awgn { .. } => "awgn",
            AttackSpec::MeanFilter { .. } => "mean",
            AttackSpec::MedianFilter { .. } => "median",
            AttackSpec::Rotate { .. } => "rotate",
            AttackSpec::Scale { .. } => "scale",
            AttackSpec::Crop { .. } => "crop",
        }
    }

    /// Fully resolved parameter rendering, `key=value` pairs joined by `;`.
    pub fn params_string(&self) -> String {
        match self {
            AttackSpec::Jpeg { quality } => format!("quality={quality}"),
            AttackSpec::Awgn { sigma, noise_seed } => {
                format!("sigma={sigma};noise_seed={noise_seed}")
            }
            AttackSpec::MeanFilter { window } | AttackSpec::MedianFilter { window } => {
                format!("window={window}")
            }
            AttackSpec::Rotate { angle_degrees } => format!("angle={angle_degrees}"),
            AttackSpec::Scale { factor } => format!("factor={factor}"),
            AttackSpec::Crop { rect, fill } => format!(
                "x={};y={};w={};h={};fill={fill}",
                rect.x, rect.y, rect.width, rect.height
            ),
        }
    }

    /// Image-independent parameter validation; [`Self::apply`] re-checks
    /// these plus the constraints that need the image (window vs. image
    /// side, crop bounds, 8-divisible dimensions).
    pub fn validate_params(&self) -> Result<()> {
        match *self {
            AttackSpec::Jpeg { quality } => {
                if !(1..=100).contains(&quality) {
                    return Err(Error::InvalidQuality { quality });
                }
            }
            AttackSpec::Awgn { sigma, .. } => {
                if !(sigma >= 0.0) || !sigma.is_finite() {
                    return Err(Error::InvalidSigma { sigma });
                }
            }
            AttackSpec::MeanFilter { window } | AttackSpec::MedianFilter { window } => {
                if window < 3 || window % 2 == 0 {
                    return Err(Error::InvalidWindow { window });
                }
            }
            AttackSpec::Rotate { angle_degrees } => {
                if !angle_degrees.is_finite() {
                    return Err(Error::InvalidAngle {
                        angle: angle_degrees,
                    });
                }
            }
            AttackSpec::Scale { factor } => {
                if !(factor > 0.0 && factor <= 1.0) || !factor.is_finite() {
                    return Err(Error::InvalidScaleFactor { factor });
                }
            }
            AttackSpec::Crop { .. } => {}
        }
        Ok(())
    }

    /// Applies the attack to an image.
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        match *self {
            AttackSpec::Jpeg { quality } => jpeg_attack(img, quality),
            AttackSpec::Awgn { sigma, noise_seed } => awgn(img, sigma, noise_seed),
            AttackSpec::MeanFilter { window } => mean_filter(img, window),
            AttackSpec::MedianFilter { window } => median_filter(img, window),
            AttackSpec::Rotate { angle_degrees } => rotate_attack(img, angle_degrees),
            AttackSpec::Scale { factor } => scale_attack(img, factor),
            AttackSpec::Crop { rect, fill } => crop_attack(img, rect, fill),
        }
    }
}

pub(crate) fn quantize_roundtrip(img: &GrayImage) -> GrayImage {
    quantize_to_8bit(img).to_gray()
}

/// Additive white Gaussian noise of standard deviation `sigma`.
///
/// Deviates come from Box-Muller over the SplitMix64 stream seeded by
/// `noise_seed`, consumed in row-major pixel order: each uniform pair
/// yields the deviates for pixels 2i and 2i+1 (the trailing pixel of an
/// odd-sized image uses only the cosine branch of its pair). The noisy
/// values are clamped to 0..=255 and quantized.
pub fn awgn(img: &GrayImage, sigma: f64, noise_seed: u64) -> Result<GrayImage> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidSigma { sigma });
    }
    if sigma == 0.0 {
        return Ok(quantize_roundtrip(img));
    }
    let mut rng = SplitMix64::new(noise_seed);
    let src = img.pixels();
    let mut pixels = Vec::with_capacity(src.len());
    let mut i = 0;
    while i < src.len() {
        let (z0, z1) = gaussian_pair(&mut rng);
        pixels.push(src[i] + sigma * z0);
        if i + 1 < src.len() {
            pixels.push(src[i + 1] + sigma * z1);
        }
        i += 2;
    }
    let noisy = GrayImage::new(img.width(), img.height(), pixels)?;
    Ok(quantize_roundtrip(&noisy))
}

/// Replaces the pixels inside `rect` with `fill`; dimensions are kept so
/// non-blind detection can proceed without registration.
pub fn crop_attack(img: &GrayImage, rect: CropRect, fill: u8) -> Result<GrayImage> {
    let (width, height) = img.dimensions();
    let x_end = rect.x.checked_add(rect.width);
    let y_end = rect.y.checked_add(rect.height);
    match (x_end, y_end) {
        (Some(xe), Some(ye)) if xe <= width && ye <= height => {}
        _ => {
            return Err(Error::RectOutOfBounds {
                x: rect.x,
                y: rect.y,
                w: rect.width,
                h: rect.height,
                width,
                height,
            })
        }
    }
    let mut pixels = img.pixels().to_vec();
    for y in rect.y..rect.y + rect.height {
        for x in rect.x..rect.x + rect.width {
            pixels[y * width + x] = f64::from(fill);
        }
    }
    let replaced = GrayImage::new(width, height, pixels)?;
    Ok(quantize_roundtrip(&replaced))
}
