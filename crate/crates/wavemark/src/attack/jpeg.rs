//! Baseline-JPEG luminance distortion model.
//!
//! Per 8x8 block: level shift, 2-D type-II DCT, division by the standard
//! luminance quantization table scaled by the quality factor, rounding,
//! dequantization, inverse DCT, shift back. Entropy coding is lossless and
//! therefore omitted; quantization is the sole source of loss, so the model
//! reproduces the codec's distortion bit-exactly and dependency-free.

use super::quantize_roundtrip;
use crate::error::{Error, Result};
use crate::image::GrayImage;
use std::sync::OnceLock;

/// Standard luminance quantization table, row-major.
const BASE_LUMA_TABLE: [u32; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99, //
];

/// Quality-scaled luminance table (integer IJG convention):
/// `scale = 5000/q` for `q < 50` else `200 - 2q`;
/// `entry' = clamp(floor((entry * scale + 50) / 100), 1, 255)`.
pub fn jpeg_quant_table(quality: u32) -> Result<[u32; 64]> {
    if !(1..=100).contains(&quality) {
        return Err(Error::InvalidQuality { quality });
    }
    let scale = if quality < 50 {
        5000 / quality
    } else {
        200 - 2 * quality
    };
    let mut table = [0u32; 64];
    for (out, &base) in table.iter_mut().zip(&BASE_LUMA_TABLE) {
        *out = ((base * scale + 50) / 100).clamp(1, 255);
    }
    Ok(table)
}

/// Orthonormal 8-point DCT-II basis: `M[u][x] = c_u cos((2x+1) u pi / 16)`
/// with `c_0 = sqrt(1/8)` and `c_u = 1/2` otherwise. `F = M f M^T` is the
/// standard JPEG forward DCT and `f = M^T F M` its inverse.
fn dct_basis() -> &'static [[f64; 8]; 8] {
    static BASIS: OnceLock<[[f64; 8]; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; 8]; 8];
        for (u, row) in m.iter_mut().enumerate() {
            let cu = if u == 0 {
                (1.0f64 / 8.0).sqrt()
            } else {
                0.5
            };
            for (x, v) in row.iter_mut().enumerate() {
                *v = cu * ((2 * x + 1) as f64 * u as f64 * std::f64::consts::PI / 16.0).cos();
            }
        }
        m
    })
}

fn dct8_forward(block: &[f64; 64]) -> [f64; 64] {
    let m = dct_basis();
    // rows: tmp = f M^T
    let mut tmp = [0.0; 64];
    for r in 0..8 {
        for u in 0..8 {
            let mut acc = 0.0;
            for x in 0..8 {
                acc += block[r * 8 + x] * m[u][x];
            }
            tmp[r * 8 + u] = acc;
        }
    }
    // columns: F = M tmp
    let mut out = [0.0; 64];
    for u in 0..8 {
        for c in 0..8 {
            let mut acc = 0.0;
            for y in 0..8 {
                acc += m[u][y] * tmp[y * 8 + c];
            }
            out[u * 8 + c] = acc;
        }
    }
    out
}

fn dct8_inverse(coeffs: &[f64; 64]) -> [f64; 64] {
    let m = dct_basis();
    // rows: tmp = F M
    let mut tmp = [0.0; 64];
    for r in 0..8 {
        for x in 0..8 {
            let mut acc = 0.0;
            for u in 0..8 {
                acc += coeffs[r * 8 + u] * m[u][x];
            }
            tmp[r * 8 + x] = acc;
        }
    }
    // columns: f = M^T tmp
    let mut out = [0.0; 64];
    for y in 0..8 {
        for c in 0..8 {
            let mut acc = 0.0;
            for u in 0..8 {
                acc += m[u][y] * tmp[u * 8 + c];
            }
            out[y * 8 + c] = acc;
        }
    }
    out
}

/// Lossy JPEG round trip at the given quality (1..=100).
///
/// Dimensions must be divisible by 8.
pub fn jpeg_attack(img: &GrayImage, quality: u32) -> Result<GrayImage> {
    let table = jpeg_quant_table(quality)?;
    let (width, height) = img.dimensions();
    if width % 8 != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "width",
            size: width,
            block_size: 8,
        });
    }
    if height % 8 != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "height",
            size: height,
            block_size: 8,
        });
    }
    let src = img.pixels();
    let mut out = vec![0.0; src.len()];
    let mut block = [0.0; 64];
    for by in (0..height).step_by(8) {
        for bx in (0..width).step_by(8) {
            for y in 0..8 {
                for x in 0..8 {
                    block[y * 8 + x] = src[(by + y) * width + bx + x] - 128.0;
                }
            }
            let mut coeffs = dct8_forward(&block);
            for (c, &q) in coeffs.iter_mut().zip(&table) {
                let q = f64::from(q);
                *c = (*c / q).round() * q;
            }
            let rec = dct8_inverse(&coeffs);
            for y in 0..8 {
                for x in 0..8 {
                    out[(by + y) * width + bx + x] = rec[y * 8 + x] + 128.0;
                }
            }
        }
    }
    let reconstructed = GrayImage::new(width, height, out)?;
    Ok(quantize_roundtrip(&reconstructed))
}
