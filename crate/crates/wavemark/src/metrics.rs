//! Measurement instruments: bit-error rate, PSNR and the normalized
//! correlation coefficient of the payload.

use crate::error::{Error, Result};
use crate::image::PixelBuffer8;
use crate::watermark::BitSequence;

/// Peak signal-to-noise ratio; identical inputs yield the distinguished
/// infinite marker, serialized as the string `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn as_db(&self) -> Option<f64> {
        match self {
            Psnr::Finite(v) => Some(*v),
            Psnr::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Psnr::Infinite)
    }
}

impl std::fmt::Display for Psnr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v}"),
            Psnr::Infinite => write!(f, "inf"),
        }
    }
}

/// Percentage of positions where the two sequences disagree.
pub fn ber(reference: &BitSequence, detected: &BitSequence) -> Result<f64> {
    if reference.len() != detected.len() {
        return Err(Error::BitLengthMismatch {
            left: reference.len(),
            right: detected.len(),
        });
    }
    let flips = reference
        .bits()
        .iter()
        .zip(detected.bits())
        .filter(|(a, b)| a != b)
        .count();
    Ok(100.0 * flips as f64 / reference.len() as f64)
}

/// `10 log10(255^2 / MSE)` between two stored images.
pub fn psnr(a: &PixelBuffer8, b: &PixelBuffer8) -> Result<Psnr> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch {
            left_width: a.width(),
            left_height: a.height(),
            right_width: b.width(),
            right_height: b.height(),
        });
    }
    let sum_sq: u64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    if sum_sq == 0 {
        return Ok(Psnr::Infinite);
    }
    let mse = sum_sq as f64 / a.samples().len() as f64;
    Ok(Psnr::Finite(10.0 * (255.0 * 255.0 / mse).log10()))
}

/// Normalized correlation of the +/-1-mapped sequences:
/// `sum w w' / sqrt(sum w^2 * sum w'^2)`, which for equal-length binary
/// payloads reduces to (matches - mismatches) / length.
pub fn corr_coeff(reference: &BitSequence, detected: &BitSequence) -> Result<f64> {
    if reference.len() != detected.len() {
        return Err(Error::BitLengthMismatch {
            left: reference.len(),
            right: detected.len(),
        });
    }
    let mut dot = 0.0;
    let mut ref_energy = 0.0;
    let mut det_energy = 0.0;
    for (&a, &b) in reference.bits().iter().zip(detected.bits()) {
        let w = 2.0 * f64::from(a) - 1.0;
        let wp = 2.0 * f64::from(b) - 1.0;
        dot += w * wp;
        ref_energy += w * w;
        det_energy += wp * wp;
    }
    Ok(dot / (ref_energy * det_energy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::PixelBuffer8;
    use crate::rng::SplitMix64;

    fn bits_of(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn random_bits(seed: u64, n: usize) -> BitSequence {
        let mut rng = SplitMix64::new(seed);
        BitSequence::from_bits((0..n).map(|_| (rng.next_u64() >> 63) as u8).collect()).unwrap()
    }

    #[test]
    fn ber_identical_and_complementary() {
        let a = random_bits(1, 256);
        assert_eq!(ber(&a, &a).unwrap(), 0.0);
        let comp = BitSequence::from_bits(a.bits().iter().map(|b| 1 - b).collect()).unwrap();
        assert_eq!(ber(&a, &comp).unwrap(), 100.0);
    }

    #[test]
    fn ber_single_flip_in_128() {
        let a = random_bits(2, 128);
        let mut flipped = a.bits().to_vec();
        flipped[17] = 1 - flipped[17];
        let b = BitSequence::from_bits(flipped).unwrap();
        assert_eq!(ber(&a, &b).unwrap(), 0.78125);
    }

    #[test]
    fn ber_rejects_length_mismatch() {
        let a = random_bits(3, 10);
        let b = random_bits(3, 11);
        assert!(matches!(
            ber(&a, &b),
            Err(Error::BitLengthMismatch { left: 10, right: 11 })
        ));
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let buf = PixelBuffer8::new(4, 4, vec![9; 16]).unwrap();
        assert!(psnr(&buf, &buf).unwrap().is_infinite());
        assert_eq!(psnr(&buf, &buf).unwrap().to_string(), "inf");
    }

    #[test]
    fn psnr_unit_difference_closed_form() {
        let a = PixelBuffer8::new(8, 8, vec![100; 64]).unwrap();
        let b = PixelBuffer8::new(8, 8, vec![101; 64]).unwrap();
        let got = psnr(&a, &b).unwrap().as_db().unwrap();
        assert!((got - 48.1308).abs() < 1e-3, "got {got}");
    }

    #[test]
    fn psnr_full_scale_difference_is_zero() {
        let a = PixelBuffer8::new(4, 4, vec![0; 16]).unwrap();
        let b = PixelBuffer8::new(4, 4, vec![255; 16]).unwrap();
        assert_eq!(psnr(&a, &b).unwrap().as_db().unwrap(), 0.0);
    }

    #[test]
    fn psnr_symmetric_and_monotone_in_single_pixel_error() {
        let base = PixelBuffer8::new(4, 4, vec![128; 16]).unwrap();
        let mut prev = f64::INFINITY;
        for delta in [1u8, 4, 16, 64] {
            let mut s = vec![128; 16];
            s[5] = 128 + delta;
            let other = PixelBuffer8::new(4, 4, s).unwrap();
            let fwd = psnr(&base, &other).unwrap().as_db().unwrap();
            let rev = psnr(&other, &base).unwrap().as_db().unwrap();
            assert_eq!(fwd, rev);
            assert!(fwd < prev);
            prev = fwd;
        }
    }

    #[test]
    fn corr_identical_complementary_and_half() {
        let a = random_bits(4, 64);
        assert_eq!(corr_coeff(&a, &a).unwrap(), 1.0);
        let comp = BitSequence::from_bits(a.bits().iter().map(|b| 1 - b).collect()).unwrap();
        assert_eq!(corr_coeff(&a, &comp).unwrap(), -1.0);
        let x = bits_of("0011");
        let y = bits_of("0101");
        assert_eq!(corr_coeff(&x, &y).unwrap(), 0.0);
    }

    #[test]
    fn corr_symmetric() {
        let a = random_bits(5, 200);
        let b = random_bits(6, 200);
        assert_eq!(corr_coeff(&a, &b).unwrap(), corr_coeff(&b, &a).unwrap());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// The +/-1 identity corr = 1 - ber/50, verified in exact
            /// integer arithmetic for arbitrary lengths: both metrics must be
            /// the correctly rounded images of their defining rationals.
            #[test]
            fn metrics_agree_with_integer_oracles(
                seed in 0u64..1_000_000,
                n in 1usize..2000,
            ) {
                let a = random_bits(seed, n);
                let b = random_bits(seed ^ 0xdead_beef, n);
                let mismatches = a.bits().iter().zip(b.bits()).filter(|(x, y)| x != y).count();
                let expected_ber = 100.0 * mismatches as f64 / n as f64;
                let expected_corr = (n as f64 - 2.0 * mismatches as f64) / n as f64;
                prop_assert_eq!(ber(&a, &b).unwrap(), expected_ber);
                prop_assert_eq!(corr_coeff(&a, &b).unwrap(), expected_corr);
            }

            /// At power-of-two payload lengths (every capacity of the
            /// default keys) the identity also holds bit-for-bit when
            /// evaluated as a chained float expression.
            #[test]
            fn identity_is_bit_exact_at_dyadic_lengths(
                seed in 0u64..1_000_000,
                log_n in 3u32..=12,
            ) {
                let n = 1usize << log_n;
                let a = random_bits(seed, n);
                let b = random_bits(seed.wrapping_add(1), n);
                let cc = corr_coeff(&a, &b).unwrap();
                let e = ber(&a, &b).unwrap();
                prop_assert_eq!(cc, 1.0 - e / 50.0);
            }
        }
    }
}
