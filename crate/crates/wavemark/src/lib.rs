//! Block-based wavelet-domain image watermarking.
//!
//! The library embeds a binary payload into a grayscale image by segmenting
//! it into square blocks, decomposing each block with an orthonormal 8-tap
//! wavelet filter bank, and multiplying (bit 1) or dividing (bit 0) the
//! last-scale lowpass coefficients by a strength factor. Detection is
//! non-blind: given the original image, the per-block bit is a majority
//! vote of the coefficient ratios against the threshold
//! `(alpha + 1/alpha)/2`.
//!
//! Two methods are provided:
//!
//! * **Method 1** embeds one bit in every block (defaults: 32x32 blocks,
//!   alpha 1.01).
//! * **Method 2** embeds only in the highest-variance blocks, which hides a
//!   stronger mark (defaults: 16x16 blocks, the top 256 blocks,
//!   alpha 1.025).
//!
//! Alongside the engine there is a deterministic attack simulator (JPEG
//! quantization model, additive white Gaussian noise, mean/median
//! filtering, rotation and scaling with known-parameter compensation,
//! cropping), the BER / PSNR / correlation metrics, binary PGM I/O, and a
//! benchmark runner that sweeps attack grids and writes CSV tables.
//!
//! ```
//! use wavemark::{
//!     capacity, detect, embed, generate_watermark, quantize_to_8bit,
//!     synth::textured_image, WatermarkKey,
//! };
//!
//! let original = textured_image(7, 512, 512);
//! let key = WatermarkKey::method2_defaults(42);
//! let payload = generate_watermark(key.seed, capacity(&key, 512, 512)?);
//! let marked = embed(&original, &payload, &key)?;
//! let stored = quantize_to_8bit(&marked).to_gray();
//! let report = detect(&original, &stored, &key)?;
//! assert_eq!(report.bits, payload);
//! # Ok::<(), wavemark::Error>(())
//! ```
//!
//! Runnable walkthroughs of every capability live in `examples/`; the
//! `wavemark` binary exposes the same pipeline as `gen-key`, `embed`,
//! `attack`, `detect` and `bench` subcommands.

pub mod attack;
pub mod bench;
pub mod error;
pub mod image;
pub mod keyfile;
pub mod metrics;
pub mod pgm;
pub mod report;
pub mod rng;
pub mod synth;
pub mod watermark;
pub mod wavelet;

pub use attack::{AttackSpec, CropRect};
pub use error::{Error, Result};
pub use image::{
    assemble_blocks, block_variance, quantize_to_8bit, segment_blocks, BlockGrid, GrayImage,
    PixelBuffer8,
};
pub use metrics::{ber, corr_coeff, psnr, Psnr};
pub use watermark::{
    capacity, detect, detection_threshold, embed, generate_watermark, select_blocks, BitSequence,
    DetectionReport, Method, WatermarkKey,
};
pub use wavelet::{dwt1d, dwt2d, idwt1d, idwt2d, FilterBank, SubbandPyramid};
