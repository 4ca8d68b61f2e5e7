//! Embedding and non-blind detection.
//!
//! Both methods hide one payload bit per block in the last lowpass scale of
//! the block's wavelet pyramid: every lowpass coefficient is multiplied by
//! the strength factor to embed a 1, or divided by it to embed a 0. Method 1
//! uses every block of the segmented image; Method 2 embeds only in the
//! highest-variance blocks, which tolerates a larger strength factor at the
//! same visual quality.
//!
//! Detection divides the received block's lowpass coefficients by the
//! original's and compares the ratios against the threshold
//! `(alpha + 1/alpha) / 2`; the per-block bit is the majority vote.

use crate::error::{Error, Result};
use crate::image::{assemble_blocks, block_variance, segment_blocks, BlockGrid, GrayImage};
use crate::rng::SplitMix64;
use crate::wavelet::{dwt2d, idwt2d, FilterBank};

/// Embedding scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// One bit in every block.
    M1,
    /// One bit in each of the N highest-variance blocks.
    M2,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::M1 => "M1",
            Method::M2 => "M2",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "M1" | "1" => Ok(Method::M1),
            "M2" | "2" => Ok(Method::M2),
            _ => Err(Error::UnknownMethod { name: s.into() }),
        }
    }
}

/// Complete parameter set for embedding and detection.
#[derive(Debug, Clone, PartialEq)]
pub struct WatermarkKey {
    pub method: Method,
    /// Strength factor; must exceed 1.
    pub alpha: f64,
    /// Block side in pixels; power of two.
    pub block_size: usize,
    /// Decomposition depth per block; at most log2(block_size).
    pub levels: u32,
    /// Number of embedding blocks (Method 2 only).
    pub num_blocks: Option<usize>,
    /// Seed of the payload bit stream.
    pub seed: u64,
    /// Coefficients below this magnitude are excluded from the detection
    /// vote, guarding the ratio against division by (near-)zero.
    pub epsilon: f64,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_EPSILON: f64 = 1e-6;

impl WatermarkKey {
    /// Method 1 defaults: 32x32 blocks, full-depth decomposition,
    /// strength 1.01 (256 bits on a 512x512 image).
    pub fn method1_defaults(seed: u64) -> Self {
        WatermarkKey {
            method: Method::M1,
            alpha: 1.01,
            block_size: 32,
            levels: 5,
            num_blocks: None,
            seed,
            epsilon: DEFAULT_EPSILON,
        }
    }

    /// Method 2 defaults: 16x16 blocks, full-depth decomposition,
    /// strength 1.025, 256 selected blocks (matching Method 1's capacity on
    /// a 512x512 image).
    pub fn method2_defaults(seed: u64) -> Self {
        WatermarkKey {
            method: Method::M2,
            alpha: 1.025,
            block_size: 16,
            levels: 4,
            num_blocks: Some(256),
            seed,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::AlphaOutOfRange { alpha: self.alpha });
        }
        if self.block_size == 0 || !self.block_size.is_power_of_two() {
            return Err(Error::NonPowerOfTwoBlockSize {
                block_size: self.block_size,
            });
        }
        if self.levels == 0 {
            return Err(Error::ZeroLevels);
        }
        let max = self.block_size.trailing_zeros();
        if self.levels > max {
            return Err(Error::LevelTooDeep {
                levels: self.levels,
                max,
                block_size: self.block_size,
            });
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidEpsilon {
                epsilon: self.epsilon,
            });
        }
        if self.method == Method::M2 && self.num_blocks.is_none() {
            return Err(Error::MissingNumBlocks);
        }
        if let Some(0) = self.num_blocks {
            return Err(Error::NumBlocksExceedsGrid {
                requested: 0,
                available: 0,
            });
        }
        Ok(())
    }

    /// Detection threshold for this key's strength factor.
    pub fn threshold(&self) -> Result<f64> {
        detection_threshold(self.alpha)
    }
}

/// The optimum decision threshold for the multiplicative embedding rule:
/// `(alpha + 1/alpha) / 2`, strictly between 1 and alpha.
pub fn detection_threshold(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    Ok((alpha + 1.0 / alpha) / 2.0)
}

/// Payload size of a key/geometry pairing: one bit per embedding block.
pub fn capacity(key: &WatermarkKey, width: usize, height: usize) -> Result<usize> {
    key.validate()?;
    if width % key.block_size != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "width",
            size: width,
            block_size: key.block_size,
        });
    }
    if height % key.block_size != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "height",
            size: height,
            block_size: key.block_size,
        });
    }
    let total = (width / key.block_size) * (height / key.block_size);
    match key.method {
        Method::M1 => Ok(total),
        Method::M2 => {
            let n = key.num_blocks.ok_or(Error::MissingNumBlocks)?;
            if n > total {
                return Err(Error::NumBlocksExceedsGrid {
                    requested: n,
                    available: total,
                });
            }
            Ok(n)
        }
    }
}

/// Binary watermark payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    /// Wraps a vector of 0/1 values; rejects empty input and other values.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyBitSequence);
        }
        if let Some(&value) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBitValue { value });
        }
        Ok(BitSequence { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl std::fmt::Display for BitSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::InvalidBitChar { ch }),
            }
        }
        BitSequence::from_bits(bits)
    }
}

/// Deterministic pseudorandom payload: the most significant bit of each
/// SplitMix64 output. The same (seed, length) pair yields the same sequence
/// on every implementation.
pub fn generate_watermark(seed: u64, length: usize) -> BitSequence {
    assert!(length >= 1, "watermark length must be at least 1");
    let mut rng = SplitMix64::new(seed);
    BitSequence {
        bits: (0..length).map(|_| (rng.next_u64() >> 63) as u8).collect(),
    }
}

/// Outcome of non-blind detection.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    /// Recovered payload, one bit per embedding block in ascending
    /// row-major block order.
    pub bits: BitSequence,
    /// Per block: fraction of usable lowpass coefficients voting 1.
    pub margins: Vec<f64>,
    /// Per block: true when the epsilon guard excluded every coefficient.
    pub undecidable: Vec<bool>,
    /// The decision threshold that was applied.
    pub threshold: f64,
}

/// One block's majority vote.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockVote {
    pub bit: u8,
    /// vote_1 / usable, in [0, 1]; 0 when undecidable.
    pub margin: f64,
    pub undecidable: bool,
}

/// Majority vote over the ratio of received to original lowpass
/// coefficients. Coefficients whose original magnitude falls below
/// `epsilon` are excluded; a bit is 1 only on a strict majority (an exact
/// tie detects 0), and a block with no usable coefficient is flagged
/// undecidable and emits 0.
pub fn vote_lowpass(
    original_ll: &[f64],
    received_ll: &[f64],
    threshold: f64,
    epsilon: f64,
) -> BlockVote {
    debug_assert_eq!(original_ll.len(), received_ll.len());
    let mut usable = 0usize;
    let mut ones = 0usize;
    for (&orig, &recv) in original_ll.iter().zip(received_ll) {
        if orig.abs() < epsilon {
            continue;
        }
        usable += 1;
        if recv / orig > threshold {
            ones += 1;
        }
    }
    if usable == 0 {
        return BlockVote {
            bit: 0,
            margin: 0.0,
            undecidable: true,
        };
    }
    BlockVote {
        bit: u8::from(2 * ones > usable),
        margin: ones as f64 / usable as f64,
        undecidable: false,
    }
}

fn selection_from_grid(grid: &BlockGrid, key: &WatermarkKey) -> Result<Vec<usize>> {
    let total = grid.block_count();
    match key.method {
        Method::M1 => Ok((0..total).collect()),
        Method::M2 => {
            let n = key.num_blocks.ok_or(Error::MissingNumBlocks)?;
            if n > total {
                return Err(Error::NumBlocksExceedsGrid {
                    requested: n,
                    available: total,
                });
            }
            let variances: Vec<f64> = grid.blocks().iter().map(|b| block_variance(b)).collect();
            let mut order: Vec<usize> = (0..total).collect();
            // highest variance first; ties go to the smaller index
            order.sort_by(|&a, &b| variances[b].total_cmp(&variances[a]).then(a.cmp(&b)));
            let mut selected = order[..n].to_vec();
            // payload order is spatial, not variance-ranked
            selected.sort_unstable();
            Ok(selected)
        }
    }
}

/// Block indices that carry payload bits, ascending row-major.
///
/// Method 1 selects every block; Method 2 the `num_blocks` highest-variance
/// blocks of `img` (ties broken toward the smaller index).
pub fn select_blocks(img: &GrayImage, key: &WatermarkKey) -> Result<Vec<usize>> {
    key.validate()?;
    let grid = segment_blocks(img, key.block_size)?;
    selection_from_grid(&grid, key)
}

/// Embeds `bits` into `img` under `key`, returning the real-valued
/// watermarked image (quantize separately for storage).
///
/// Non-selected blocks are copied bit-identically; selected blocks have
/// every last-scale lowpass coefficient multiplied by alpha (bit 1) or
/// divided by alpha (bit 0), detail bands untouched.
pub fn embed(img: &GrayImage, bits: &BitSequence, key: &WatermarkKey) -> Result<GrayImage> {
    key.validate()?;
    let expected = capacity(key, img.width(), img.height())?;
    if bits.len() != expected {
        return Err(Error::CapacityMismatch {
            expected,
            actual: bits.len(),
        });
    }
    let fb = FilterBank::symlet8();
    let mut grid = segment_blocks(img, key.block_size)?;
    let selected = selection_from_grid(&grid, key)?;
    for (&block_index, &bit) in selected.iter().zip(bits.bits()) {
        let mut pyramid = dwt2d(grid.block(block_index), key.block_size, key.levels, &fb)?;
        for coeff in pyramid.ll_mut() {
            if bit == 1 {
                *coeff *= key.alpha;
            } else {
                *coeff /= key.alpha;
            }
        }
        grid.set_block(block_index, idwt2d(&pyramid, &fb)?)?;
    }
    assemble_blocks(&grid)
}

/// Non-blind detection: recovers one bit per embedding block by majority
/// vote over the lowpass coefficient ratios.
///
/// Method 2's block selection is recomputed from the variances of the
/// ORIGINAL image only, so attacks on the received image cannot
/// desynchronize the selection.
pub fn detect(
    original: &GrayImage,
    received: &GrayImage,
    key: &WatermarkKey,
) -> Result<DetectionReport> {
    key.validate()?;
    if original.dimensions() != received.dimensions() {
        return Err(Error::DimensionMismatch {
            left_width: original.width(),
            left_height: original.height(),
            right_width: received.width(),
            right_height: received.height(),
        });
    }
    let threshold = key.threshold()?;
    let fb = FilterBank::symlet8();
    let orig_grid = segment_blocks(original, key.block_size)?;
    let recv_grid = segment_blocks(received, key.block_size)?;
    let selected = selection_from_grid(&orig_grid, key)?;

    let mut bits = Vec::with_capacity(selected.len());
    let mut margins = Vec::with_capacity(selected.len());
    let mut undecidable = Vec::with_capacity(selected.len());
    for &block_index in &selected {
        let orig_pyr = dwt2d(orig_grid.block(block_index), key.block_size, key.levels, &fb)?;
        let recv_pyr = dwt2d(recv_grid.block(block_index), key.block_size, key.levels, &fb)?;
        let vote = vote_lowpass(orig_pyr.ll(), recv_pyr.ll(), threshold, key.epsilon);
        bits.push(vote.bit);
        margins.push(vote.margin);
        undecidable.push(vote.undecidable);
    }
    Ok(DetectionReport {
        bits: BitSequence::from_bits(bits)?,
        margins,
        undecidable,
        threshold,
    })
}
