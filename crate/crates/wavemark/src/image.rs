//! Grayscale raster types, 8-bit quantization, block segmentation and block
//! statistics.
//!
//! [`GrayImage`] is the universal currency of the pipeline: a real-valued,
//! row-major luminance raster. Values nominally live in 0..=255 but are
//! allowed to leave that range mid-pipeline; only [`quantize_to_8bit`]
//! commits an image to storable form.

use crate::error::{Error, Result};

/// Real-valued grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Builds an image, checking shape and that every value is finite.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::InvalidDimensions { width, height })?;
        if pixels.len() != expected {
            return Err(Error::PixelCountMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        if let Some(index) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinitePixel { index });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    /// Value at column `x`, row `y`. Panics when out of bounds.
    pub fn pixel(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.pixels[y * self.width + x]
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }
}

/// Storable 8-bit grayscale raster, row-major, samples in 0..=255.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelBuffer8 {
    width: usize,
    height: usize,
    samples: Vec<u8>,
}

impl PixelBuffer8 {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::InvalidDimensions { width, height })?;
        if samples.len() != expected {
            return Err(Error::PixelCountMismatch {
                expected,
                actual: samples.len(),
            });
        }
        Ok(PixelBuffer8 {
            width,
            height,
            samples,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    /// Widens back to the real-valued working representation.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.samples.iter().map(|&s| f64::from(s)).collect(),
        }
    }
}

/// Non-overlapping square blocks of an image, row-major over blocks and
/// within each block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid {
    block_size: usize,
    rows: usize,
    cols: usize,
    blocks: Vec<Vec<f64>>,
}

impl BlockGrid {
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn block_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn blocks(&self) -> &[Vec<f64>] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &[f64] {
        &self.blocks[index]
    }

    /// Replaces the block at `index`; the new data must keep the grid shape.
    pub fn set_block(&mut self, index: usize, data: Vec<f64>) -> Result<()> {
        let expected = self.block_size * self.block_size;
        if data.len() != expected {
            return Err(Error::MalformedGrid {
                reason: format!(
                    "replacement block holds {} values, expected {expected}",
                    data.len()
                ),
            });
        }
        if index >= self.blocks.len() {
            return Err(Error::MalformedGrid {
                reason: format!("block index {index} out of range"),
            });
        }
        self.blocks[index] = data;
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.block_size == 0 || self.rows == 0 || self.cols == 0 {
            return Err(Error::MalformedGrid {
                reason: "zero block size or grid extent".into(),
            });
        }
        if self.blocks.len() != self.rows * self.cols {
            return Err(Error::MalformedGrid {
                reason: format!(
                    "{} blocks present, expected {}",
                    self.blocks.len(),
                    self.rows * self.cols
                ),
            });
        }
        let expected = self.block_size * self.block_size;
        for (i, b) in self.blocks.iter().enumerate() {
            if b.len() != expected {
                return Err(Error::MalformedGrid {
                    reason: format!("block {i} holds {} values, expected {expected}", b.len()),
                });
            }
        }
        Ok(())
    }
}

/// Splits an image into non-overlapping `block_size` x `block_size` squares.
///
/// `block_size` must be a power of two and divide both dimensions; block
/// (r, c) covers pixel rows [r*B, (r+1)*B) and columns [c*B, (c+1)*B).
pub fn segment_blocks(img: &GrayImage, block_size: usize) -> Result<BlockGrid> {
    if block_size == 0 || !block_size.is_power_of_two() {
        return Err(Error::NonPowerOfTwoBlockSize { block_size });
    }
    if img.width() % block_size != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "width",
            size: img.width(),
            block_size,
        });
    }
    if img.height() % block_size != 0 {
        return Err(Error::DimensionNotDivisible {
            axis: "height",
            size: img.height(),
            block_size,
        });
    }
    let cols = img.width() / block_size;
    let rows = img.height() / block_size;
    let mut blocks = Vec::with_capacity(rows * cols);
    for br in 0..rows {
        for bc in 0..cols {
            let mut block = Vec::with_capacity(block_size * block_size);
            for y in 0..block_size {
                let row_start = (br * block_size + y) * img.width() + bc * block_size;
                block.extend_from_slice(&img.pixels()[row_start..row_start + block_size]);
            }
            blocks.push(block);
        }
    }
    Ok(BlockGrid {
        block_size,
        rows,
        cols,
        blocks,
    })
}

/// Reassembles a block grid into the image it partitions; exact inverse of
/// [`segment_blocks`].
pub fn assemble_blocks(grid: &BlockGrid) -> Result<GrayImage> {
    grid.validate()?;
    let width = grid.cols * grid.block_size;
    let height = grid.rows * grid.block_size;
    let mut pixels = vec![0.0; width * height];
    for br in 0..grid.rows {
        for bc in 0..grid.cols {
            let block = &grid.blocks[br * grid.cols + bc];
            for y in 0..grid.block_size {
                let src = y * grid.block_size;
                let dst = (br * grid.block_size + y) * width + bc * grid.block_size;
                pixels[dst..dst + grid.block_size]
                    .copy_from_slice(&block[src..src + grid.block_size]);
            }
        }
    }
    GrayImage::new(width, height, pixels)
}

/// Rounds half away from zero and clamps to 0..=255.
///
/// A fixed rounding rule keeps outputs bit-identical across runs and
/// implementations.
pub fn quantize_to_8bit(img: &GrayImage) -> PixelBuffer8 {
    let samples = img
        .pixels()
        .iter()
        .map(|&v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    PixelBuffer8 {
        width: img.width(),
        height: img.height(),
        samples,
    }
}

/// Population variance of a block (divisor = element count).
///
/// Panics on an empty block.
pub fn block_variance(block: &[f64]) -> f64 {
    assert!(!block.is_empty(), "block_variance needs a nonempty block");
    let n = block.len() as f64;
    let mean = block.iter().sum::<f64>() / n;
    block.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / n
}
