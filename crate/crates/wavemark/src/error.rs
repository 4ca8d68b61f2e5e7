//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("image dimensions must be positive, got {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("pixel buffer holds {actual} values, expected {expected} for the stated dimensions")]
    PixelCountMismatch { expected: usize, actual: usize },

    #[error("pixel value at index {index} is not finite")]
    NonFinitePixel { index: usize },

    #[error("{axis} {size} is not divisible by block size {block_size}")]
    DimensionNotDivisible {
        axis: &'static str,
        size: usize,
        block_size: usize,
    },

    #[error("block size {block_size} is not a power of two")]
    NonPowerOfTwoBlockSize { block_size: usize },

    #[error("malformed block grid: {reason}")]
    MalformedGrid { reason: String },

    #[error("signal length {len} is odd; the transform needs an even length")]
    OddSignalLength { len: usize },

    #[error("signal length {len} is too short; need at least 2 samples")]
    SignalTooShort { len: usize },

    #[error("approximation and detail lengths differ: {approx} vs {detail}")]
    SubbandLengthMismatch { approx: usize, detail: usize },

    #[error("block of {len} values is not a {side}x{side} square")]
    NonSquareBlock { len: usize, side: usize },

    #[error("{levels} levels exceed the maximum {max} for block size {block_size}")]
    LevelTooDeep {
        levels: u32,
        max: u32,
        block_size: usize,
    },

    #[error("level count must be at least 1")]
    ZeroLevels,

    #[error("malformed subband pyramid: {reason}")]
    MalformedPyramid { reason: String },

    #[error("filter bank '{name}' violates {property}: |error| = {error:e}")]
    InvalidFilterBank {
        name: String,
        property: &'static str,
        error: f64,
    },

    #[error("alpha must exceed 1, got {alpha}")]
    AlphaOutOfRange { alpha: f64 },

    #[error("epsilon must be nonnegative and finite, got {epsilon}")]
    InvalidEpsilon { epsilon: f64 },

    #[error("method M2 requires a block count (num_blocks)")]
    MissingNumBlocks,

    #[error("num_blocks {requested} exceeds the {available} blocks available")]
    NumBlocksExceedsGrid { requested: usize, available: usize },

    #[error("payload holds {actual} bits but the key/image pairing carries {expected}")]
    CapacityMismatch { expected: usize, actual: usize },

    #[error("bit sequences differ in length: {left} vs {right}")]
    BitLengthMismatch { left: usize, right: usize },

    #[error("bit sequence must not be empty")]
    EmptyBitSequence,

    #[error("invalid bit value {value}; bits must be 0 or 1")]
    InvalidBitValue { value: u8 },

    #[error("invalid character '{ch}' in bit string; expected '0' or '1'")]
    InvalidBitChar { ch: char },

    #[error("image dimensions differ: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },

    #[error("window must be an odd integer >= 3 and <= the shorter image side, got {window}")]
    InvalidWindow { window: usize },

    #[error("JPEG quality must be in 1..=100, got {quality}")]
    InvalidQuality { quality: u32 },

    #[error("scale factor must be in (0, 1], got {factor}")]
    InvalidScaleFactor { factor: f64 },

    #[error("scaled size {scaled} is degenerate for factor {factor}")]
    DegenerateScaledSize { scaled: usize, factor: f64 },

    #[error("noise standard deviation must be nonnegative and finite, got {sigma}")]
    InvalidSigma { sigma: f64 },

    #[error("rotation angle must be finite, got {angle}")]
    InvalidAngle { angle: f64 },

    #[error(
        "crop rectangle {x},{y} {w}x{h} exceeds the {width}x{height} image bounds"
    )]
    RectOutOfBounds {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
        width: usize,
        height: usize,
    },

    #[error("unsupported format {magic}; only binary PGM (P5) is accepted")]
    UnsupportedPgmFormat { magic: String },

    #[error("PGM maxval {maxval} unsupported; only maxval 255 is accepted")]
    UnsupportedPgmMaxval { maxval: u64 },

    #[error("malformed PGM header: {reason}")]
    MalformedPgmHeader { reason: String },

    #[error("truncated PGM payload: expected {expected} bytes, found {actual}")]
    TruncatedPgm { expected: usize, actual: usize },

    #[error("key file: {reason}")]
    KeyFile { reason: String },

    #[error("unsupported key file schema version {found}; expected {expected}")]
    KeyFileVersion { found: u32, expected: u32 },

    #[error("report file: {reason}")]
    ReportFile { reason: String },

    #[error("unknown method '{name}'; expected M1 or M2")]
    UnknownMethod { name: String },

    #[error("unknown suite '{name}'")]
    UnknownSuite { name: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Wraps an I/O failure with the path it occurred on.
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
