//! Binary PGM (P5, maxval 255) reader and writer.
//!
//! The interchange format of the toolkit: single-channel, bit-exact,
//! implementable anywhere. Header comments are tolerated on load and never
//! emitted on save. Everything else (P2/P6, 16-bit maxval) is rejected.

use crate::error::{Error, Result};
use crate::image::PixelBuffer8;
use std::path::Path;

/// Pulls the next whitespace-delimited token, skipping `#` comments.
struct TokenReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> TokenReader<'a> {
    fn new(data: &'a [u8], pos: usize) -> Self {
        TokenReader { data, pos }
    }

    fn skip_filler(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<&'a [u8]> {
        self.skip_filler();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedPgmHeader {
                reason: "unexpected end of header".into(),
            });
        }
        Ok(&self.data[start..self.pos])
    }

    fn next_number(&mut self, what: &str) -> Result<u64> {
        let token = self.next_token()?;
        let text = std::str::from_utf8(token).map_err(|_| Error::MalformedPgmHeader {
            reason: format!("{what} is not ASCII"),
        })?;
        text.parse().map_err(|_| Error::MalformedPgmHeader {
            reason: format!("{what} '{text}' is not a nonnegative integer"),
        })
    }
}

/// Decodes a P5/maxval-255 PGM from memory.
pub fn decode_pgm(data: &[u8]) -> Result<PixelBuffer8> {
    if data.len() < 2 {
        return Err(Error::MalformedPgmHeader {
            reason: "file too short for a magic number".into(),
        });
    }
    let magic = &data[..2];
    if magic != b"P5" {
        let shown = String::from_utf8_lossy(magic).into_owned();
        return Err(Error::UnsupportedPgmFormat { magic: shown });
    }
    let mut reader = TokenReader::new(data, 2);
    let width = reader.next_number("width")?;
    let height = reader.next_number("height")?;
    let maxval = reader.next_number("maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedPgmMaxval { maxval });
    }
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions {
            width: width as usize,
            height: height as usize,
        });
    }
    // exactly one whitespace byte separates the header from the raster
    if reader.pos >= data.len() || !data[reader.pos].is_ascii_whitespace() {
        return Err(Error::MalformedPgmHeader {
            reason: "missing whitespace before the raster".into(),
        });
    }
    let raster_start = reader.pos + 1;
    let (width, height) = (width as usize, height as usize);
    let expected = width
        .checked_mul(height)
        .ok_or(Error::InvalidDimensions { width, height })?;
    let available = data.len() - raster_start;
    if available < expected {
        return Err(Error::TruncatedPgm {
            expected,
            actual: available,
        });
    }
    PixelBuffer8::new(
        width,
        height,
        data[raster_start..raster_start + expected].to_vec(),
    )
}

/// Encodes as P5 with maxval 255: `P5\n{w} {h}\n255\n` + raster.
pub fn encode_pgm(buf: &PixelBuffer8) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", buf.width(), buf.height());
    let mut out = Vec::with_capacity(header.len() + buf.samples().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(buf.samples());
    out
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<PixelBuffer8> {
    let data = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
    decode_pgm(&data)
}

pub fn save_pgm(buf: &PixelBuffer8, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(&path, encode_pgm(buf)).map_err(|e| Error::io(&path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_buffer(seed: u64, w: usize, h: usize) -> PixelBuffer8 {
        let mut rng = SplitMix64::new(seed);
        PixelBuffer8::new(w, h, (0..w * h).map(|_| (rng.next_u64() & 0xff) as u8).collect())
            .unwrap()
    }

    #[test]
    fn encode_decode_round_trip() {
        let buf = random_buffer(1, 37, 19);
        let bytes = encode_pgm(&buf);
        let back = decode_pgm(&bytes).unwrap();
        assert_eq!(buf, back);
    }

    #[test]
    fn header_layout_is_canonical() {
        let buf = PixelBuffer8::new(2, 3, vec![0, 1, 2, 3, 4, 5]).unwrap();
        let bytes = encode_pgm(&buf);
        assert!(bytes.starts_with(b"P5\n2 3\n255\n"));
        assert_eq!(bytes.len(), "P5\n2 3\n255\n".len() + 6);
    }

    #[test]
    fn comments_are_tolerated_on_load() {
        let data = b"P5 # a watermark test card\n# another comment\n 4 \n2\n255\nAAAABBBB";
        let buf = decode_pgm(data).unwrap();
        assert_eq!(buf.dimensions(), (4, 2));
        assert_eq!(buf.samples(), b"AAAABBBB");
    }

    #[test]
    fn rejects_other_netpbm_formats_by_name() {
        let err = decode_pgm(b"P6\n2 2\n255\n............").unwrap_err();
        match err {
            Error::UnsupportedPgmFormat { magic } => assert_eq!(magic, "P6"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            decode_pgm(b"P2\n2 2\n255\n0 0 0 0"),
            Err(Error::UnsupportedPgmFormat { .. })
        ));
    }

    #[test]
    fn rejects_wide_maxval() {
        let err = decode_pgm(b"P5\n2 2\n65535\n........").unwrap_err();
        assert!(matches!(err, Error::UnsupportedPgmMaxval { maxval: 65535 }));
    }

    #[test]
    fn rejects_truncated_raster() {
        let err = decode_pgm(b"P5\n4 4\n255\nshort").unwrap_err();
        assert!(matches!(
            err,
            Error::TruncatedPgm {
                expected: 16,
                actual: 5
            }
        ));
    }

    #[test]
    fn rejects_garbage_header() {
        assert!(decode_pgm(b"P5\nx y\n255\n").is_err());
        assert!(decode_pgm(b"P5").is_err());
        assert!(decode_pgm(b"").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.pgm");
        let buf = random_buffer(2, 64, 64);
        save_pgm(&buf, &path).unwrap();
        assert_eq!(load_pgm(&path).unwrap(), buf);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_pgm("/nonexistent/nowhere.pgm"),
            Err(Error::Io { .. })
        ));
    }
}
