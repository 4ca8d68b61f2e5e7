//! Orthonormal discrete wavelet transform with 8-tap filters, periodic
//! boundary handling and exact inverse.
//!
//! The 1-D analysis step is a circular correlation downsampled by two,
//! keeping the even output phase:
//!
//! ```text
//! approx[i] = sum_k lo[k] * x[(2i + k) mod n]
//! detail[i] = sum_k hi[k] * x[(2i + k) mod n]
//! ```
//!
//! Periodic extension keeps critical sampling at every even length down to
//! n = 2, so a 2^k x 2^k block decomposes all the way to a 1x1 lowpass
//! band. Because the filter bank is orthonormal, the synthesis step is the
//! exact adjoint of analysis and reconstruction is exact to roundoff.

use crate::error::{Error, Result};

pub const FILTER_LEN: usize = 8;

/// Analysis lowpass taps of the least-asymmetric Daubechies 8-tap filter,
/// rounded from a high-precision spectral factorization so the unit-energy
/// and sqrt(2)-DC-gain identities hold to the last double bit.
const SYMLET8_LOW: [f64; FILTER_LEN] = [
    0.032223100604051466,
    -0.012603967262031304,
    -0.09921954357663353,
    0.29785779560530606,
    0.8037387518051321,
    0.497618667632775,
    -0.029635527646002493,
    -0.07576571478950221,
];

/// Two-channel orthonormal filter bank.
///
/// Analysis filters are applied in correlation orientation (see module
/// docs); the synthesis filters are their time reversals and are applied in
/// convolution orientation, which makes [`idwt1d`] the exact adjoint (and
/// hence inverse) of [`dwt1d`].
#[derive(Debug, Clone)]
pub struct FilterBank {
    pub name: String,
    pub analysis_low: [f64; FILTER_LEN],
    pub analysis_high: [f64; FILTER_LEN],
    pub synthesis_low: [f64; FILTER_LEN],
    pub synthesis_high: [f64; FILTER_LEN],
}

impl FilterBank {
    /// The crate's default bank: length-8 symlet (least-asymmetric
    /// Daubechies) filters.
    pub fn symlet8() -> Self {
        Self::from_lowpass("symlet8", SYMLET8_LOW)
            .expect("built-in symlet8 coefficients satisfy the bank invariants")
    }

    /// Derives a full bank from an orthonormal lowpass filter.
    ///
    /// The highpass is the quadrature-mirror of the lowpass
    /// (`g[k] = (-1)^k h[L-1-k]`) and the synthesis pair is the time
    /// reversal of the analysis pair.
    pub fn from_lowpass(name: &str, analysis_low: [f64; FILTER_LEN]) -> Result<Self> {
        let mut analysis_high = [0.0; FILTER_LEN];
        for (k, g) in analysis_high.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *g = sign * analysis_low[FILTER_LEN - 1 - k];
        }
        let mut synthesis_low = analysis_low;
        synthesis_low.reverse();
        let mut synthesis_high = analysis_high;
        synthesis_high.reverse();
        let bank = FilterBank {
            name: name.to_string(),
            analysis_low,
            analysis_high,
            synthesis_low,
            synthesis_high,
        };
        bank.validate()?;
        Ok(bank)
    }

    /// Checks the orthonormal bank identities:
    /// unit energy, sqrt(2) DC gain, zero-sum highpass, quadrature-mirror
    /// relation and time-reversed synthesis filters. Tolerance 1e-12.
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        let fail = |property: &'static str, error: f64| Error::InvalidFilterBank {
            name: self.name.clone(),
            property,
            error,
        };

        let energy: f64 = self.analysis_low.iter().map(|h| h * h).sum();
        if (energy - 1.0).abs() > TOL {
            return Err(fail("unit energy of analysis lowpass", (energy - 1.0).abs()));
        }
        let dc: f64 = self.analysis_low.iter().sum();
        let dc_err = (dc - std::f64::consts::SQRT_2).abs();
        if dc_err > TOL {
            return Err(fail("sqrt(2) DC gain of analysis lowpass", dc_err));
        }
        let hp_sum: f64 = self.analysis_high.iter().sum();
        if hp_sum.abs() > TOL {
            return Err(fail("zero sum of analysis highpass", hp_sum.abs()));
        }
        for k in 0..FILTER_LEN {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let err = (self.analysis_high[k] - sign * self.analysis_low[FILTER_LEN - 1 - k]).abs();
            if err > TOL {
                return Err(fail("quadrature-mirror relation", err));
            }
            let err = (self.synthesis_low[k] - self.analysis_low[FILTER_LEN - 1 - k]).abs();
            if err > TOL {
                return Err(fail("time-reversed synthesis lowpass", err));
            }
            let err = (self.synthesis_high[k] - self.analysis_high[FILTER_LEN - 1 - k]).abs();
            if err > TOL {
                return Err(fail("time-reversed synthesis highpass", err));
            }
        }
        Ok(())
    }
}

/// One analysis step: periodized correlation, downsampled by two.
///
/// Accepts any even length >= 2; energy is conserved to roundoff.
pub fn dwt1d(signal: &[f64], fb: &FilterBank) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = signal.len();
    if n < 2 {
        return Err(Error::SignalTooShort { len: n });
    }
    if n % 2 != 0 {
        return Err(Error::OddSignalLength { len: n });
    }
    let half = n / 2;
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    for i in 0..half {
        let mut a = 0.0;
        let mut d = 0.0;
        for k in 0..FILTER_LEN {
            let x = signal[(2 * i + k) % n];
            a += fb.analysis_low[k] * x;
            d += fb.analysis_high[k] * x;
        }
        approx[i] = a;
        detail[i] = d;
    }
    Ok((approx, detail))
}

/// One synthesis step: exact inverse of [`dwt1d`].
///
/// The synthesis filters run in convolution orientation; since they are the
/// time reversals of the analysis pair this is precisely the adjoint of the
/// analysis step, and the adjoint of an orthonormal map is its inverse.
pub fn idwt1d(approx: &[f64], detail: &[f64], fb: &FilterBank) -> Result<Vec<f64>> {
    if approx.len() != detail.len() {
        return Err(Error::SubbandLengthMismatch {
            approx: approx.len(),
            detail: detail.len(),
        });
    }
    if approx.is_empty() {
        return Err(Error::SignalTooShort { len: 0 });
    }
    let n = approx.len() * 2;
    let mut signal = vec![0.0; n];
    for i in 0..approx.len() {
        let a = approx[i];
        let d = detail[i];
        for k in 0..FILTER_LEN {
            let j = (2 * i + k) % n;
            signal[j] += a * fb.synthesis_low[FILTER_LEN - 1 - k]
                + d * fb.synthesis_high[FILTER_LEN - 1 - k];
        }
    }
    Ok(signal)
}

/// Detail subbands of one decomposition level.
///
/// `lh` is lowpass along x / highpass along y (bottom-left quadrant), `hl`
/// the transpose arrangement (top-right), `hh` highpass in both.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands {
    pub side: usize,
    pub lh: Vec<f64>,
    pub hl: Vec<f64>,
    pub hh: Vec<f64>,
}

/// Full dyadic 2-D decomposition of one square block.
///
/// `details[0]` holds the first (finest, side `block_size`/2) level;
/// deeper levels follow. The lowpass band that remains after the last
/// level has side `block_size >> levels`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandPyramid {
    block_size: usize,
    levels: u32,
    ll: Vec<f64>,
    details: Vec<DetailBands>,
}

impl SubbandPyramid {
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn ll_side(&self) -> usize {
        self.block_size >> self.levels
    }

    /// Coefficients of the last lowpass scale, row-major.
    pub fn ll(&self) -> &[f64] {
        &self.ll
    }

    pub fn ll_mut(&mut self) -> &mut [f64] {
        &mut self.ll
    }

    pub fn details(&self) -> &[DetailBands] {
        &self.details
    }

    pub fn total_coefficients(&self) -> usize {
        self.ll.len()
            + self
                .details
                .iter()
                .map(|d| d.lh.len() + d.hl.len() + d.hh.len())
                .sum::<usize>()
    }

    pub fn validate(&self) -> Result<()> {
        let malformed = |reason: String| Error::MalformedPyramid { reason };
        if self.levels == 0 {
            return Err(malformed("zero levels".into()));
        }
        if !self.block_size.is_power_of_two() {
            return Err(malformed(format!(
                "block size {} is not a power of two",
                self.block_size
            )));
        }
        let max = self.block_size.trailing_zeros();
        if self.levels > max {
            return Err(malformed(format!(
                "{} levels exceed log2({}) = {max}",
                self.levels, self.block_size
            )));
        }
        let ll_side = self.block_size >> self.levels;
        if self.ll.len() != ll_side * ll_side {
            return Err(malformed(format!(
                "lowpass band holds {} values, expected {}",
                self.ll.len(),
                ll_side * ll_side
            )));
        }
        if self.details.len() != self.levels as usize {
            return Err(malformed(format!(
                "{} detail levels present, expected {}",
                self.details.len(),
                self.levels
            )));
        }
        for (i, d) in self.details.iter().enumerate() {
            let side = self.block_size >> (i + 1);
            if d.side != side {
                return Err(malformed(format!(
                    "detail level {i} has side {}, expected {side}",
                    d.side
                )));
            }
            let want = side * side;
            if d.lh.len() != want || d.hl.len() != want || d.hh.len() != want {
                return Err(malformed(format!("detail level {i} band size mismatch")));
            }
        }
        if self.total_coefficients() != self.block_size * self.block_size {
            return Err(malformed("coefficient count does not match block area".into()));
        }
        Ok(())
    }
}

fn check_block_shape(len: usize, side: usize, levels: u32) -> Result<()> {
    if side == 0 || !side.is_power_of_two() {
        return Err(Error::NonPowerOfTwoBlockSize { block_size: side });
    }
    if len != side * side {
        return Err(Error::NonSquareBlock { len, side });
    }
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    let max = side.trailing_zeros();
    if levels > max {
        return Err(Error::LevelTooDeep {
            levels,
            max,
            block_size: side,
        });
    }
    Ok(())
}

/// Separable 2-D analysis: rows then columns per level, recursing on the
/// lowpass quadrant.
pub fn dwt2d(block: &[f64], side: usize, levels: u32, fb: &FilterBank) -> Result<SubbandPyramid> {
    check_block_shape(block.len(), side, levels)?;
    let mut cur = block.to_vec();
    let mut s = side;
    let mut details = Vec::with_capacity(levels as usize);
    for _ in 0..levels {
        let half = s / 2;
        // rows
        let mut row_pass = vec![0.0; s * s];
        for r in 0..s {
            let (a, d) = dwt1d(&cur[r * s..(r + 1) * s], fb)?;
            row_pass[r * s..r * s + half].copy_from_slice(&a);
            row_pass[r * s + half..(r + 1) * s].copy_from_slice(&d);
        }
        // columns
        let mut col_pass = vec![0.0; s * s];
        let mut column = vec![0.0; s];
        for c in 0..s {
            for r in 0..s {
                column[r] = row_pass[r * s + c];
            }
            let (a, d) = dwt1d(&column, fb)?;
            for r in 0..half {
                col_pass[r * s + c] = a[r];
                col_pass[(r + half) * s + c] = d[r];
            }
        }
        // quadrants
        let mut ll = vec![0.0; half * half];
        let mut hl = vec![0.0; half * half];
        let mut lh = vec![0.0; half * half];
        let mut hh = vec![0.0; half * half];
        for r in 0..half {
            for c in 0..half {
                ll[r * half + c] = col_pass[r * s + c];
                hl[r * half + c] = col_pass[r * s + c + half];
                lh[r * half + c] = col_pass[(r + half) * s + c];
                hh[r * half + c] = col_pass[(r + half) * s + c + half];
            }
        }
        details.push(DetailBands {
            side: half,
            lh,
            hl,
            hh,
        });
        cur = ll;
        s = half;
    }
    Ok(SubbandPyramid {
        block_size: side,
        levels,
        ll: cur,
        details,
    })
}

/// Separable 2-D synthesis: exact inverse of [`dwt2d`].
pub fn idwt2d(pyr: &SubbandPyramid, fb: &FilterBank) -> Result<Vec<f64>> {
    pyr.validate()?;
    let mut cur = pyr.ll.clone();
    let mut s = pyr.ll_side();
    for bands in pyr.details.iter().rev() {
        let full = s * 2;
        // reassemble quadrant layout
        let mut col_pass = vec![0.0; full * full];
        for r in 0..s {
            for c in 0..s {
                col_pass[r * full + c] = cur[r * s + c];
                col_pass[r * full + c + s] = bands.hl[r * s + c];
                col_pass[(r + s) * full + c] = bands.lh[r * s + c];
                col_pass[(r + s) * full + c + s] = bands.hh[r * s + c];
            }
        }
        // inverse columns
        let mut row_pass = vec![0.0; full * full];
        let mut approx = vec![0.0; s];
        let mut detail = vec![0.0; s];
        for c in 0..full {
            for r in 0..s {
                approx[r] = col_pass[r * full + c];
                detail[r] = col_pass[(r + s) * full + c];
            }
            let col = idwt1d(&approx, &detail, fb)?;
            for r in 0..full {
                row_pass[r * full + c] = col[r];
            }
        }
        // inverse rows
        let mut out = vec![0.0; full * full];
        for r in 0..full {
            let row = &row_pass[r * full..(r + 1) * full];
            let rec = idwt1d(&row[..s], &row[s..], fb)?;
            out[r * full..(r + 1) * full].copy_from_slice(&rec);
        }
        cur = out;
        s = full;
    }
    Ok(cur)
}
