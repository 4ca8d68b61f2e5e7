//! Detection report serialization.
//!
//! A structured JSON document: recovered bits as a 0/1 string, per-block
//! vote margins, undecidable flags, the threshold that was applied, and —
//! when the expected payload is known — BER and correlation coefficient.

use crate::error::{Error, Result};
use crate::metrics::{ber, corr_coeff};
use crate::watermark::{BitSequence, DetectionReport, WatermarkKey};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportFile {
    pub schema_version: u32,
    pub method: String,
    pub threshold: f64,
    pub bits: String,
    pub margins: Vec<f64>,
    pub undecidable: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ber_percent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr_coeff: Option<f64>,
}

impl ReportFile {
    /// Assembles the on-disk form; metrics are filled in when the expected
    /// payload is provided.
    pub fn build(
        report: &DetectionReport,
        key: &WatermarkKey,
        expected: Option<&BitSequence>,
    ) -> Result<Self> {
        let (ber_percent, cc) = match expected {
            Some(reference) => (
                Some(ber(reference, &report.bits)?),
                Some(corr_coeff(reference, &report.bits)?),
            ),
            None => (None, None),
        };
        Ok(ReportFile {
            schema_version: REPORT_SCHEMA_VERSION,
            method: key.method.to_string(),
            threshold: report.threshold,
            bits: report.bits.to_string(),
            margins: report.margins.clone(),
            undecidable: report.undecidable.clone(),
            ber_percent,
            corr_coeff: cc,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ReportFile {
            reason: e.to_string(),
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(&path, self.to_json()).map_err(|e| Error::io(&path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::textured_image;
    use crate::watermark::{capacity, detect, embed, generate_watermark, WatermarkKey};

    #[test]
    fn report_round_trip_with_metrics() {
        let img = textured_image(1, 128, 128);
        let mut key = WatermarkKey::method1_defaults(7);
        key.block_size = 32;
        let cap = capacity(&key, 128, 128).unwrap();
        let bits = generate_watermark(key.seed, cap);
        let marked = embed(&img, &bits, &key).unwrap();
        let detection = detect(&img, &marked, &key).unwrap();

        let file = ReportFile::build(&detection, &key, Some(&bits)).unwrap();
        assert_eq!(file.ber_percent, Some(0.0));
        assert_eq!(file.corr_coeff, Some(1.0));
        assert_eq!(file.bits.len(), cap);
        assert_eq!(file.margins.len(), cap);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        file.save(&path).unwrap();
        assert_eq!(ReportFile::load(&path).unwrap(), file);
    }

    #[test]
    fn metrics_absent_without_expected_bits() {
        let img = textured_image(2, 64, 64);
        let mut key = WatermarkKey::method1_defaults(7);
        key.block_size = 32;
        let detection = detect(&img, &img, &key).unwrap();
        let file = ReportFile::build(&detection, &key, None).unwrap();
        assert!(file.ber_percent.is_none());
        assert!(file.corr_coeff.is_none());
        let text = file.to_json();
        assert!(!text.contains("ber_percent"));
        assert!(!text.contains("corr_coeff"));
    }
}
