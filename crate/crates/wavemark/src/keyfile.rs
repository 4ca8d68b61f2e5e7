//! Versioned on-disk key format.
//!
//! A flat, strict-schema JSON document; unknown fields are rejected so a
//! key written by a newer tool cannot silently lose meaning here.

use crate::error::{Error, Result};
use crate::watermark::{Method, WatermarkKey};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

pub const KEY_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub schema_version: u32,
    pub method: String,
    pub alpha: f64,
    pub block_size: u32,
    pub levels: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_blocks: Option<u32>,
    pub seed: u64,
    pub epsilon: f64,
}

impl KeyFile {
    pub fn from_key(key: &WatermarkKey) -> Self {
        KeyFile {
            schema_version: KEY_SCHEMA_VERSION,
            method: key.method.to_string(),
            alpha: key.alpha,
            block_size: key.block_size as u32,
            levels: key.levels,
            num_blocks: key.num_blocks.map(|n| n as u32),
            seed: key.seed,
            epsilon: key.epsilon,
        }
    }

    /// Converts to a validated in-memory key.
    pub fn into_key(self) -> Result<WatermarkKey> {
        if self.schema_version != KEY_SCHEMA_VERSION {
            return Err(Error::KeyFileVersion {
                found: self.schema_version,
                expected: KEY_SCHEMA_VERSION,
            });
        }
        let key = WatermarkKey {
            method: Method::from_str(&self.method)?,
            alpha: self.alpha,
            block_size: self.block_size as usize,
            levels: self.levels,
            num_blocks: self.num_blocks.map(|n| n as usize),
            seed: self.seed,
            epsilon: self.epsilon,
        };
        key.validate()?;
        Ok(key)
    }
}

/// Serializes a key as pretty JSON with a trailing newline.
pub fn key_to_json(key: &WatermarkKey) -> String {
    let file = KeyFile::from_key(key);
    let mut text = serde_json::to_string_pretty(&file).expect("key file serializes");
    text.push('\n');
    text
}

pub fn key_from_json(text: &str) -> Result<WatermarkKey> {
    let file: KeyFile = serde_json::from_str(text).map_err(|e| Error::KeyFile {
        reason: e.to_string(),
    })?;
    file.into_key()
}

pub fn save_key(key: &WatermarkKey, path: impl AsRef<Path>) -> Result<()> {
    key.validate()?;
    std::fs::write(&path, key_to_json(key)).map_err(|e| Error::io(&path, e))
}

pub fn load_key(path: impl AsRef<Path>) -> Result<WatermarkKey> {
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    key_from_json(&text)
}
