//! Provenance records written next to every command's outputs.
//!
//! A record holds everything needed to re-run the command — tool version,
//! argument vector, resolved configuration, seeds and SHA-256 digests of the
//! inputs — and deliberately no timestamps, so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const FILE_NAME: &str = "provenance.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub bytes: u64,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let data = fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            bytes: data.len() as u64,
            sha256: sha256_hex(&data),
        })
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub config: serde_json::Value,
    pub seeds: BTreeMap<String, u64>,
    pub inputs: Vec<InputDigest>,
}

impl Provenance {
    pub fn new(command: impl Into<String>, args: Vec<String>, config: serde_json::Value) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            args,
            config,
            seeds: BTreeMap::new(),
            inputs: Vec::new(),
        }
    }

    pub fn seed(mut self, name: impl Into<String>, value: u64) -> Self {
        self.seeds.insert(name.into(), value);
        self
    }

    pub fn input(mut self, path: impl AsRef<Path>) -> Result<Self> {
        self.inputs.push(InputDigest::of(path)?);
        Ok(self)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `provenance.json` into `dir`.
    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<PathBuf> {
        let path = dir.as_ref().join(FILE_NAME);
        fs::write(&path, self.to_json()? + "\n").map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn read_from(dir: impl AsRef<Path>) -> Result<Self> {
        let path = dir.as_ref().join(FILE_NAME);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
