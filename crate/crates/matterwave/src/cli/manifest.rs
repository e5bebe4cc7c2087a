//! Run manifests: after every successful run a `run.json` records the
//! configuration, tool version, wall-clock duration and a content digest of
//! every output file. The manifest is written last, so its presence marks a
//! complete run.

use serde::{Deserialize, Serialize};
use std::path::Path;

use super::config::RunConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub bytes: u64,
    /// FNV-1a 64-bit content digest, hex encoded.
    pub digest: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub config: std::collections::BTreeMap<String, String>,
    pub seed: u64,
    pub version: String,
    pub duration_seconds: f64,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn new(config: &RunConfig, duration_seconds: f64, outputs: Vec<OutputRecord>) -> Self {
        RunManifest {
            command: config.command.clone(),
            config: config.params.clone(),
            seed: config.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds,
            outputs,
        }
    }
}

/// FNV-1a 64-bit digest, hex encoded.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Re-read `run.json` in `dir` and check every recorded digest against the
/// file contents on disk.
pub fn verify_manifest(dir: &Path) -> Result<RunManifest, String> {
    let path = dir.join("run.json");
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| format!("malformed manifest: {e}"))?;
    for record in &manifest.outputs {
        let file = dir.join(&record.path);
        let bytes =
            std::fs::read(&file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
        if bytes.len() as u64 != record.bytes {
            return Err(format!(
                "{}: size {} does not match manifest ({})",
                record.path,
                bytes.len(),
                record.bytes
            ));
        }
        let actual = digest(&bytes);
        if actual != record.digest {
            return Err(format!(
                "{}: digest {actual} does not match manifest ({})",
                record.path, record.digest
            ));
        }
    }
    Ok(manifest)
}
