//! Run configuration: command line plus optional key-value config file,
//! with unit-suffix parsing. Flags override file values; keys unknown to the
//! addressed subcommand are rejected rather than ignored.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::constants::{Species, EV};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Subcommand path, e.g. ["twomode", "ground-scan"].
    pub command: Vec<String>,
    /// Merged parameter map (file values overridden by flags), raw strings.
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub format: Format,
    pub dry_run: bool,
    /// Re-read and re-hash the manifest after the run.
    pub verify_manifest: bool,
}

/// Keys handled by the framework rather than the subcommands. Keys of the
/// form `mass.<species>` override entries of the compiled-in species-mass
/// table (kg), which keeps unit tests independent of the CODATA values.
const GLOBAL_KEYS: &[&str] = &[
    "config",
    "seed",
    "out",
    "format",
    "dry-run",
    "verify-manifest",
];

/// Environment variable providing the default output directory.
pub const OUTPUT_DIR_ENV: &str = "MATTERWAVE_OUT";

/// Parse command-line arguments (without the program name) into a validated
/// configuration. The first one or two positional arguments select the
/// subcommand; everything else must be `--key value` pairs (booleans take no
/// value). A `--config FILE` key-value file is merged in with lower
/// precedence than the flags.
pub fn parse_config(args: &[String]) -> Result<RunConfig, ConfigError> {
    let mut command = Vec::new();
    let mut flags: BTreeMap<String, String> = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if let Some(key) = arg.strip_prefix("--") {
            let key = key.to_string();
            if key.is_empty() {
                return Err(ConfigError("empty flag name".into()));
            }
            if key == "dry-run" || key == "verify-manifest" || key == "binary" {
                flags.insert(key, "true".into());
                i += 1;
            } else {
                let value = args
                    .get(i + 1)
                    .ok_or_else(|| ConfigError(format!("flag --{key} is missing its value")))?;
                flags.insert(key, value.clone());
                i += 2;
            }
        } else {
            // at most "topic action variant", e.g. "optics calc eikonal"
            if command.len() >= 3 {
                return Err(ConfigError(format!(
                    "unexpected positional argument '{arg}'"
                )));
            }
            command.push(arg.clone());
            i += 1;
        }
    }
    if command.is_empty() {
        return Err(ConfigError(
            "no subcommand given; expected e.g. 'twomode ground-scan' (see README)".into(),
        ));
    }

    // config file values sit below the flags
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    if let Some(path) = flags.get("config") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config file {path}: {e}")))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("{path}:{}: expected 'key = value'", lineno + 1))
            })?;
            params.insert(key.trim().to_string(), value.trim().to_string());
        }
    }
    for (k, v) in &flags {
        if k != "config" {
            params.insert(k.clone(), v.clone());
        }
    }

    let seed = match params.remove("seed") {
        Some(s) => s.parse::<u64>().map_err(|_| {
            ConfigError(format!("seed must be a 64-bit unsigned integer, got '{s}'"))
        })?,
        None => 0,
    };
    let output_dir = params
        .remove("out")
        .map(PathBuf::from)
        .or_else(|| std::env::var(OUTPUT_DIR_ENV).ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let format = match params.remove("format").as_deref() {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => {
            return Err(ConfigError(format!(
                "format must be 'csv' or 'json', got '{other}'"
            )))
        }
    };
    let dry_run = params.remove("dry-run").as_deref() == Some("true");
    let verify_manifest = params.remove("verify-manifest").as_deref() == Some("true");
    params.remove("config");

    Ok(RunConfig {
        command,
        params,
        seed,
        output_dir,
        format,
        dry_run,
        verify_manifest,
    })
}

impl RunConfig {
    /// Check that every remaining parameter key is known to the subcommand.
    pub fn reject_unknown_keys(&self, known: &[&str]) -> Result<(), ConfigError> {
        for key in self.params.keys() {
            if !known.contains(&key.as_str())
                && !GLOBAL_KEYS.contains(&key.as_str())
                && !(key.starts_with("mass.") && Species::parse(&key[5..]).is_some())
            {
                return Err(ConfigError(format!(
                    "unknown key '{key}' for '{}'; known keys: {}",
                    self.command.join(" "),
                    known.join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(|s| s.as_str())
    }

    /// A required quantity with unit suffix.
    pub fn require_quantity(&self, key: &str) -> Result<f64, ConfigError> {
        let raw = self
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing required field --{key}")))?;
        parse_quantity(raw).map_err(|e| ConfigError(format!("field --{key}: {e}")))
    }

    pub fn quantity_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.get(key) {
            Some(raw) => {
                parse_quantity(raw).map_err(|e| ConfigError(format!("field --{key}: {e}")))
            }
            None => Ok(default),
        }
    }

    pub fn require_usize(&self, key: &str) -> Result<usize, ConfigError> {
        let raw = self
            .get(key)
            .ok_or_else(|| ConfigError(format!("missing required field --{key}")))?;
        raw.parse::<usize>()
            .map_err(|_| ConfigError(format!("field --{key}: expected an integer, got '{raw}'")))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.get(key) {
            Some(raw) => raw.parse::<usize>().map_err(|_| {
                ConfigError(format!("field --{key}: expected an integer, got '{raw}'"))
            }),
            None => Ok(default),
        }
    }

    pub fn string_or(&self, key: &str, default: &str) -> String {
        self.get(key).unwrap_or(default).to_string()
    }

    /// Mass in kg from either --m (kg, with suffix support) or --species.
    /// A `mass.<species>` key overrides the compiled-in table entry.
    pub fn mass(&self) -> Result<f64, ConfigError> {
        if let Some(m) = self.get("m") {
            return parse_quantity(m).map_err(|e| ConfigError(format!("field --m: {e}")));
        }
        if let Some(name) = self.get("species") {
            let species = Species::parse(name)
                .ok_or_else(|| ConfigError(format!("unknown species '{name}'")))?;
            for (key, raw) in &self.params {
                if let Some(tag) = key.strip_prefix("mass.") {
                    if Species::parse(tag) == Some(species) {
                        return parse_quantity(raw)
                            .map_err(|e| ConfigError(format!("field --{key}: {e}")));
                    }
                }
            }
            return Ok(species.mass());
        }
        Err(ConfigError(
            "missing required field --m or --species".into(),
        ))
    }
}

/// Parse a number with an optional unit suffix into SI.
///
/// Supported suffixes: lengths pm/nm/um/µm/mm/cm/m, times ns/us/ms/s,
/// temperatures nK/uK/mK/K, energies eV/meV/J, frequencies Hz/kHz/MHz/GHz,
/// angles rad/mrad/urad/deg, and inverse lengths /um, /m for line densities.
pub fn parse_quantity(raw: &str) -> Result<f64, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err("empty value".into());
    }
    // longest numeric prefix wins, so "6.6e-12eV" splits before "eV"
    let mut split = 0;
    for end in (1..=raw.len()).rev() {
        if raw.is_char_boundary(end) && raw[..end].parse::<f64>().is_ok() {
            split = end;
            break;
        }
    }
    if split == 0 {
        return Err(format!("'{raw}' does not start with a number"));
    }
    let value: f64 = raw[..split].parse().unwrap();
    let suffix = raw[split..].trim();
    let scale = match suffix {
        "" => 1.0,
        "pm" => 1e-12,
        "nm" => 1e-9,
        "um" | "µm" => 1e-6,
        "mm" => 1e-3,
        "cm" => 1e-2,
        "m" => 1.0,
        "ns" => 1e-9,
        "us" | "µs" => 1e-6,
        "ms" => 1e-3,
        "s" => 1.0,
        "nK" => 1e-9,
        "uK" | "µK" => 1e-6,
        "mK" => 1e-3,
        "K" => 1.0,
        "eV" => EV,
        "meV" => 1e-3 * EV,
        "J" => 1.0,
        "Hz" => 1.0,
        "kHz" => 1e3,
        "MHz" => 1e6,
        "GHz" => 1e9,
        "rad" => 1.0,
        "mrad" => 1e-3,
        "urad" | "µrad" => 1e-6,
        "deg" => std::f64::consts::PI / 180.0,
        "/um" | "/µm" => 1e6,
        "/mm" => 1e3,
        "/m" => 1.0,
        other => return Err(format!("unknown unit suffix '{other}' in '{raw}'")),
    };
    Ok(value * scale)
}

/// Parse a "start:end:step" grid (shared unit suffix on any of the parts,
/// e.g. "1:9:1ms"); inclusive of the end point up to rounding.
pub fn parse_grid(raw: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{raw}' must look like start:end:step"));
    }
    // a suffix on the last field applies to all three bare numbers
    let step_raw = parts[2];
    let mut digits_end = 0;
    for end in (1..=step_raw.len()).rev() {
        if step_raw.is_char_boundary(end) && step_raw[..end].parse::<f64>().is_ok() {
            digits_end = end;
            break;
        }
    }
    if digits_end == 0 {
        return Err(format!(
            "grid step '{step_raw}' does not start with a number"
        ));
    }
    let shared_suffix = &step_raw[digits_end..];
    let parse_part = |p: &str| -> Result<f64, String> {
        if p.parse::<f64>().is_ok() && !shared_suffix.is_empty() {
            parse_quantity(&format!("{p}{shared_suffix}"))
        } else {
            parse_quantity(p)
        }
    };
    let start = parse_part(parts[0])?;
    let end = parse_part(parts[1])?;
    let step = parse_quantity(step_raw)?;
    if !(step > 0.0) || end < start {
        return Err(format!(
            "grid '{raw}' must have positive step and end >= start"
        ));
    }
    let n = ((end - start) / step + 1.5).floor() as usize;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}
