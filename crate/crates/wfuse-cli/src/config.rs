//! Flat key=value configuration files and the flag/file merge rules.
//!
//! Flags always override file values. Unknown keys are errors. Lines that
//! are empty or start with `#` are skipped.

use std::fs;
use std::path::{Path, PathBuf};

use wfuse_core::cost::{FusionOrder, SizeInterval};

use crate::error::CliError;

/// Values a config file may provide. Everything is optional; commands fill
/// in their own defaults after merging.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub scheme: Option<String>,
    pub runs: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub bell_bin: Option<bool>,
    pub sets: Option<String>,
    pub targets: Option<Vec<u64>>,
    pub target_set: Option<usize>,
    pub mode: Option<String>,
    pub fusion_order: Option<FusionOrder>,
    pub max_size: Option<u64>,
}

pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    parse(&text).map_err(|msg| CliError::Usage(format!("config {}: {msg}", path.display())))
}

fn parse(text: &str) -> Result<FileConfig, String> {
    let mut cfg = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", idx + 1))?;
        let key = key.trim();
        let value = value.trim();
        let bad = |e: String| format!("line {}: {key}: {e}", idx + 1);
        match key {
            "scheme" => cfg.scheme = Some(value.to_string()),
            "runs" => cfg.runs = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "seed" => cfg.seed = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "bell_bin" => {
                cfg.bell_bin = Some(match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => return Err(bad(format!("expected true/false, got '{other}'"))),
                })
            }
            "sets" => cfg.sets = Some(value.to_string()),
            "targets" => {
                let targets: Result<Vec<u64>, _> =
                    value.split(',').map(|v| v.trim().parse::<u64>()).collect();
                cfg.targets = Some(targets.map_err(|e| bad(format!("{e}")))?);
            }
            "target_set" => cfg.target_set = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "mode" => cfg.mode = Some(value.to_string()),
            "fusion_order" => {
                cfg.fusion_order = Some(match value {
                    "lowest" => FusionOrder::LowestSetFirst,
                    "highest" => FusionOrder::HighestSetFirst,
                    other => return Err(bad(format!("expected lowest/highest, got '{other}'"))),
                })
            }
            "max_size" => cfg.max_size = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            other => return Err(format!("line {}: unknown key '{other}'", idx + 1)),
        }
    }
    Ok(cfg)
}

/// Parses a boundary list like `3,4-6,7-15,16-42,43-123,124+` into
/// half-open size intervals. `a-b` is inclusive of `b`; a trailing `+`
/// makes the final interval unbounded.
pub fn parse_sets(spec: &str) -> Result<Vec<SizeInterval>, CliError> {
    let mut sets = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let usage = |msg: String| CliError::Usage(format!("sets '{part}': {msg}"));
        if let Some(lo) = part.strip_suffix('+') {
            let lo: u64 = lo.parse().map_err(|e| usage(format!("{e}")))?;
            sets.push(SizeInterval::new(lo, None));
        } else if let Some((lo, hi)) = part.split_once('-') {
            let lo: u64 = lo.parse().map_err(|e| usage(format!("{e}")))?;
            let hi: u64 = hi.parse().map_err(|e| usage(format!("{e}")))?;
            if hi < lo {
                return Err(usage("upper bound below lower bound".into()));
            }
            sets.push(SizeInterval::new(lo, Some(hi + 1)));
        } else {
            let size: u64 = part.parse().map_err(|e| usage(format!("{e}")))?;
            sets.push(SizeInterval::new(size, Some(size + 1)));
        }
    }
    Ok(sets)
}
