//! Run configuration: a single TOML or JSON file, with every field
//! overridable from the command line (flags win).

use anyhow::{bail, Context, Result};
use cattaneo_core::CattaneoParams;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: CattaneoParams,
    pub t_grid: Vec<f64>,
    pub xi_grid: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    pub output_dir: PathBuf,
    /// Per-quantity threshold overrides applied to validation rows.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: CattaneoParams { alpha: 0.7, beta: 0.4, lambda: 1.0, k: 0.5 },
            t_grid: vec![0.5, 1.0],
            xi_grid: vec![0.0, 0.25, 0.5, 1.0, 2.0],
            n_samples: 10_000,
            seed: 42,
            output_dir: PathBuf::from("."),
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    /// Grid invariants shared by every subcommand: nonempty, finite, sorted,
    /// and positive where the value is an evaluation time.
    pub fn check_grids(&self) -> Result<()> {
        check_grid("t_grid", &self.t_grid, true)?;
        check_grid("xi_grid", &self.xi_grid, false)
    }
}

fn check_grid(name: &str, grid: &[f64], positive: bool) -> Result<()> {
    if grid.is_empty() {
        bail!("{name} must not be empty");
    }
    for &v in grid {
        if !v.is_finite() {
            bail!("{name} contains a non-finite value");
        }
        if positive && v <= 0.0 {
            bail!("{name} values must be positive, got {v}");
        }
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        bail!("{name} must be sorted ascending");
    }
    Ok(())
}

pub fn load(path: Option<&Path>) -> Result<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let cfg = match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text)
            .with_context(|| format!("parsing {} as TOML", path.display()))?,
        Some("json") => serde_json::from_str(&text)
            .with_context(|| format!("parsing {} as JSON", path.display()))?,
        other => bail!("config must be a .toml or .json file, got extension {other:?}"),
    };
    Ok(cfg)
}
