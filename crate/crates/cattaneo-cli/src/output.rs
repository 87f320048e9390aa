//! File emission: CSV data files with a JSON provenance sidecar apiece.

use anyhow::{Context, Result};
use cattaneo_core::CattaneoParams;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// 17 significant digits: enough for bit-exact f64 round trips.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
pub struct Provenance<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub params: CattaneoParams,
    pub seed: u64,
    pub threads: usize,
    pub wall_ms: u128,
    pub detail: T,
}

pub fn provenance<T: Serialize>(
    command: &'static str,
    params: CattaneoParams,
    seed: u64,
    wall_ms: u128,
    detail: T,
) -> Provenance<T> {
    Provenance {
        tool: "cattaneo-cli",
        version: env!("CARGO_PKG_VERSION"),
        command,
        params,
        seed,
        threads: rayon::current_num_threads(),
        wall_ms,
        detail,
    }
}

pub fn write_csv(dir: &Path, stem: &str, header: &str, rows: &[String]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(format!("{stem}.csv"));
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?,
    );
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(path)
}

pub fn write_sidecar<T: Serialize>(dir: &Path, stem: &str, sidecar: &T) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let path = dir.join(format!("{stem}.json"));
    let mut text = serde_json::to_string_pretty(sidecar)?;
    text.push('\n');
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
