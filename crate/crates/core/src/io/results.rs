//! Result files: `sizes.csv`, `summary.json`, `sweep.csv`,
//! `betweenness.csv` and the run manifest.
//!
//! CSVs use a fixed column order, `\n` line endings and Rust's shortest
//! round-trip float formatting, so equal inputs give byte-equal files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{BetweennessPoint, ExperimentSummary};

pub const SIZES_HEADER: &str = "realization,shock,seed_node,size,steps,is_global";
pub const SWEEP_HEADER: &str = "param_value,frequency_mean,ci_lo,ci_hi,mean_size_all,mean_size_global";
pub const BETWEENNESS_HEADER: &str = "s,mean_degree,ci_lo,ci_hi,used,excluded";

/// Multi-node seed sets are joined with `;`.
pub fn format_sizes_csv(summary: &ExperimentSummary) -> String {
    let mut out = String::from(SIZES_HEADER);
    out.push('\n');
    for rec in &summary.per_realization {
        for (j, shock) in rec.shocks.iter().enumerate() {
            let seeds: Vec<String> = shock.seeds.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                rec.realization,
                j,
                seeds.join(";"),
                shock.size,
                shock.steps,
                u8::from(shock.is_global)
            )
            .unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct SizeRow {
    pub realization: usize,
    pub shock: usize,
    pub seed_node: String,
    pub size: usize,
    pub steps: usize,
    pub is_global: u8,
}

pub fn read_sizes_csv(path: &Path) -> Result<Vec<SizeRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if headers != SIZES_HEADER {
        return Err(Error::Parse {
            location: path.display().to_string(),
            reason: format!("expected header `{SIZES_HEADER}`"),
        });
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn format_sweep_csv(rows: &[(f64, ExperimentSummary)]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for (value, s) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            value,
            s.frequency_mean,
            s.frequency_ci95.0,
            s.frequency_ci95.1,
            s.mean_size_all,
            opt(s.mean_size_global)
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SweepRow {
    pub param_value: f64,
    pub frequency_mean: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_size_all: f64,
    pub mean_size_global: Option<f64>,
}

pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn format_betweenness_csv(points: &[BetweennessPoint]) -> String {
    let mut out = String::from(BETWEENNESS_HEADER);
    out.push('\n');
    for p in points {
        let (m, lo, hi) = match p.mean_degree {
            Some(ci) => (Some(ci.mean), Some(ci.lo), Some(ci.hi)),
            None => (None, None, None),
        };
        writeln!(out, "{},{},{},{},{},{}", p.s, opt(m), opt(lo), opt(hi), p.used, p.excluded).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct BetweennessRow {
    pub s: f64,
    pub mean_degree: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub used: usize,
    pub excluded: usize,
}

pub fn read_betweenness_csv(path: &Path) -> Result<Vec<BetweennessRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn format_summary_json(summary: &ExperimentSummary) -> Result<String> {
    Ok(serde_json::to_string_pretty(summary)? + "\n")
}

/// Provenance written next to every set of outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub config_echo: serde_json::Value,
    pub master_seed: u64,
    pub started: String,
    pub finished: String,
    pub conventions: BTreeMap<String, String>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config_echo: serde_json::Value, master_seed: u64) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_echo,
            master_seed,
            started: now(),
            finished: String::new(),
            conventions: conventions(),
            outputs: Vec::new(),
        }
    }

    pub fn finish(mut self, outputs: Vec<String>) -> Self {
        self.finished = now();
        self.outputs = outputs;
        self
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Modelling conventions that affect how outputs should be read.
pub fn conventions() -> BTreeMap<String, String> {
    [
        ("activation_rule", "activate when active in-neighbors > phi * in-degree (strict)"),
        ("vulnerability", "vulnerable iff degree > 0 and phi * degree < 1"),
        ("directed_degree", "degree = out-degree; cascades read in-neighbors and normalize by in-degree"),
        ("directed_price_orientation", "edges point from the arriving node to the existing node"),
        ("components", "weak connectivity for directed graphs"),
        ("betweenness", "exact, normalized by (n-1)(n-2)/2 on the undirected skeleton"),
        ("zero_cascade", "final size exactly 1"),
        ("frequency_denominator", "all shocks, including seeds outside the giant component"),
        ("ci95", "normal approximation over per-realization frequencies, clamped to [0, 1]"),
        ("rng", "ChaCha8 streams keyed by SplitMix64 of (master_seed, realization, role, shock)"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}
