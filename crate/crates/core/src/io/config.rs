//! Flat TOML experiment configs.
//!
//! ```toml
//! model = "waxman"        # er | waxman | ba | price
//! n = 10000
//! s = 10.0
//! z = 6.0
//! phi_star = 0.18
//! k = 1000
//! realizations = 10
//! rule = "fraction"       # fraction | giant | max
//! b = 0.1
//! seed_strategy = "random" # random | top_degree | explicit
//! master_seed = 42
//! ```

use serde::Deserialize;

use crate::cascade::{SeedStrategy, ThresholdDistribution};
use crate::error::{Error, Result};
use crate::experiments::{ExperimentConfig, GlobalCascadeRule};
use crate::generators::GeneratorSpec;
use crate::graph::NodeId;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: Option<String>,
    n: Option<i64>,
    s: Option<f64>,
    z: Option<f64>,
    q: Option<f64>,
    m: Option<i64>,
    c: Option<f64>,
    directed: Option<bool>,
    threshold: Option<String>,
    phi_star: Option<f64>,
    phi_lo: Option<f64>,
    phi_hi: Option<f64>,
    k: Option<i64>,
    realizations: Option<i64>,
    rule: Option<String>,
    b: Option<f64>,
    gamma: Option<f64>,
    seed_strategy: Option<String>,
    top_fraction: Option<f64>,
    seeds: Option<Vec<i64>>,
    master_seed: Option<u64>,
}

fn required<T>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::config(field, "missing"))
}

fn positive(v: Option<i64>, field: &str) -> Result<usize> {
    match required(v, field)? {
        x if x >= 1 => Ok(x as usize),
        x => Err(Error::config(field, format!("must be >= 1 (got {x})"))),
    }
}

fn unit(v: f64, field: &str) -> Result<f64> {
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(Error::config(field, format!("must lie in (0, 1] (got {v})")))
    }
}

/// Parses and validates a config; errors name the offending key.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let msg = e.message().to_string();
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("unknown field"))
            .map(str::to_string)
            .or_else(|| {
                e.span().map(|span| {
                    // key of the offending `key = value` line
                    let line_start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
                    text[line_start..].split('=').next().unwrap_or("").trim().to_string()
                })
            })
            .unwrap_or_else(|| "<document>".to_string());
        Error::config(field, msg.trim())
    })?;

    let n = positive(raw.n, "n")?;
    let model = required(raw.model.as_deref(), "model")?;
    let generator = match model {
        "er" => GeneratorSpec::Er {
            n,
            q: match (raw.q, raw.z) {
                (Some(q), _) => unit(q, "q")?,
                (None, Some(z)) if n >= 2 && z > 0.0 => unit(z / (n - 1) as f64, "z")?,
                (None, Some(z)) => return Err(Error::config("z", format!("invalid mean degree {z}"))),
                (None, None) => return Err(Error::config("q", "missing (give q or z)")),
            },
        },
        "waxman" => {
            let s = required(raw.s, "s")?;
            if s.is_nan() || s < 0.0 {
                return Err(Error::config("s", format!("must be >= 0 (got {s})")));
            }
            let z = required(raw.z, "z")?;
            if z.is_nan() || z <= 0.0 {
                return Err(Error::config("z", format!("must be > 0 (got {z})")));
            }
            GeneratorSpec::Waxman { n, s, target_z: z }
        }
        "ba" => {
            let m = positive(raw.m, "m")?;
            if m >= n {
                return Err(Error::config("m", format!("must be < n = {n} (got {m})")));
            }
            GeneratorSpec::Ba { n, m }
        }
        "price" => {
            let c = required(raw.c, "c")?;
            if c.is_nan() || c <= 0.0 {
                return Err(Error::config("c", format!("must be > 0 (got {c})")));
            }
            GeneratorSpec::Price { n, c, directed: raw.directed.unwrap_or(false) }
        }
        other => return Err(Error::config("model", format!("unknown model `{other}`"))),
    };

    let threshold_distribution = match raw.threshold.as_deref().unwrap_or("delta") {
        "delta" => ThresholdDistribution::Delta {
            phi_star: unit(raw.phi_star.unwrap_or(0.18), "phi_star")?,
        },
        "uniform" => {
            let lo = required(raw.phi_lo, "phi_lo")?;
            let hi = unit(required(raw.phi_hi, "phi_hi")?, "phi_hi")?;
            if !(0.0..=hi).contains(&lo) {
                return Err(Error::config("phi_lo", format!("must lie in [0, phi_hi] (got {lo})")));
            }
            ThresholdDistribution::Uniform { lo, hi }
        }
        other => return Err(Error::config("threshold", format!("unknown distribution `{other}`"))),
    };

    let rule = match raw.rule.as_deref().unwrap_or("fraction") {
        "fraction" => GlobalCascadeRule::FractionOfNetwork { b: unit(raw.b.unwrap_or(0.1), "b")? },
        "giant" => GlobalCascadeRule::FractionOfGiant { gamma: unit(raw.gamma.unwrap_or(0.9), "gamma")? },
        "max" => GlobalCascadeRule::EmpiricalMax,
        other => return Err(Error::config("rule", format!("unknown rule `{other}`"))),
    };

    let seed_strategy = match raw.seed_strategy.as_deref().unwrap_or("random") {
        "random" => SeedStrategy::UniformRandom,
        "top_degree" => SeedStrategy::TopDegreeFraction {
            p: unit(raw.top_fraction.unwrap_or(0.01), "top_fraction")?,
        },
        "explicit" => {
            let seeds = required(raw.seeds, "seeds")?;
            if seeds.is_empty() {
                return Err(Error::config("seeds", "empty"));
            }
            let nodes = seeds
                .into_iter()
                .map(|s| {
                    usize::try_from(s)
                        .ok()
                        .filter(|&s| s < n)
                        .ok_or_else(|| Error::config("seeds", format!("node {s} outside [0, {n})")))
                })
                .collect::<Result<Vec<NodeId>>>()?;
            SeedStrategy::Explicit { nodes }
        }
        other => return Err(Error::config("seed_strategy", format!("unknown strategy `{other}`"))),
    };

    let config = ExperimentConfig {
        generator,
        realizations: positive(raw.realizations, "realizations")?,
        shocks_per_realization: positive(raw.k, "k")?,
        threshold_distribution,
        seed_strategy,
        rule,
        master_seed: required(raw.master_seed, "master_seed")?,
    };
    // remaining cross-field checks, e.g. Waxman feasibility
    config.validate()?;
    Ok(config)
}

/// Inverse of [`parse_config`], for writing configs that reproduce a run.
pub fn format_config(config: &ExperimentConfig) -> String {
    let mut lines = Vec::new();
    match &config.generator {
        GeneratorSpec::Er { n, q } => {
            lines.push("model = \"er\"".to_string());
            lines.push(format!("n = {n}"));
            lines.push(format!("q = {q:?}"));
        }
        GeneratorSpec::Waxman { n, s, target_z } => {
            lines.push("model = \"waxman\"".to_string());
            lines.push(format!("n = {n}"));
            lines.push(format!("s = {s:?}"));
            lines.push(format!("z = {target_z:?}"));
        }
        GeneratorSpec::Ba { n, m } => {
            lines.push("model = \"ba\"".to_string());
            lines.push(format!("n = {n}"));
            lines.push(format!("m = {m}"));
        }
        GeneratorSpec::Price { n, c, directed } => {
            lines.push("model = \"price\"".to_string());
            lines.push(format!("n = {n}"));
            lines.push(format!("c = {c:?}"));
            lines.push(format!("directed = {directed}"));
        }
    }
    match config.threshold_distribution {
        ThresholdDistribution::Delta { phi_star } => lines.push(format!("phi_star = {phi_star:?}")),
        ThresholdDistribution::Uniform { lo, hi } => {
            lines.push("threshold = \"uniform\"".to_string());
            lines.push(format!("phi_lo = {lo:?}"));
            lines.push(format!("phi_hi = {hi:?}"));
        }
    }
    lines.push(format!("k = {}", config.shocks_per_realization));
    lines.push(format!("realizations = {}", config.realizations));
    match config.rule {
        GlobalCascadeRule::FractionOfNetwork { b } => {
            lines.push("rule = \"fraction\"".to_string());
            lines.push(format!("b = {b:?}"));
        }
        GlobalCascadeRule::FractionOfGiant { gamma } => {
            lines.push("rule = \"giant\"".to_string());
            lines.push(format!("gamma = {gamma:?}"));
        }
        GlobalCascadeRule::EmpiricalMax => lines.push("rule = \"max\"".to_string()),
    }
    match &config.seed_strategy {
        SeedStrategy::UniformRandom => lines.push("seed_strategy = \"random\"".to_string()),
        SeedStrategy::TopDegreeFraction { p } => {
            lines.push("seed_strategy = \"top_degree\"".to_string());
            lines.push(format!("top_fraction = {p:?}"));
        }
        SeedStrategy::Explicit { nodes } => {
            lines.push("seed_strategy = \"explicit\"".to_string());
            lines.push(format!("seeds = {nodes:?}"));
        }
    }
    lines.push(format!("master_seed = {}", config.master_seed));
    lines.join("\n") + "\n"
}
