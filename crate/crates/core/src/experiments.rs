//! Monte Carlo harness: repeated shocks on repeated realizations, global
//! cascade classification, frequency statistics and parameter sweeps.
//!
//! Every work unit draws from an RNG stream addressed by its indices:
//!
//! ```text
//! root(master_seed) / realization r / 0  -> graph
//!                                   / 1  -> thresholds
//!                                   / 2 / j -> seed of shock j
//! ```
//!
//! so summaries are identical for any thread count or scheduling.

use serde::{Deserialize, Serialize};

use crate::cascade::{assign_thresholds, CascadeKernel, SeedStrategy, ThresholdAssignment, ThresholdDistribution};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::{self, Graph, NodeId};
use crate::par;
use crate::rng::{mix64, RngStream};

const STREAM_GRAPH: u64 = 0;
const STREAM_THRESHOLDS: u64 = 1;
const STREAM_SHOCKS: u64 = 2;

/// Stream that generates the graph of realization `r`.
pub fn graph_stream(master_seed: u64, r: usize) -> RngStream {
    RngStream::root(master_seed).child(r as u64).child(STREAM_GRAPH)
}

/// z-score for two-sided 95% normal intervals.
pub const Z95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GlobalCascadeRule {
    /// Size strictly greater than `b * n`.
    FractionOfNetwork { b: f64 },
    /// Size at least `gamma` times the giant component.
    FractionOfGiant { gamma: f64 },
    /// Size equal to the largest cascade in the same batch.
    EmpiricalMax,
}

impl Default for GlobalCascadeRule {
    fn default() -> Self {
        GlobalCascadeRule::FractionOfNetwork { b: 0.1 }
    }
}

impl GlobalCascadeRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GlobalCascadeRule::FractionOfNetwork { b: f }
            | GlobalCascadeRule::FractionOfGiant { gamma: f }
                if !(f > 0.0 && f <= 1.0) =>
            {
                Err(Error::validation(format!("global-cascade fraction {f} outside (0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

pub fn classify_global(
    size: usize,
    n: usize,
    giant: usize,
    rule: GlobalCascadeRule,
    batch_max: Option<usize>,
) -> Result<bool> {
    if size > n {
        return Err(Error::validation(format!("cascade size {size} exceeds n = {n}")));
    }
    rule.validate()?;
    Ok(match rule {
        GlobalCascadeRule::FractionOfNetwork { b } => size as f64 > b * n as f64,
        GlobalCascadeRule::FractionOfGiant { gamma } => size as f64 >= gamma * giant as f64,
        GlobalCascadeRule::EmpiricalMax => {
            let max = batch_max.ok_or_else(|| {
                Error::validation("empirical-max rule needs the batch maximum")
            })?;
            size == max
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub generator: GeneratorSpec,
    pub realizations: usize,
    pub shocks_per_realization: usize,
    pub threshold_distribution: ThresholdDistribution,
    pub seed_strategy: SeedStrategy,
    pub rule: GlobalCascadeRule,
    pub master_seed: u64,
}

impl ExperimentConfig {
    /// Single random seeds, delta thresholds and the 10% rule.
    pub fn new(generator: GeneratorSpec, phi_star: f64, master_seed: u64) -> Self {
        ExperimentConfig {
            generator,
            realizations: 10,
            shocks_per_realization: 1000,
            threshold_distribution: ThresholdDistribution::Delta { phi_star },
            seed_strategy: SeedStrategy::UniformRandom,
            rule: GlobalCascadeRule::default(),
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::validation("realizations must be >= 1"));
        }
        if self.shocks_per_realization == 0 {
            return Err(Error::validation("shocks per realization must be >= 1"));
        }
        self.generator.validate()?;
        self.threshold_distribution.validate()?;
        self.seed_strategy.validate()?;
        self.rule.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShockRecord {
    pub seeds: Vec<NodeId>,
    pub size: usize,
    pub steps: usize,
    pub is_global: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizationRecord {
    pub realization: usize,
    pub cascade_sizes: Vec<usize>,
    pub giant_size: usize,
    pub mean_degree: f64,
    pub global_count: usize,
    /// Cascades that never left their seed (final size 1).
    pub zero_count: usize,
    #[serde(skip)]
    pub shocks: Vec<ShockRecord>,
}

impl RealizationRecord {
    pub fn frequency(&self) -> f64 {
        self.global_count as f64 / self.cascade_sizes.len() as f64
    }
}

/// Runs `k` cascades on one realization, each from freshly selected seeds
/// drawn from `shock_streams.child(j)`.
pub fn run_batch(
    g: &Graph,
    thresholds: &ThresholdAssignment,
    k: usize,
    seed_strategy: &SeedStrategy,
    rule: GlobalCascadeRule,
    shock_streams: RngStream,
) -> Result<RealizationRecord> {
    if k == 0 {
        return Err(Error::validation("batch needs k >= 1 shocks"));
    }
    rule.validate()?;
    let kernel = CascadeKernel::new(g, thresholds)?;
    let sampler = seed_strategy.sampler(g)?;
    let outcomes = par::try_map_indexed(k, |j| {
        let seeds = sampler.sample(&mut shock_streams.child(j as u64).rng());
        kernel.run(&seeds, false)
    })?;
    let n = g.node_count();
    let giant = graph::components(g).giant_size;
    let batch_max = outcomes.iter().map(|o| o.final_size).max();
    let mut shocks = Vec::with_capacity(k);
    for o in outcomes {
        let is_global = classify_global(o.final_size, n, giant, rule, batch_max)?;
        shocks.push(ShockRecord {
            seeds: o.seed_set,
            size: o.final_size,
            steps: o.steps,
            is_global,
        });
    }
    Ok(RealizationRecord {
        realization: 0,
        cascade_sizes: shocks.iter().map(|s| s.size).collect(),
        giant_size: giant,
        mean_degree: g.mean_degree()?,
        global_count: shocks.iter().filter(|s| s.is_global).count(),
        zero_count: shocks.iter().filter(|s| s.size == 1).count(),
        shocks,
    })
}

/// Mean with a two-sided 95% normal interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiEstimate {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
    /// Fewer than two samples; `lo == hi == mean`.
    pub degenerate: bool,
}

impl CiEstimate {
    pub fn overlaps(&self, other: &CiEstimate) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// `mean +- 1.96 * sd / sqrt(R)` with the sample (R - 1) standard deviation.
pub fn mean_ci(values: &[f64]) -> Result<CiEstimate> {
    if values.is_empty() {
        return Err(Error::validation("confidence interval of no samples"));
    }
    let r = values.len() as f64;
    let mean = values.iter().sum::<f64>() / r;
    if values.len() == 1 {
        return Ok(CiEstimate { mean, lo: mean, hi: mean, degenerate: true });
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let half = Z95 * (var / r).sqrt();
    Ok(CiEstimate { mean, lo: mean - half, hi: mean + half, degenerate: false })
}

/// [`mean_ci`] clamped to [0, 1], for per-realization frequencies.
pub fn frequency_ci(per_realization_freqs: &[f64]) -> Result<CiEstimate> {
    let mut ci = mean_ci(per_realization_freqs)?;
    ci.lo = ci.lo.clamp(0.0, 1.0);
    ci.hi = ci.hi.clamp(0.0, 1.0);
    Ok(ci)
}

/// Empirical CCDF of cascade sizes: for each distinct size `x n`, the
/// fraction of sizes `>= x n`. Sorted by `x`.
pub fn ccdf(sizes: &[usize], n: usize) -> Result<Vec<(f64, f64)>> {
    if sizes.is_empty() {
        return Err(Error::validation("CCDF of no cascades"));
    }
    if let Some(bad) = sizes.iter().find(|&&s| s < 1 || s > n) {
        return Err(Error::validation(format!("cascade size {bad} outside [1, {n}]")));
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let total = sorted.len() as f64;
    let mut points = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let s = sorted[i];
        points.push((s as f64 / n as f64, (sorted.len() - i) as f64 / total));
        while i < sorted.len() && sorted[i] == s {
            i += 1;
        }
    }
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub n: usize,
    pub per_realization: Vec<RealizationRecord>,
    pub pooled_sizes: Vec<usize>,
    pub frequency_mean: f64,
    pub frequency_ci95: (f64, f64),
    pub ci_degenerate: bool,
    /// Mean size over every cascade.
    pub mean_size_all: f64,
    /// Mean size over global cascades only; `None` when there were none.
    pub mean_size_global: Option<f64>,
    pub zero_fraction: f64,
    pub ccdf_points: Vec<(f64, f64)>,
}

impl ExperimentSummary {
    pub fn total_shocks(&self) -> usize {
        self.pooled_sizes.len()
    }

    pub fn frequency(&self) -> CiEstimate {
        CiEstimate {
            mean: self.frequency_mean,
            lo: self.frequency_ci95.0,
            hi: self.frequency_ci95.1,
            degenerate: self.ci_degenerate,
        }
    }

    /// Fraction of pooled cascades with size strictly inside `(lo n, hi n)`.
    pub fn fraction_between(&self, lo: f64, hi: f64) -> f64 {
        let n = self.n as f64;
        let hits = self
            .pooled_sizes
            .iter()
            .filter(|&&s| (s as f64) > lo * n && (s as f64) < hi * n)
            .count();
        hits as f64 / self.pooled_sizes.len() as f64
    }
}

fn run_realization(config: &ExperimentConfig, r: usize) -> Result<RealizationRecord> {
    let stream = RngStream::root(config.master_seed).child(r as u64);
    let g = config.generator.generate(graph_stream(config.master_seed, r))?;
    let thresholds = assign_thresholds(
        g.node_count(),
        config.threshold_distribution,
        &mut stream.child(STREAM_THRESHOLDS).rng(),
    )?;
    let mut record = run_batch(
        &g,
        &thresholds,
        config.shocks_per_realization,
        &config.seed_strategy,
        config.rule,
        stream.child(STREAM_SHOCKS),
    )?;
    record.realization = r;
    Ok(record)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    config.validate()?;
    let per_realization = par::try_map_indexed(config.realizations, |r| run_realization(config, r))?;
    summarize(config.clone(), per_realization)
}

fn summarize(config: ExperimentConfig, per_realization: Vec<RealizationRecord>) -> Result<ExperimentSummary> {
    let n = config.generator.node_count();
    let freqs: Vec<f64> = per_realization.iter().map(RealizationRecord::frequency).collect();
    let ci = frequency_ci(&freqs)?;
    let pooled_sizes: Vec<usize> = per_realization
        .iter()
        .flat_map(|r| r.cascade_sizes.iter().copied())
        .collect();
    let total = pooled_sizes.len() as f64;
    let global: Vec<usize> = per_realization
        .iter()
        .flat_map(|r| r.shocks.iter().filter(|s| s.is_global).map(|s| s.size))
        .collect();
    let zeros: usize = per_realization.iter().map(|r| r.zero_count).sum();
    Ok(ExperimentSummary {
        n,
        frequency_mean: ci.mean,
        frequency_ci95: (ci.lo, ci.hi),
        ci_degenerate: ci.degenerate,
        mean_size_all: pooled_sizes.iter().sum::<usize>() as f64 / total,
        mean_size_global: (!global.is_empty())
            .then(|| global.iter().sum::<usize>() as f64 / global.len() as f64),
        zero_fraction: zeros as f64 / total,
        ccdf_points: ccdf(&pooled_sizes, n)?,
        pooled_sizes,
        per_realization,
        config,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    /// Waxman locality decay.
    S,
    /// Target mean degree: Waxman `target_z`, ER `q = z / (n - 1)`, BA
    /// `m = z / 2` (even z only), Price `c = z / 2`.
    Z,
    /// Price mean link count.
    C,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(SweepParam::S),
            "z" => Ok(SweepParam::Z),
            "c" => Ok(SweepParam::C),
            other => Err(Error::validation(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::S => "s",
            SweepParam::Z => "z",
            SweepParam::C => "c",
        }
    }

    /// The generator with this parameter set to `value`.
    pub fn apply(self, base: &GeneratorSpec, value: f64) -> Result<GeneratorSpec> {
        let inapplicable = || {
            Error::validation(format!(
                "parameter `{}` does not apply to {base:?}",
                self.name()
            ))
        };
        let spec = match (self, base.clone()) {
            (SweepParam::S, GeneratorSpec::Waxman { n, target_z, .. }) => {
                GeneratorSpec::Waxman { n, s: value, target_z }
            }
            (SweepParam::Z, GeneratorSpec::Waxman { n, s, .. }) => {
                GeneratorSpec::Waxman { n, s, target_z: value }
            }
            (SweepParam::Z, GeneratorSpec::Er { n, .. }) => {
                if n < 2 || value.is_nan() || value <= 0.0 {
                    return Err(Error::validation(format!("cannot target mean degree {value} with n={n}")));
                }
                GeneratorSpec::Er { n, q: value / (n - 1) as f64 }
            }
            (SweepParam::Z, GeneratorSpec::Ba { n, .. }) => {
                if !(value >= 2.0 && value.fract() == 0.0 && (value as u64).is_multiple_of(2)) {
                    return Err(Error::validation(format!(
                        "BA mean degree is 2m, so z must be a positive even integer (got {value})"
                    )));
                }
                GeneratorSpec::Ba { n, m: (value / 2.0) as usize }
            }
            (SweepParam::Z, GeneratorSpec::Price { n, directed, .. }) => {
                GeneratorSpec::Price { n, c: value / 2.0, directed }
            }
            (SweepParam::C, GeneratorSpec::Price { n, directed, .. }) => {
                GeneratorSpec::Price { n, c: value, directed }
            }
            _ => return Err(inapplicable()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Master seed used for one sweep point: `mix64(master_seed ^ mix64(bits(value)))`.
pub fn sweep_seed(master_seed: u64, value: f64) -> u64 {
    mix64(master_seed ^ mix64(value.to_bits()))
}

/// One experiment per value, all else fixed, in input order.
pub fn sweep(param: SweepParam, values: &[f64], base: &ExperimentConfig) -> Result<Vec<(f64, ExperimentSummary)>> {
    if values.is_empty() {
        return Err(Error::validation("sweep needs at least one value"));
    }
    let configs = values
        .iter()
        .map(|&v| {
            Ok(ExperimentConfig {
                generator: param.apply(&base.generator, v)?,
                master_seed: sweep_seed(base.master_seed, v),
                ..base.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    configs
        .iter()
        .zip(values)
        .map(|(c, &v)| Ok((v, run_experiment(c)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetweennessPoint {
    pub s: f64,
    /// `None` when no realization had a node above the threshold.
    pub mean_degree: Option<CiEstimate>,
    /// Realizations that contributed a value.
    pub used: usize,
    /// Realizations with no node above the threshold.
    pub excluded: usize,
}

/// Mean degree of high-betweenness nodes on Waxman graphs for each `s`.
pub fn betweenness_degree_experiment(
    s_values: &[f64],
    n: usize,
    z: f64,
    realizations: usize,
    tau: f64,
    master_seed: u64,
) -> Result<Vec<BetweennessPoint>> {
    if realizations == 0 {
        return Err(Error::validation("realizations must be >= 1"));
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::validation(format!("threshold {tau} outside [0, 1]")));
    }
    s_values
        .iter()
        .map(|&s| {
            let spec = GeneratorSpec::Waxman { n, s, target_z: z };
            spec.validate()?;
            let root = RngStream::new(master_seed, s.to_bits());
            let values = par::try_map_indexed(realizations, |r| {
                let g = spec.generate(root.child(r as u64))?;
                let b = graph::betweenness(&g);
                Ok::<_, Error>(graph::mean_degree_above(&g, &b.values, tau))
            })?;
            let found: Vec<f64> = values.iter().flatten().copied().collect();
            Ok(BetweennessPoint {
                s,
                mean_degree: if found.is_empty() { None } else { Some(mean_ci(&found)?) },
                used: found.len(),
                excluded: realizations - found.len(),
            })
        })
        .collect()
}
