//! Synchronous threshold dynamics.
//!
//! An inactive node `i` becomes active in the next round when the number of
//! active nodes it reads strictly exceeds `phi_i * z_i`, where `z_i` is the
//! number of nodes it reads (in-degree on directed graphs). Active nodes stay
//! active. Isolated nodes therefore only become active when seeded.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ThresholdDistribution {
    /// Every node gets `phi_star`.
    Delta { phi_star: f64 },
    /// Independent draws on `(lo, hi]`.
    Uniform { lo: f64, hi: f64 },
}

impl ThresholdDistribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThresholdDistribution::Delta { phi_star } if !in_unit(phi_star) => Err(
                Error::validation(format!("phi* = {phi_star} outside (0, 1]")),
            ),
            ThresholdDistribution::Uniform { lo, hi }
                if !(lo >= 0.0 && lo <= hi && hi <= 1.0 && hi > 0.0) =>
            {
                Err(Error::validation(format!(
                    "uniform threshold bounds ({lo}, {hi}] not within (0, 1]"
                )))
            }
            _ => Ok(()),
        }
    }
}

fn in_unit(phi: f64) -> bool {
    phi > 0.0 && phi <= 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdAssignment {
    phi: Vec<f64>,
    distribution: ThresholdDistribution,
}

impl ThresholdAssignment {
    pub fn new(phi: Vec<f64>, distribution: ThresholdDistribution) -> Result<Self> {
        if let Some(i) = phi.iter().position(|&p| !in_unit(p)) {
            return Err(Error::validation(format!(
                "threshold of node {i} ({}) outside (0, 1]",
                phi[i]
            )));
        }
        Ok(Self { phi, distribution })
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn distribution(&self) -> ThresholdDistribution {
        self.distribution
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

pub fn assign_thresholds<R: Rng + ?Sized>(
    n: usize,
    distribution: ThresholdDistribution,
    rng: &mut R,
) -> Result<ThresholdAssignment> {
    distribution.validate()?;
    let phi = match distribution {
        ThresholdDistribution::Delta { phi_star } => vec![phi_star; n],
        ThresholdDistribution::Uniform { lo, hi } => (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                let x = hi - (hi - lo) * u;
                // lo == 0 with u -> 1 could round to zero
                if x > 0.0 { x } else { hi }
            })
            .collect(),
    };
    ThresholdAssignment::new(phi, distribution)
}

/// Number of active neighbors a node needs before it activates, `ceil(phi z)`.
pub fn stability_kappa(phi: f64, z: usize) -> usize {
    (phi * z as f64).ceil() as usize
}

/// Whether one active neighbor is enough: `1 > phi z`. Never true for
/// isolated nodes.
pub fn is_vulnerable(phi: f64, z: usize) -> bool {
    z > 0 && 1.0 > phi * z as f64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeOutcome {
    pub seed_set: Vec<NodeId>,
    /// Active nodes at termination, seeds included.
    pub final_size: usize,
    /// Rounds in which at least one node activated.
    pub steps: usize,
    /// Active count after each round, starting with the seed count.
    pub trajectory: Option<Vec<usize>>,
    /// Round in which each node became active (0 for seeds).
    #[serde(skip)]
    pub activation_rounds: Option<Vec<Option<usize>>>,
}

/// Precomputed activation requirements for one graph and threshold vector.
/// Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct CascadeKernel<'g> {
    graph: &'g Graph,
    /// Smallest active-neighbor count that strictly exceeds `phi z`.
    need: Vec<u32>,
}

impl<'g> CascadeKernel<'g> {
    pub fn new(graph: &'g Graph, thresholds: &ThresholdAssignment) -> Result<Self> {
        let n = graph.node_count();
        if thresholds.len() != n {
            return Err(Error::validation(format!(
                "{} thresholds for a graph with {n} nodes",
                thresholds.len()
            )));
        }
        let need = (0..n)
            .map(|i| {
                let bar = thresholds.phi[i] * graph.in_degree_of(i) as f64;
                // count > bar  <=>  count >= floor(bar) + 1 for integer counts
                bar.floor() as u32 + 1
            })
            .collect();
        Ok(Self { graph, need })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn run(&self, seeds: &[NodeId], record: bool) -> Result<CascadeOutcome> {
        let n = self.graph.node_count();
        validate_seeds(seeds, n)?;

        let mut active = vec![false; n];
        let mut hits = vec![0u32; n];
        let mut rounds = record.then(|| vec![None; n]);
        let mut frontier: Vec<NodeId> = seeds.to_vec();
        for &s in seeds {
            active[s] = true;
            if let Some(r) = rounds.as_mut() {
                r[s] = Some(0);
            }
        }
        let mut trajectory = record.then(|| vec![seeds.len()]);
        let mut size = seeds.len();
        let mut steps = 0;
        let mut next = Vec::new();
        while !frontier.is_empty() {
            // Nodes that read a newly active node gain one hit each. Marking
            // `next` active only after the whole frontier is processed keeps
            // the update synchronous.
            for &u in &frontier {
                for &v in self.graph.neighbors(u) {
                    if active[v] {
                        continue;
                    }
                    hits[v] += 1;
                    if hits[v] == self.need[v] {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            steps += 1;
            for &v in &next {
                active[v] = true;
                if let Some(r) = rounds.as_mut() {
                    r[v] = Some(steps);
                }
            }
            size += next.len();
            if let Some(t) = trajectory.as_mut() {
                t.push(size);
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
        }
        Ok(CascadeOutcome {
            seed_set: seeds.to_vec(),
            final_size: size,
            steps,
            trajectory,
            activation_rounds: rounds,
        })
    }
}

fn validate_seeds(seeds: &[NodeId], n: usize) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::validation("empty seed set"));
    }
    let mut seen = vec![false; n];
    for &s in seeds {
        if s >= n {
            return Err(Error::validation(format!(
                "seed {s} out of range for {n} nodes"
            )));
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::validation(format!("seed {s} listed twice")));
        }
    }
    Ok(())
}

/// Runs the dynamics from `seeds` to their fixed point. With
/// `record_trajectory` the outcome also carries per-round counts and
/// per-node activation rounds.
pub fn run_cascade(
    g: &Graph,
    thresholds: &ThresholdAssignment,
    seeds: &[NodeId],
    record_trajectory: bool,
) -> Result<CascadeOutcome> {
    CascadeKernel::new(g, thresholds)?.run(seeds, record_trajectory)
}

/// Largest graph [`brute_force_fixpoint`] accepts.
pub const BRUTE_FORCE_MAX_NODES: usize = 20;

/// Reference implementation: re-evaluates the update rule on every node in
/// every round with floating-point comparisons. Always records.
pub fn brute_force_fixpoint(
    g: &Graph,
    thresholds: &ThresholdAssignment,
    seeds: &[NodeId],
) -> Result<CascadeOutcome> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::validation(format!(
            "brute-force oracle limited to {BRUTE_FORCE_MAX_NODES} nodes (got {n})"
        )));
    }
    if thresholds.len() != n {
        return Err(Error::validation("threshold length mismatch"));
    }
    validate_seeds(seeds, n)?;
    let mut state = vec![0u32; n];
    let mut rounds = vec![None; n];
    for &s in seeds {
        state[s] = 1;
        rounds[s] = Some(0);
    }
    let mut trajectory = vec![seeds.len()];
    let mut steps = 0;
    loop {
        let next: Vec<u32> = (0..n)
            .map(|i| {
                let sum: u32 = g.in_neighbors(i).iter().map(|&j| state[j]).sum();
                let z = g.in_neighbors(i).len() as f64;
                u32::from(state[i] == 1 || sum as f64 > thresholds.phi[i] * z)
            })
            .collect();
        if next == state {
            break;
        }
        steps += 1;
        for i in 0..n {
            if next[i] == 1 && state[i] == 0 {
                rounds[i] = Some(steps);
            }
        }
        state = next;
        trajectory.push(state.iter().filter(|&&s| s == 1).count());
    }
    Ok(CascadeOutcome {
        seed_set: seeds.to_vec(),
        final_size: *trajectory.last().unwrap(),
        steps,
        trajectory: Some(trajectory),
        activation_rounds: Some(rounds),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeedStrategy {
    /// One node chosen uniformly.
    UniformRandom,
    /// One node chosen uniformly from the `ceil(p n)` highest-degree nodes,
    /// ties broken by lower index.
    TopDegreeFraction { p: f64 },
    /// A fixed seed set.
    Explicit { nodes: Vec<NodeId> },
}

impl SeedStrategy {
    pub fn validate(&self) -> Result<()> {
        match self {
            SeedStrategy::TopDegreeFraction { p } if !in_unit(*p) => Err(Error::validation(
                format!("top-degree fraction {p} outside (0, 1]"),
            )),
            SeedStrategy::Explicit { nodes } if nodes.is_empty() => {
                Err(Error::validation("explicit seed list is empty"))
            }
            _ => Ok(()),
        }
    }

    /// Resolves the strategy against a graph once so repeated draws are cheap.
    pub fn sampler(&self, g: &Graph) -> Result<SeedSampler> {
        self.validate()?;
        let n = g.node_count();
        if n == 0 {
            return Err(Error::validation("cannot select seeds on an empty graph"));
        }
        Ok(match self {
            SeedStrategy::UniformRandom => SeedSampler::Uniform(n),
            SeedStrategy::TopDegreeFraction { p } => {
                let k = ((p * n as f64).ceil() as usize).clamp(1, n);
                let mut order: Vec<NodeId> = (0..n).collect();
                order.sort_by_key(|&i| (std::cmp::Reverse(g.degree_of(i)), i));
                order.truncate(k);
                SeedSampler::Pool(order)
            }
            SeedStrategy::Explicit { nodes } => {
                validate_seeds(nodes, n)?;
                SeedSampler::Fixed(nodes.clone())
            }
        })
    }
}

#[derive(Debug, Clone)]
pub enum SeedSampler {
    Uniform(usize),
    Pool(Vec<NodeId>),
    Fixed(Vec<NodeId>),
}

impl SeedSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<NodeId> {
        match self {
            SeedSampler::Uniform(n) => vec![rng.random_range(0..*n)],
            SeedSampler::Pool(pool) => vec![pool[rng.random_range(0..pool.len())]],
            SeedSampler::Fixed(nodes) => nodes.clone(),
        }
    }
}

pub fn select_seeds<R: Rng + ?Sized>(
    strategy: &SeedStrategy,
    g: &Graph,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    Ok(strategy.sampler(g)?.sample(rng))
}
