//! Random-graph families.

mod calibration;
mod models;

pub use calibration::{laplace_g, line_picking_pdf, waxman_q, QUADRATURE_TOL};
pub use models::{gen_ba, gen_er, gen_price, gen_waxman, truncated_poisson};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Er { n: usize, q: f64 },
    Waxman { n: usize, s: f64, target_z: f64 },
    Ba { n: usize, m: usize },
    Price { n: usize, c: f64, directed: bool },
}

impl GeneratorSpec {
    pub fn node_count(&self) -> usize {
        match *self {
            GeneratorSpec::Er { n, .. }
            | GeneratorSpec::Waxman { n, .. }
            | GeneratorSpec::Ba { n, .. }
            | GeneratorSpec::Price { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if n < 1 {
            return Err(Error::validation("generator needs n >= 1"));
        }
        match *self {
            GeneratorSpec::Er { q, .. } if !(q > 0.0 && q <= 1.0) => Err(Error::validation(
                format!("edge probability q = {q} outside (0, 1]"),
            )),
            GeneratorSpec::Waxman { s, target_z, .. } => {
                if s.is_nan() || s < 0.0 {
                    return Err(Error::validation(format!("decay s = {s} must be >= 0")));
                }
                // checks target_z > 0 and feasibility of q
                waxman_q(n, target_z, s).map(|_| ())
            }
            GeneratorSpec::Ba { m, .. } if m < 1 || m >= n => Err(Error::validation(format!(
                "BA needs 1 <= m < n (got m = {m}, n = {n})"
            ))),
            GeneratorSpec::Price { c, .. } if c.is_nan() || c <= 0.0 => Err(Error::validation(
                format!("mean links c = {c} must be > 0"),
            )),
            _ => Ok(()),
        }
    }

    /// Samples one realization from `stream`.
    pub fn generate(&self, stream: RngStream) -> Result<Graph> {
        self.validate()?;
        let mut rng = stream.rng();
        match *self {
            GeneratorSpec::Er { n, q } => gen_er(n, q, &mut rng),
            GeneratorSpec::Waxman { n, s, target_z } => {
                let q = waxman_q(n, target_z, s)?;
                gen_waxman(n, s, q, &mut rng)
            }
            GeneratorSpec::Ba { n, m } => gen_ba(n, m, &mut rng),
            GeneratorSpec::Price { n, c, directed } => gen_price(n, c, directed, &mut rng),
        }
    }
}
