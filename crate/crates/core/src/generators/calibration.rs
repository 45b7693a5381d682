//! Waxman edge-density calibration.
//!
//! With pair probability `q * exp(-s d)` and both endpoints uniform on the
//! unit square, the expected degree is `(n - 1) q G(s)`, where `G` is the
//! Laplace transform of the square line-picking density.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Absolute tolerance for the Laplace transform quadrature.
pub const QUADRATURE_TOL: f64 = 1e-9;

/// Density of the distance between two independent uniform points in the
/// unit square.
pub fn line_picking_pdf(t: f64) -> Result<f64> {
    if !(0.0..=SQRT_2).contains(&t) {
        return Err(Error::validation(format!(
            "distance {t} outside [0, sqrt(2)]"
        )));
    }
    Ok(pdf_unchecked(t))
}

fn pdf_unchecked(t: f64) -> f64 {
    if t <= 1.0 {
        2.0 * t * (t * t - 4.0 * t + PI)
    } else {
        let r = (t * t - 1.0).max(0.0).sqrt();
        let v = 2.0 * t * (4.0 * r - (t * t + 2.0 - PI) - 4.0 * r.atan());
        // cancellation near sqrt(2) can leave a tiny negative residue
        v.max(0.0)
    }
}

/// `G(s) = E[exp(-s D)]` for the unit-square line-picking distance `D`.
pub fn laplace_g(s: f64) -> Result<f64> {
    if s.is_nan() || s < 0.0 {
        return Err(Error::validation(format!("decay s = {s} must be >= 0")));
    }
    let f = |t: f64| pdf_unchecked(t) * (-s * t).exp();
    // The density has a kink at t = 1.
    let half = QUADRATURE_TOL / 2.0;
    Ok(integrate(&f, 0.0, 1.0, half) + integrate(&f, 1.0, SQRT_2, half))
}

/// Attachment probability that gives mean degree `target_z` on a Waxman
/// graph with `n` nodes and decay `s`.
pub fn waxman_q(n: usize, target_z: f64, s: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::validation("waxman calibration needs n >= 2"));
    }
    if target_z.is_nan() || target_z <= 0.0 {
        return Err(Error::validation(format!(
            "target mean degree {target_z} must be > 0"
        )));
    }
    let max_z = (n - 1) as f64 * laplace_g(s)?;
    let q = target_z / max_z;
    if q > 1.0 {
        return Err(Error::Infeasible { n, s, q, max_z });
    }
    Ok(q)
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        // odd Kronrod nodes are the Gauss nodes
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature to absolute tolerance `tol`.
pub(crate) fn integrate(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (est, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return est;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, tol / 2.0, depth - 1) + recurse(f, m, b, tol / 2.0, depth - 1)
    }
    recurse(f, a, b, tol, 40)
}
