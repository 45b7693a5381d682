use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Visits unordered pairs `(w, v)` with `w < v` independently with
/// probability `p`, skipping geometrically over rejected pairs.
fn for_each_bernoulli_pair<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
    mut visit: impl FnMut(&mut R, NodeId, NodeId),
) {
    if n < 2 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                visit(rng, w, v);
            }
        }
        return;
    }
    let log_miss = (1.0 - p).ln();
    let (mut v, mut w) = (1usize, -1i64);
    loop {
        // 1 - u lies in (0, 1]
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_miss).floor();
        if skip >= (n * n) as f64 {
            return;
        }
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v >= n {
            return;
        }
        visit(rng, w as usize, v);
    }
}

/// Erdős–Rényi G(n, q).
pub fn gen_er<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::validation(format!("edge probability q = {q} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for_each_bernoulli_pair(n, q, rng, |_, w, v| edges.push((w, v)));
    Ok(Graph::assemble(n, edges, false, None))
}

/// Waxman graph: uniform positions on the unit square, each pair joined
/// with probability `q * exp(-s * distance)`.
pub fn gen_waxman<R: Rng + ?Sized>(n: usize, s: f64, q: f64, rng: &mut R) -> Result<Graph> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::validation(format!("edge probability q = {q} outside (0, 1]")));
    }
    if s.is_nan() || s < 0.0 {
        return Err(Error::validation(format!("decay s = {s} must be >= 0")));
    }
    let positions: Vec<[f64; 2]> = (0..n).map(|_| [rng.random(), rng.random()]).collect();
    let mut edges = Vec::new();
    // Thinning: a pair survives the q-coin with prob q, then the distance coin.
    for_each_bernoulli_pair(n, q, rng, |rng, w, v| {
        if s == 0.0 {
            edges.push((w, v));
            return;
        }
        let [x0, y0] = positions[w];
        let [x1, y1] = positions[v];
        let d = (x0 - x1).hypot(y0 - y1);
        if rng.random::<f64>() < (-s * d).exp() {
            edges.push((w, v));
        }
    });
    Ok(Graph::assemble(n, edges, false, Some(positions)))
}

/// Degree-proportional growth shared by the BA and Price models.
///
/// `initial` isolated nodes seed the process. Each arriving node draws its
/// number of links from `links`, capped at the number of existing nodes, and
/// picks that many distinct targets with probability proportional to their
/// current degree. When every existing node must be chosen the choice is
/// forced.
fn grow<R: Rng + ?Sized>(
    n: usize,
    initial: usize,
    directed: bool,
    rng: &mut R,
    mut links: impl FnMut(&mut R) -> usize,
) -> Graph {
    let mut edges = Vec::new();
    // every edge endpoint once: uniform picks are degree-proportional
    let mut endpoints: Vec<NodeId> = Vec::new();
    let mut targets: Vec<NodeId> = Vec::new();
    for source in initial..n {
        let want = links(rng).min(source);
        targets.clear();
        if want == source {
            targets.extend(0..source);
        } else {
            debug_assert!(!endpoints.is_empty());
            while targets.len() < want {
                let t = endpoints[rng.random_range(0..endpoints.len())];
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        for &t in &targets {
            edges.push((source, t));
            endpoints.push(t);
            endpoints.push(source);
        }
    }
    Graph::assemble(n, edges, directed, None)
}

/// Barabási–Albert graph with `m` links per arriving node, seeded by `m`
/// isolated nodes. Has exactly `(n - m) * m` edges.
pub fn gen_ba<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || m >= n {
        return Err(Error::validation(format!(
            "BA needs 1 <= m < n (got m = {m}, n = {n})"
        )));
    }
    Ok(grow(n, m, false, rng, |_| m))
}

/// Zero-truncated Poisson draw (rejection on zero).
pub fn truncated_poisson<R: Rng + ?Sized>(dist: &Poisson<f64>, rng: &mut R) -> usize {
    loop {
        let k = dist.sample(rng);
        if k >= 1.0 {
            return k as usize;
        }
    }
}

/// Price graph: like BA but each arriving node draws its link count from a
/// zero-truncated Poisson(c). The directed variant points every edge from
/// the arriving node to the existing node.
pub fn gen_price<R: Rng + ?Sized>(n: usize, c: f64, directed: bool, rng: &mut R) -> Result<Graph> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::validation(format!("mean links c = {c} must be > 0")));
    }
    if n == 0 {
        return Err(Error::validation("Price graph needs n >= 1"));
    }
    let dist = Poisson::new(c).map_err(|e| Error::validation(e.to_string()))?;
    Ok(grow(n, 1, directed, rng, |rng| truncated_poisson(&dist, rng)))
}
