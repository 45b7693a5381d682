//! Exact shortest-path betweenness (Brandes accumulation over BFS trees).

use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::par;

/// Sources handled per work unit. Partial sums are combined in chunk order,
/// so results do not depend on the number of threads.
const SOURCES_PER_CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Betweenness {
    /// Normalized by (n-1)(n-2)/2, so every value lies in [0, 1].
    pub values: Vec<f64>,
    /// Set when n < 3 and the normalization is undefined; values are zero.
    pub degenerate: bool,
}

/// Betweenness centrality of every node. Directed graphs are measured on
/// their undirected skeleton.
pub fn betweenness(g: &Graph) -> Betweenness {
    if g.is_directed() {
        return betweenness(&g.undirected_skeleton());
    }
    let n = g.node_count();
    if n < 3 {
        return Betweenness {
            values: vec![0.0; n],
            degenerate: true,
        };
    }
    let chunks = n.div_ceil(SOURCES_PER_CHUNK);
    let partials = par::map_indexed(chunks, |c| {
        let mut ws = Workspace::new(n);
        let mut acc = vec![0.0; n];
        let lo = c * SOURCES_PER_CHUNK;
        for s in lo..(lo + SOURCES_PER_CHUNK).min(n) {
            ws.accumulate_from(g, s, &mut acc);
        }
        acc
    });
    let mut values = vec![0.0; n];
    for part in &partials {
        for (v, p) in values.iter_mut().zip(part) {
            *v += p;
        }
    }
    // Each unordered pair is counted from both endpoints.
    let scale = 1.0 / ((n - 1) as f64 * (n - 2) as f64);
    for v in &mut values {
        *v *= scale;
    }
    Betweenness {
        values,
        degenerate: false,
    }
}

struct Workspace {
    order: Vec<usize>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            order: Vec::with_capacity(n),
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate_from(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.order.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v];
            for &w in g.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // Predecessors are recovered from distances instead of stored lists.
        for &w in self.order.iter().rev() {
            let dw = self.dist[w];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if self.dist[v] == dw - 1 {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
        for &v in &self.order {
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
        }
    }
}

/// Mean degree of the nodes whose betweenness strictly exceeds `tau`.
/// `Ok(None)` when no node qualifies.
pub fn high_betweenness_mean_degree(g: &Graph, tau: f64) -> Result<Option<f64>> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::validation(format!("threshold {tau} outside [0, 1]")));
    }
    let b = betweenness(g);
    Ok(mean_degree_above(g, &b.values, tau))
}

pub(crate) fn mean_degree_above(g: &Graph, values: &[f64], tau: f64) -> Option<f64> {
    let (count, total) = values
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b > tau)
        .fold((0usize, 0usize), |(c, t), (i, _)| (c + 1, t + g.degree_of(i)));
    (count > 0).then(|| total as f64 / count as f64)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::rng::RngStream;
    use proptest::prelude::*;
    use rand::Rng;

    /// Enumerates every shortest path between every pair explicitly.
    #[allow(clippy::needless_range_loop)]
    fn brute_force(g: &Graph) -> Vec<f64> {
        let n = g.node_count();
        let mut dist = vec![vec![usize::MAX; n]; n];
        for s in 0..n {
            dist[s][s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in g.neighbors(u) {
                    if dist[s][v] == usize::MAX {
                        dist[s][v] = dist[s][u] + 1;
                        q.push_back(v);
                    }
                }
            }
        }
        fn walk(
            g: &Graph,
            dist: &[Vec<usize>],
            t: usize,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let u = *path.last().unwrap();
            if u == t {
                out.push(path.clone());
                return;
            }
            for &v in g.neighbors(u) {
                if dist[v][t] != usize::MAX && dist[v][t] + 1 == dist[u][t] {
                    path.push(v);
                    walk(g, dist, t, path, out);
                    path.pop();
                }
            }
        }
        let mut score = vec![0.0; n];
        for s in 0..n {
            for t in s + 1..n {
                if dist[s][t] == usize::MAX {
                    continue;
                }
                let mut paths = Vec::new();
                walk(g, &dist, t, &mut vec![s], &mut paths);
                let total = paths.len() as f64;
                for p in &paths {
                    for &v in &p[1..p.len() - 1] {
                        score[v] += 1.0 / total;
                    }
                }
            }
        }
        let norm = ((n - 1) * (n - 2)) as f64 / 2.0;
        score.iter().map(|x| x / norm).collect()
    }

    #[test]
    fn fixtures() {
        assert_eq!(betweenness(&path(3)).values, vec![0.0, 1.0, 0.0]);
        let s = betweenness(&star(4)).values;
        assert!((s[0] - 1.0).abs() < 1e-12);
        assert!(s[1..].iter().all(|&x| x == 0.0));
        assert!(betweenness(&complete(6)).values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn cycle_five() {
        // Oracle: each node is the midpoint of exactly one distance-2 pair.
        let oracle = brute_force(&cycle(5));
        for v in &oracle {
            assert!((v - 1.0 / 6.0).abs() < 1e-12);
        }
        for v in betweenness(&cycle(5)).values {
            assert!((v - 1.0 / 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tiny_graphs_are_degenerate() {
        let b = betweenness(&path(2));
        assert!(b.degenerate);
        assert_eq!(b.values, vec![0.0, 0.0]);
    }

    #[test]
    fn high_betweenness_fixtures() {
        assert_eq!(high_betweenness_mean_degree(&star(10), 0.5).unwrap(), Some(10.0));
        assert_eq!(high_betweenness_mean_degree(&path(3), 0.99).unwrap(), Some(2.0));
        assert_eq!(high_betweenness_mean_degree(&complete(5), 0.0).unwrap(), None);
        assert!(high_betweenness_mean_degree(&path(3), 1.5).is_err());
    }

    fn random_connected(n: usize, extra: f64, seed: u64) -> Graph {
        let mut rng = RngStream::new(seed, 0).rng();
        let mut edges = Vec::new();
        // random spanning tree keeps the graph connected
        for v in 1..n {
            edges.push((rng.random_range(0..v), v));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !edges.contains(&(u, v)) && rng.random::<f64>() < extra {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges, false, None).unwrap()
    }

    proptest! {
        #[test]
        fn matches_path_enumeration(n in 3usize..=8, extra in 0.0f64..0.8, seed in any::<u64>()) {
            let g = random_connected(n, extra, seed);
            let fast = betweenness(&g).values;
            let slow = brute_force(&g);
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
                prop_assert!((0.0..=1.0 + 1e-12).contains(a));
            }
        }
    }
}
