//! Immutable graphs in compressed adjacency form.
//!
//! Conventions for directed graphs: [`Graph::degree`] is the out-degree,
//! [`Graph::in_neighbors`] lists the nodes a node listens to during a
//! cascade, and connectivity analyses use weak connectivity (the undirected
//! skeleton).

mod analysis;
mod betweenness;

pub use analysis::{average_clustering, components, ComponentPartition};
pub use betweenness::{betweenness, high_betweenness_mean_degree, Betweenness};
pub(crate) use betweenness::mean_degree_above;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Adjacency stored as offsets into a flat target array.
#[derive(Debug, Clone, PartialEq, Default)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    /// `pairs` need not be sorted; neighbor lists come out sorted.
    fn from_pairs(n: usize, pairs: impl Iterator<Item = (NodeId, NodeId)> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for (u, _) in pairs.clone() {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; offsets[n]];
        for (u, v) in pairs {
            targets[fill[u]] = v;
            fill[u] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, i: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(NodeId, NodeId)>,
    out: Csr,
    /// Only populated for directed graphs.
    inc: Option<Csr>,
    positions: Option<Vec<[f64; 2]>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting out-of-range endpoints,
    /// self-loops, duplicate edges and malformed positions.
    pub fn from_edges(
        n: usize,
        edges: &[(NodeId, NodeId)],
        directed: bool,
        positions: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(Error::validation(format!("self-loop at node {u}")));
            }
        }
        let mut keys: Vec<(NodeId, NodeId)> = edges
            .iter()
            .map(|&(u, v)| if directed { (u, v) } else { (u.min(v), u.max(v)) })
            .collect();
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        if let Some(pos) = &positions {
            if pos.len() != n {
                return Err(Error::validation(format!(
                    "{} positions given for {n} nodes",
                    pos.len()
                )));
            }
            if let Some(i) = pos
                .iter()
                .position(|p| !p.iter().all(|c| (0.0..=1.0).contains(c)))
            {
                return Err(Error::validation(format!(
                    "position of node {i} lies outside the unit square"
                )));
            }
        }
        Ok(Self::assemble(n, edges.to_vec(), directed, positions))
    }

    /// Construction path for generators, whose output is valid by
    /// construction. Invariants are still checked in debug builds.
    pub(crate) fn assemble(
        n: usize,
        edges: Vec<(NodeId, NodeId)>,
        directed: bool,
        positions: Option<Vec<[f64; 2]>>,
    ) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n && u != v));
        let (out, inc) = if directed {
            let out = Csr::from_pairs(n, edges.iter().copied());
            let inc = Csr::from_pairs(n, edges.iter().map(|&(u, v)| (v, u)));
            (out, Some(inc))
        } else {
            let both = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
            (Csr::from_pairs(n, both), None)
        };
        Graph {
            n,
            directed,
            edges,
            out,
            inc,
            positions,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn positions(&self) -> Option<&[[f64; 2]]> {
        self.positions.as_deref()
    }

    /// Neighbors for undirected graphs, out-neighbors for directed ones.
    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        self.out.row(i)
    }

    /// Nodes whose state node `i` reads. Equal to [`Graph::neighbors`] for
    /// undirected graphs.
    #[inline]
    pub fn in_neighbors(&self, i: NodeId) -> &[NodeId] {
        match &self.inc {
            Some(inc) => inc.row(i),
            None => self.out.row(i),
        }
    }

    /// Unchecked degree (out-degree when directed).
    #[inline]
    pub fn degree_of(&self, i: NodeId) -> usize {
        self.out.offsets[i + 1] - self.out.offsets[i]
    }

    #[inline]
    pub fn in_degree_of(&self, i: NodeId) -> usize {
        self.in_neighbors(i).len()
    }

    pub fn degree(&self, i: NodeId) -> Result<usize> {
        if i >= self.n {
            return Err(Error::validation(format!(
                "node {i} out of range for graph with {} nodes",
                self.n
            )));
        }
        Ok(self.degree_of(i))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree_of(i)).collect()
    }

    /// Mean (out-)degree: 2e/n undirected, e/n directed.
    pub fn mean_degree(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::validation("mean degree of an empty graph"));
        }
        let total = if self.directed {
            self.edges.len()
        } else {
            2 * self.edges.len()
        };
        Ok(total as f64 / self.n as f64)
    }

    /// The undirected graph on the same nodes with every edge direction
    /// forgotten (reciprocal pairs merge). Returns a clone if already
    /// undirected.
    pub fn undirected_skeleton(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut pairs: Vec<(NodeId, NodeId)> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        Graph::assemble(self.n, pairs, false, self.positions.clone())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, false, None).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges, false, None).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges, false, None).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges, false, None).unwrap()
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[], false, None).unwrap()
    }
}
