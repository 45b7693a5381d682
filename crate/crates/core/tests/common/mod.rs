#![allow(dead_code)]

use std::collections::BTreeSet;

use cascadelab::Graph;

/// Small undirected graph as per-node neighbor bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl SmallGraph {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges(), false, None).unwrap()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = (1u32 << self.n) - 1;
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for u in 0..self.n {
                if frontier >> u & 1 == 1 {
                    next |= self.adj[u];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    fn code(&self, order: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for k in 0..self.n {
            for l in k + 1..self.n {
                if self.adj[order[k]] >> order[l] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Largest adjacency code over all orderings that sort vertices by
    /// (degree, sorted neighbor degrees). Isomorphic graphs share it.
    pub fn canonical(&self) -> u64 {
        let deg: Vec<u32> = self.adj.iter().map(|a| a.count_ones()).collect();
        let key = |u: usize| {
            let mut nd: Vec<u32> = (0..self.n)
                .filter(|&v| self.adj[u] >> v & 1 == 1)
                .map(|v| deg[v])
                .collect();
            nd.sort_unstable();
            (deg[u], nd)
        };
        let mut verts: Vec<usize> = (0..self.n).collect();
        verts.sort_by_key(|&u| key(u));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &u in &verts {
            match classes.last_mut() {
                Some(c) if key(c[0]) == key(u) => c.push(u),
                _ => classes.push(vec![u]),
            }
        }
        let mut best = 0;
        let mut order = Vec::with_capacity(self.n);
        self.search(&classes, 0, &mut vec![false; self.n], &mut order, &mut best);
        best
    }

    fn search(&self, classes: &[Vec<usize>], ci: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, best: &mut u64) {
        if order.len() == self.n {
            *best = (*best).max(self.code(order));
            return;
        }
        let class = &classes[ci];
        let placed = class.iter().filter(|&&u| used[u]).count();
        let next_ci = if placed + 1 == class.len() { ci + 1 } else { ci };
        for &u in class {
            if !used[u] {
                used[u] = true;
                order.push(u);
                self.search(classes, next_ci, used, order, best);
                order.pop();
                used[u] = false;
            }
        }
    }
}

/// One representative of every isomorphism class of graphs on `n` nodes,
/// built by attaching a new vertex to every subset of each smaller class.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    let mut level = vec![SmallGraph { n: 0, adj: vec![] }];
    for k in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 0u32..(1 << (k - 1)) {
                let mut adj = g.adj.clone();
                for (v, a) in adj.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *a |= 1 << (k - 1);
                    }
                }
                adj.push(subset);
                let h = SmallGraph { n: k, adj };
                if seen.insert(h.canonical()) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<SmallGraph> {
    all_graphs(n).into_iter().filter(SmallGraph::is_connected).collect()
}
