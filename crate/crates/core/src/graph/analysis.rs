use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, NodeId};

/// Connected components (weak connectivity for directed graphs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    /// Component label per node; labels are numbered in order of each
    /// component's smallest node.
    pub component_id: Vec<usize>,
    pub sizes: Vec<usize>,
    pub giant_size: usize,
}

impl ComponentPartition {
    pub fn giant_label(&self) -> Option<usize> {
        self.sizes
            .iter()
            .enumerate()
            .max_by_key(|&(i, &s)| (s, std::cmp::Reverse(i)))
            .map(|(i, _)| i)
    }
}

pub fn components(g: &Graph) -> ComponentPartition {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        label[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            let visit = |v: &NodeId, label: &mut Vec<usize>, queue: &mut VecDeque<NodeId>| {
                if label[*v] == usize::MAX {
                    label[*v] = id;
                    queue.push_back(*v);
                }
            };
            for v in g.neighbors(u) {
                visit(v, &mut label, &mut queue);
            }
            if g.is_directed() {
                for v in g.in_neighbors(u) {
                    visit(v, &mut label, &mut queue);
                }
            }
        }
        sizes.push(size);
    }
    let giant_size = sizes.iter().copied().max().unwrap_or(0);
    ComponentPartition {
        component_id: label,
        sizes,
        giant_size,
    }
}

/// Mean local clustering coefficient. Nodes with fewer than two neighbors
/// contribute zero. Directed graphs are measured on their skeleton.
pub fn average_clustering(g: &Graph) -> f64 {
    if g.is_directed() {
        return average_clustering(&g.undirected_skeleton());
    }
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let mut mark = vec![usize::MAX; n];
    let mut total = 0.0;
    for i in 0..n {
        let nbrs = g.neighbors(i);
        let z = nbrs.len();
        if z < 2 {
            continue;
        }
        for &j in nbrs {
            mark[j] = i;
        }
        let mut links = 0usize;
        for &j in nbrs {
            links += g.neighbors(j).iter().filter(|&&k| mark[k] == i).count();
        }
        // each triangle edge seen from both ends
        let triangles = links / 2;
        total += triangles as f64 / (z * (z - 1) / 2) as f64;
    }
    total / n as f64
}
