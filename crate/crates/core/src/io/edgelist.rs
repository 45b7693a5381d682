//! Plain-text graph files.
//!
//! Edge list: optional header `# n=<n> directed=<0|1>`, then one `u v` pair
//! per line (0-based). Without a header the graph is undirected and `n` is
//! one more than the largest endpoint. Positions: one `i x y` line per node.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={} directed={}\n", g.node_count(), u8::from(g.is_directed()));
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Coordinates use the shortest decimal form that reads back bit-exact.
pub fn format_positions(positions: &[[f64; 2]]) -> String {
    let mut out = String::new();
    for (i, [x, y]) in positions.iter().enumerate() {
        writeln!(out, "{i} {x} {y}").unwrap();
    }
    out
}

struct Header {
    n: usize,
    directed: bool,
}

fn parse_header(line: &str) -> Option<Header> {
    let mut n = None;
    let mut directed = None;
    for tok in line.trim_start_matches('#').split_whitespace() {
        match tok.split_once('=') {
            Some(("n", v)) => n = v.parse().ok(),
            Some(("directed", "0")) => directed = Some(false),
            Some(("directed", "1")) => directed = Some(true),
            _ => return None,
        }
    }
    Some(Header { n: n?, directed: directed? })
}

fn parse_err(source: &str, line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("{source}:{line}"),
        reason: reason.into(),
    }
}

/// `(n, directed, edges)` as read from an edge-list file.
pub type ParsedEdgeList = (usize, bool, Vec<(NodeId, NodeId)>);

pub fn parse_edge_list(text: &str, source: &str) -> Result<ParsedEdgeList> {
    let mut header = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if idx == 0 || (header.is_none() && edges.is_empty()) {
                header = Some(parse_header(line).ok_or_else(|| {
                    parse_err(source, idx + 1, "expected `# n=<n> directed=<0|1>`")
                })?);
            }
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(source, idx + 1, "expected `u v`"));
        };
        let u: NodeId = u.parse().map_err(|_| parse_err(source, idx + 1, format!("bad node `{u}`")))?;
        let v: NodeId = v.parse().map_err(|_| parse_err(source, idx + 1, format!("bad node `{v}`")))?;
        edges.push((u, v));
    }
    let (n, directed) = match header {
        Some(h) => (h.n, h.directed),
        None => (edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0), false),
    };
    Ok((n, directed, edges))
}

pub fn parse_positions(text: &str, n: usize, source: &str) -> Result<Vec<[f64; 2]>> {
    let mut pos = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [i, x, y] = fields[..] else {
            return Err(parse_err(source, idx + 1, "expected `i x y`"));
        };
        let i: usize = i.parse().map_err(|_| parse_err(source, idx + 1, "bad node index"))?;
        let x: f64 = x.parse().map_err(|_| parse_err(source, idx + 1, "bad x coordinate"))?;
        let y: f64 = y.parse().map_err(|_| parse_err(source, idx + 1, "bad y coordinate"))?;
        if i >= n {
            return Err(parse_err(source, idx + 1, format!("node {i} out of range")));
        }
        pos[i] = Some([x, y]);
    }
    pos.into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| parse_err(source, 0, format!("no position for node {i}"))))
        .collect()
}

pub fn write_graph(g: &Graph, edges_path: &Path, positions_path: Option<&Path>) -> Result<()> {
    std::fs::write(edges_path, format_edge_list(g))?;
    if let (Some(path), Some(pos)) = (positions_path, g.positions()) {
        std::fs::write(path, format_positions(pos))?;
    }
    Ok(())
}

pub fn read_graph(edges_path: &Path, positions_path: Option<&Path>) -> Result<Graph> {
    let source = edges_path.display().to_string();
    let (n, directed, edges) = parse_edge_list(&std::fs::read_to_string(edges_path)?, &source)?;
    let positions = match positions_path {
        Some(p) => Some(parse_positions(&std::fs::read_to_string(p)?, n, &p.display().to_string())?),
        None => None,
    };
    Graph::from_edges(n, &edges, directed, positions)
}
