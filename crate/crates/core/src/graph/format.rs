//! Text formats.
//!
//! Port-graph (`.pg`): a header `n m`, then one line `v d(v) u_1 .. u_d` per
//! node, where `u_j` is the neighbour behind port `j`. The port on the far
//! side is recovered from the neighbour's own line.
//!
//! Edge list (`.el`): a header `n`, then one `u v` pair per line.
//!
//! Both accept blank lines and lines starting with `#`.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::{EdgeList, NodeId, PortGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError { line, message: format!("not a non-negative integer: {tok:?}") })
        })
        .collect()
}

pub fn serialize_port_graph(g: &PortGraph) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edge_count());
    for v in 0..g.node_count() {
        write!(out, "{} {}", v, g.degree(v)).unwrap();
        for u in g.neighbours(v) {
            write!(out, " {u}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_port_graph(text: &str) -> Result<PortGraph, ParseError> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return err(1, "missing header `n m`");
    };
    let (n, m) = match numbers(header_line, header)?[..] {
        [n, m] => (n, m),
        _ => return err(header_line, "header must be `n m`"),
    };

    let mut neighbours: Vec<Option<(usize, Vec<NodeId>)>> = vec![None; n];
    for _ in 0..n {
        let Some((line, text)) = lines.next() else {
            return err(last_line, format!("expected {n} node lines"));
        };
        let nums = numbers(line, text)?;
        let (v, d) = match nums[..] {
            [v, d, ..] => (v, d),
            _ => return err(line, "node line must start with `v d`"),
        };
        if v >= n {
            return err(line, format!("node {v} out of range"));
        }
        if nums.len() != d + 2 {
            return err(line, format!("node {v} declares degree {d} but lists {} neighbours", nums.len() - 2));
        }
        if neighbours[v].is_some() {
            return err(line, format!("node {v} listed twice"));
        }
        let ns = nums[2..].to_vec();
        let mut seen = HashSet::new();
        for &u in &ns {
            if u >= n {
                return err(line, format!("neighbour {u} out of range"));
            }
            if u == v {
                return err(line, format!("self-loop at node {v}"));
            }
            if !seen.insert(u) {
                return err(line, format!("parallel edge {{{v}, {u}}}"));
            }
        }
        neighbours[v] = Some((line, ns));
    }
    if let Some((line, _)) = lines.next() {
        return err(line, "unexpected trailing content");
    }

    let neighbours: Vec<(usize, Vec<NodeId>)> = neighbours.into_iter().map(Option::unwrap).collect();
    let mut degree_sum = 0;
    for (v, (line, ns)) in neighbours.iter().enumerate() {
        degree_sum += ns.len();
        for &u in ns {
            if !neighbours[u].1.contains(&v) {
                return err(*line, format!("node {v} lists {u}, but {u} does not list {v}"));
            }
        }
    }
    if degree_sum / 2 != m {
        return err(header_line, format!("header declares {m} edges, node lines give {}", degree_sum / 2));
    }
    let lists: Vec<Vec<NodeId>> = neighbours.into_iter().map(|(_, ns)| ns).collect();
    Ok(PortGraph::from_neighbour_lists(&lists))
}

pub fn serialize_edge_list(el: &EdgeList) -> String {
    let mut out = format!("{}\n", el.node_count());
    for (u, v) in el.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList, ParseError> {
    let mut lines = content_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return err(1, "missing header `n`");
    };
    let n = match numbers(header_line, header)?[..] {
        [n] => n,
        _ => return err(header_line, "header must be the node count `n`"),
    };
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, text) in lines {
        let (u, v) = match numbers(line, text)?[..] {
            [u, v] => (u, v),
            _ => return err(line, "edge line must be `u v`"),
        };
        if u >= n || v >= n {
            return err(line, format!("edge {{{u}, {v}}} has a node outside 0..{n}"));
        }
        if u == v {
            return err(line, format!("self-loop at node {u}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return err(line, format!("duplicate edge {{{u}, {v}}}"));
        }
        edges.push((u, v));
    }
    Ok(EdgeList::new(n, edges).expect("checked line by line"))
}
