//! Test corpora: every connected graph up to isomorphism on a few nodes,
//! and a collection of connected regular graphs.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::graph::{EdgeList, NodeId};

/// Largest order supported by [`connected_graphs`].
pub const MAX_EXHAUSTIVE_NODES: usize = 10;

/// Adjacency rows as bitmasks.
type Rows = Vec<u16>;

fn rows_to_edges(rows: &Rows) -> EdgeList {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| rows[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    EdgeList::new(n, edges).expect("rows describe a simple graph")
}

/// Ordered partition from colour refinement, starting from degrees. Both
/// the cells and their order depend only on the isomorphism class.
fn refined_cells(rows: &Rows) -> Vec<Vec<NodeId>> {
    let n = rows.len();
    let mut colour: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&u| rows[v] >> u & 1 == 1).map(|u| colour[u]).collect();
                ns.sort_unstable();
                (colour[v], ns)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).unwrap()).collect();
        let before = colour.iter().collect::<BTreeSet<_>>().len();
        let after = ranked.len();
        colour = next;
        if after == before {
            break;
        }
    }
    let classes = colour.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); classes];
    for (v, &c) in colour.iter().enumerate() {
        cells[c].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

/// Smallest upper-triangle code over all relabellings that respect the
/// refined partition. Equal codes iff isomorphic.
fn canonical_code(rows: &Rows) -> u64 {
    let n = rows.len();
    let cells = refined_cells(rows);
    let mut order = Vec::with_capacity(n);
    let mut best = u64::MAX;
    fn rec(rows: &Rows, cells: &[Vec<NodeId>], cell: usize, used: u16, order: &mut Vec<NodeId>, best: &mut u64) {
        if cell == cells.len() {
            let n = order.len();
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | (rows[order[i]] >> order[j] & 1) as u64;
                }
            }
            *best = (*best).min(code);
            return;
        }
        let start = cells[..cell].iter().map(Vec::len).sum::<usize>();
        if order.len() == start + cells[cell].len() {
            rec(rows, cells, cell + 1, used, order, best);
            return;
        }
        for &v in &cells[cell] {
            if used >> v & 1 == 0 {
                order.push(v);
                rec(rows, cells, cell, used | 1 << v, order, best);
                order.pop();
            }
        }
    }
    rec(rows, &cells, 0, 0, &mut order, &mut best);
    best
}

fn code_to_rows(n: usize, code: u64) -> Rows {
    let mut rows = vec![0u16; n];
    let mut bit = n * (n.saturating_sub(1)) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    rows
}

/// Every connected graph on `n` nodes, one per isomorphism class, ordered
/// by canonical code.
///
/// Built by adding a node to each connected graph on `n - 1` nodes in every
/// possible way: every connected graph has a node whose removal leaves it
/// connected, so nothing is missed.
pub fn connected_graphs(n: usize) -> Vec<EdgeList> {
    assert!(n <= MAX_EXHAUSTIVE_NODES, "exhaustive enumeration is limited to {MAX_EXHAUSTIVE_NODES} nodes");
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = code_to_rows(k - 1, code);
            for attach in 1u16..(1 << (k - 1)) {
                let mut rows = base.clone();
                rows.push(attach);
                for (v, row) in rows.iter_mut().enumerate().take(k - 1) {
                    if attach >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                next.insert(canonical_code(&rows));
            }
        }
        level = next;
    }
    level.into_iter().map(|code| rows_to_edges(&code_to_rows(n, code))).collect()
}

pub fn is_regular(el: &EdgeList) -> Option<usize> {
    let mut deg = vec![0usize; el.node_count()];
    for &(u, v) in el.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let d = *deg.first()?;
    deg.iter().all(|&x| x == d).then_some(d)
}

pub fn is_connected(el: &EdgeList) -> bool {
    let n = el.node_count();
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in el.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

pub fn petersen() -> EdgeList {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    EdgeList::new(10, outer.chain(spokes).chain(inner).collect()).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> EdgeList {
    EdgeList::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect()).unwrap()
}

/// Circulant graph on `n` nodes joining `v` to `v ± s` for each `s` in `jumps`.
pub fn circulant(n: usize, jumps: &[usize]) -> EdgeList {
    let mut edges = BTreeSet::new();
    for v in 0..n {
        for &s in jumps {
            let u = (v + s) % n;
            if u != v {
                edges.insert((v.min(u), v.max(u)));
            }
        }
    }
    EdgeList::new(n, edges.into_iter().collect()).unwrap()
}

pub fn hypercube(dim: u32) -> EdgeList {
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|&(v, u)| v < u)).collect();
    EdgeList::new(n, edges).unwrap()
}

/// Connected regular graphs of degree at least 1 on at most `max_nodes`
/// nodes: all of them up to 8 nodes, then the connected circulants (which
/// include cycles, cliques and balanced complete bipartite graphs) and the
/// Petersen graph.
pub fn regular_graphs(max_nodes: usize) -> Vec<EdgeList> {
    let mut out: Vec<EdgeList> =
        (2..=max_nodes.min(8)).flat_map(connected_graphs).filter(|el| is_regular(el).is_some_and(|d| d >= 1)).collect();
    for n in 9..=max_nodes {
        let half = n / 2;
        for mask in 1u32..(1 << half) {
            let jumps: Vec<usize> = (1..=half).filter(|s| mask >> (s - 1) & 1 == 1).collect();
            let connected = jumps.iter().fold(n, |g, &s| g.gcd(&s)) == 1;
            let el = circulant(n, &jumps);
            if connected && is_regular(&el).is_some() {
                out.push(el);
            }
        }
    }
    if max_nodes >= 10 {
        out.push(petersen());
    }
    out
}
