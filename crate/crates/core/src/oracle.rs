//! Exact minimum vertex cover for small graphs.
//!
//! Two independent methods: a branch-and-bound search and plain subset
//! enumeration. Both work on 64-bit node masks.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{NodeId, PortGraph};

pub const DEFAULT_MAX_NODES: usize = 32;
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;
pub const BRUTE_FORCE_MAX_NODES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{nodes} nodes exceeds the exact-solver cap of {cap}; use the certificate instead")]
    TooLarge { nodes: usize, cap: usize },
    #[error("search stopped after {limit} nodes; optimum lies in [{lower_bound}, {best}]")]
    NodeLimit { limit: u64, lower_bound: usize, best: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum_size: usize,
    pub optimum_cover: BTreeSet<NodeId>,
    /// Search-tree nodes (branch and bound) or subsets tried (enumeration).
    pub explored_nodes: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub max_nodes: usize,
    pub node_limit: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_nodes: DEFAULT_MAX_NODES, node_limit: DEFAULT_NODE_LIMIT }
    }
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn masks(g: &PortGraph) -> Vec<u64> {
    (0..g.node_count()).map(|v| g.neighbours(v).fold(0, |m, u| m | bit(u))).collect()
}

fn to_set(mask: u64) -> BTreeSet<NodeId> {
    (0..64).filter(|&v| mask & bit(v) != 0).collect()
}

struct Search<'a> {
    adj: &'a [u64],
    best: usize,
    best_cover: u64,
    explored: u64,
    limit: u64,
    root_bound: usize,
}

impl Search<'_> {
    fn degree(&self, v: usize, alive: u64) -> u32 {
        (self.adj[v] & alive).count_ones()
    }

    /// Size of a greedy maximal matching among `alive` nodes.
    fn matching_bound(&self, alive: u64) -> usize {
        let mut free = alive;
        let mut size = 0;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= !bit(v);
            let partners = self.adj[v] & free;
            if partners != 0 {
                free &= !bit(partners.trailing_zeros() as usize);
                size += 1;
            }
        }
        size
    }

    /// Optimum on a graph of maximum degree 2, which is a union of paths and
    /// cycles: every other node along each walk, plus the last node of an
    /// odd cycle.
    fn solve_degree_two(&self, alive: u64) -> (usize, u64) {
        let mut left = alive;
        let mut cover = 0u64;
        while left != 0 {
            let seed = left.trailing_zeros() as usize;
            let mut comp = bit(seed);
            let mut frontier = bit(seed);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= !bit(v);
                let new = self.adj[v] & alive & !comp;
                comp |= new;
                frontier |= new;
            }
            left &= !comp;
            // a path is walked from an end, a cycle from anywhere
            let mut ends = comp;
            while ends != 0 && self.degree(ends.trailing_zeros() as usize, alive) == 2 {
                ends &= ends - 1;
            }
            let is_cycle = ends == 0;
            let first = if is_cycle { seed } else { ends.trailing_zeros() as usize };
            let mut walk = vec![first];
            let mut visited = bit(first);
            loop {
                let cur = *walk.last().unwrap();
                let next = self.adj[cur] & alive & !visited;
                if next == 0 {
                    break;
                }
                let v = next.trailing_zeros() as usize;
                visited |= bit(v);
                walk.push(v);
            }
            for &v in walk.iter().skip(1).step_by(2) {
                cover |= bit(v);
            }
            if is_cycle && walk.len() % 2 == 1 {
                cover |= bit(*walk.last().unwrap());
            }
        }
        (cover.count_ones() as usize, cover)
    }

    fn go(&mut self, alive: u64, chosen: u64, size: usize) -> Result<(), ()> {
        self.explored += 1;
        if self.explored > self.limit {
            return Err(());
        }
        if size + self.matching_bound(alive) >= self.best {
            return Ok(());
        }
        let mut pick = None;
        let mut top = 0;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= !bit(v);
            let d = self.degree(v, alive);
            if d > top {
                top = d;
                pick = Some(v);
            }
        }
        let Some(u) = pick else {
            self.best = size;
            self.best_cover = chosen;
            return Ok(());
        };
        if top <= 2 {
            let (extra, cover) = self.solve_degree_two(alive);
            if size + extra < self.best {
                self.best = size + extra;
                self.best_cover = chosen | cover;
            }
            return Ok(());
        }
        // u in the cover
        self.go(alive & !bit(u), chosen | bit(u), size + 1)?;
        // u out, so all of its remaining neighbours are in
        let nb = self.adj[u] & alive;
        self.go(alive & !nb & !bit(u), chosen | nb, size + nb.count_ones() as usize)
    }
}

/// Branch and bound: branch on the highest-degree node `u`, either taking
/// `u` or taking all of its neighbours; prune with a matching lower bound;
/// finish exactly once every remaining degree is at most 2.
pub fn solve(g: &PortGraph, options: OracleOptions) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    let cap = options.max_nodes.min(64);
    if n > cap {
        return Err(OracleError::TooLarge { nodes: n, cap });
    }
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { bit(n) - 1 };
    // start from the cover formed by a maximal matching's endpoints
    let mut start_cover = 0u64;
    for (u, v) in g.edges() {
        if start_cover & (bit(u) | bit(v)) == 0 {
            start_cover |= bit(u) | bit(v);
        }
    }
    let mut search = Search {
        adj: &adj,
        best: start_cover.count_ones() as usize + 1,
        best_cover: start_cover,
        explored: 0,
        limit: options.node_limit,
        root_bound: 0,
    };
    search.root_bound = search.matching_bound(all);
    match search.go(all, 0, 0) {
        Ok(()) => Ok(OracleResult {
            optimum_size: search.best,
            optimum_cover: to_set(search.best_cover),
            explored_nodes: search.explored,
        }),
        Err(()) => Err(OracleError::NodeLimit {
            limit: options.node_limit,
            lower_bound: search.root_bound,
            best: search.best.min(start_cover.count_ones() as usize),
        }),
    }
}

/// Tries every subset in order of increasing size; the first cover wins.
pub fn brute_force(g: &PortGraph) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(OracleError::TooLarge { nodes: n, cap: BRUTE_FORCE_MAX_NODES });
    }
    let edges: Vec<u64> = g.edges().iter().map(|&(u, v)| bit(u) | bit(v)).collect();
    let mut tried = 0u64;
    for k in 0..=n {
        // Gosper's hack over k-subsets of n bits
        let mut s: u64 = if k == 0 { 0 } else { bit(k) - 1 };
        while s < bit(n) {
            tried += 1;
            if edges.iter().all(|&e| e & s != 0) {
                return Ok(OracleResult { optimum_size: k, optimum_cover: to_set(s), explored_nodes: tried });
            }
            if s == 0 {
                break;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    unreachable!("the full node set is always a cover")
}
