use std::collections::HashSet;

use super::{GraphError, NodeId};

/// Undirected simple edge list, before any ports are assigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl EdgeList {
    pub fn new(node_count: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(GraphError::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(EdgeList { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Edges in input order, endpoints as given.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges normalised to `(min, max)` and sorted.
    pub fn edge_set(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        out.sort_unstable();
        out
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}
