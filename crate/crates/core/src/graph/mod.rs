//! Port-numbered simple graphs.
//!
//! Every node `v` owns ports `1..=d(v)`. Port `j` of `v` leads to some
//! neighbour `u` and arrives there on one of `u`'s ports, so each edge is
//! stored twice, once per endpoint, and the two halves must agree.

mod edge_list;
pub mod format;
pub mod generate;

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use edge_list::EdgeList;

/// Host-side node identifier. Nodes never see these; only the harness does.
pub type NodeId = usize;

/// A 1-based port number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port(u32);

impl Port {
    /// Panics on zero; ports start at 1.
    pub fn new(number: u32) -> Self {
        assert!(number >= 1, "port numbers are 1-based");
        Port(number)
    }

    pub fn from_index(index: usize) -> Self {
        Port(index as u32 + 1)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// 0-based position in a node's port table.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The far end of a port: node `node`, arriving on its port `port`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub node: NodeId,
    pub port: Port,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("node {node} out of range (node count {node_count})")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("random port numbering requires a seed")]
    MissingSeed,
    #[error("invalid port graph: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Invalid(Vec<Violation>),
    #[error("invalid generator parameters: {0}")]
    BadParameters(String),
}

/// A broken `PortGraph` invariant, located at `(node, port)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop {
        node: NodeId,
        port: Port,
    },
    NodeOutOfRange {
        node: NodeId,
        port: Port,
        target: NodeId,
    },
    /// Some port refers to `port` at `node`, which has fewer ports than that.
    PortGap {
        node: NodeId,
        port: Port,
        referenced_from: (NodeId, Port),
    },
    Reciprocity {
        node: NodeId,
        port: Port,
    },
    ParallelEdge {
        node: NodeId,
        port: Port,
        neighbour: NodeId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { node, port } => write!(f, "self-loop at ({node}, {port})"),
            Violation::NodeOutOfRange { node, port, target } => {
                write!(f, "port ({node}, {port}) leads to nonexistent node {target}")
            }
            Violation::PortGap { node, port, referenced_from: (u, k) } => {
                write!(f, "port-range gap: ({u}, {k}) refers to port {port} of node {node}, which has no such port")
            }
            Violation::Reciprocity { node, port } => {
                write!(f, "reciprocity violation at ({node}, {port})")
            }
            Violation::ParallelEdge { node, port, neighbour } => {
                write!(f, "parallel edge to {neighbour} at ({node}, {port})")
            }
        }
    }
}

/// How ports are assigned when building from an edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numbering {
    /// Port order is ascending neighbour id.
    Sorted,
    /// Port order is the order in which edges first mention the neighbour.
    Input,
    /// Seeded shuffle of each node's ports.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortGraph {
    ports: Vec<Vec<Endpoint>>,
}

impl PortGraph {
    /// Builds a graph from explicit port tables, rejecting anything invalid.
    pub fn new(ports: Vec<Vec<Endpoint>>) -> Result<Self, GraphError> {
        let g = PortGraph { ports };
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// No validation. Only for constructing counterexamples.
    pub fn from_ports_unchecked(ports: Vec<Vec<Endpoint>>) -> Self {
        PortGraph { ports }
    }

    pub fn empty(node_count: usize) -> Self {
        PortGraph { ports: vec![Vec::new(); node_count] }
    }

    pub fn from_edge_list(edges: &EdgeList, numbering: Numbering, seed: Option<u64>) -> Result<Self, GraphError> {
        let n = edges.node_count();
        let mut neighbours: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for &(u, v) in edges.edges() {
            neighbours[u].push(v);
            neighbours[v].push(u);
        }
        match numbering {
            Numbering::Input => {}
            Numbering::Sorted => neighbours.iter_mut().for_each(|ns| ns.sort_unstable()),
            Numbering::Random => {
                let seed = seed.ok_or(GraphError::MissingSeed)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for ns in &mut neighbours {
                    ns.sort_unstable();
                    ns.shuffle(&mut rng);
                }
            }
        }
        Ok(Self::from_neighbour_lists(&neighbours))
    }

    /// Port `j` of `v` leads to `neighbours[v][j - 1]`. Assumes a simple graph.
    pub(crate) fn from_neighbour_lists(neighbours: &[Vec<NodeId>]) -> Self {
        // (edge, owner, port index); the two halves of an edge sort next to each other
        let mut halves: Vec<((NodeId, NodeId), NodeId, usize)> = neighbours
            .iter()
            .enumerate()
            .flat_map(|(v, ns)| ns.iter().enumerate().map(move |(j, &u)| ((v.min(u), v.max(u)), v, j)))
            .collect();
        halves.sort_unstable();
        let mut ports: Vec<Vec<Endpoint>> =
            neighbours.iter().map(|ns| vec![Endpoint { node: 0, port: Port(1) }; ns.len()]).collect();
        for pair in halves.chunks(2) {
            let [(edge, v, j), (edge2, u, k)] = pair else {
                panic!("neighbour lists must be symmetric");
            };
            assert_eq!(edge, edge2, "neighbour lists must be symmetric");
            ports[*v][*j] = Endpoint { node: *u, port: Port::from_index(*k) };
            ports[*u][*k] = Endpoint { node: *v, port: Port::from_index(*j) };
        }
        PortGraph { ports }
    }

    pub fn node_count(&self) -> usize {
        self.ports.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ports.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.ports[v].len()
    }

    /// Δ, the maximum degree (0 for graphs without edges).
    pub fn max_degree(&self) -> usize {
        self.ports.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn endpoint(&self, v: NodeId, port: Port) -> Endpoint {
        self.ports[v][port.index()]
    }

    pub fn try_endpoint(&self, v: NodeId, port: Port) -> Option<Endpoint> {
        self.ports.get(v)?.get(port.index()).copied()
    }

    pub fn ports(&self, v: NodeId) -> &[Endpoint] {
        &self.ports[v]
    }

    pub fn neighbours(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.ports[v].iter().map(|e| e.node)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.ports[u].iter().any(|e| e.node == v)
    }

    /// Undirected edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<_> = self
            .ports
            .iter()
            .enumerate()
            .flat_map(|(v, ps)| ps.iter().filter(move |e| v < e.node).map(move |e| (v, e.node)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.ports.iter().map(Vec::len).collect()
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList::new(self.node_count(), self.edges()).expect("a valid port graph is simple")
    }

    /// Lists every broken invariant; empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.node_count();
        let mut violations = Vec::new();
        for (v, ps) in self.ports.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for (j, e) in ps.iter().enumerate() {
                let port = Port::from_index(j);
                if e.node >= n {
                    violations.push(Violation::NodeOutOfRange { node: v, port, target: e.node });
                    continue;
                }
                if e.node == v {
                    violations.push(Violation::SelfLoop { node: v, port });
                    continue;
                }
                if !seen.insert(e.node) {
                    violations.push(Violation::ParallelEdge { node: v, port, neighbour: e.node });
                }
                match self.ports[e.node].get(e.port.index()) {
                    None => {
                        violations.push(Violation::PortGap { node: e.node, port: e.port, referenced_from: (v, port) })
                    }
                    Some(back) if back.node != v || back.port != port => {
                        violations.push(Violation::Reciprocity { node: v, port })
                    }
                    Some(_) => {}
                }
            }
        }
        violations
    }

    /// Independently reorders every node's ports with a seeded permutation.
    pub fn permute_ports(&self, seed: u64) -> PortGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let neighbours: Vec<Vec<NodeId>> = self
            .ports
            .iter()
            .map(|ps| {
                let mut ns: Vec<NodeId> = ps.iter().map(|e| e.node).collect();
                ns.shuffle(&mut rng);
                ns
            })
            .collect();
        Self::from_neighbour_lists(&neighbours)
    }

    /// Renames node `v` to `mapping[v]` while keeping every port table intact.
    pub fn relabel(&self, mapping: &[NodeId]) -> PortGraph {
        assert_eq!(mapping.len(), self.node_count());
        let mut ports = vec![Vec::new(); self.node_count()];
        for (v, ps) in self.ports.iter().enumerate() {
            ports[mapping[v]] = ps.iter().map(|e| Endpoint { node: mapping[e.node], port: e.port }).collect();
        }
        PortGraph { ports }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> PortGraph {
        let el = EdgeList::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        PortGraph::from_edge_list(&el, Numbering::Sorted, None).unwrap()
    }

    fn ep(node: NodeId, port: u32) -> Endpoint {
        Endpoint { node, port: Port::new(port) }
    }

    #[test]
    fn single_isolated_node() {
        let g = PortGraph::from_edge_list(&EdgeList::new(1, vec![]).unwrap(), Numbering::Sorted, None).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.max_degree(), 0);
    }

    #[test]
    fn single_edge_is_forced() {
        let el = EdgeList::new(2, vec![(0, 1)]).unwrap();
        let g = PortGraph::from_edge_list(&el, Numbering::Sorted, None).unwrap();
        assert_eq!(g.endpoint(0, Port::new(1)), ep(1, 1));
        assert_eq!(g.endpoint(1, Port::new(1)), ep(0, 1));
    }

    #[test]
    fn sorted_cycle_ports() {
        let g = cycle4();
        assert!(g.validate().is_empty());
        assert!(g.degree_sequence().iter().all(|&d| d == 2));
        assert_eq!(g.endpoint(1, Port::new(1)).node, 0);
        assert_eq!(g.endpoint(1, Port::new(2)).node, 2);
        // node 0: port 1 -> 1, port 2 -> 3; node 3: port 1 -> 0
        assert_eq!(g.endpoint(0, Port::new(2)), ep(3, 1));
    }

    #[test]
    fn input_numbering_follows_first_appearance() {
        let el = EdgeList::new(4, vec![(0, 3), (0, 1), (2, 0)]).unwrap();
        let g = PortGraph::from_edge_list(&el, Numbering::Input, None).unwrap();
        let order: Vec<_> = g.neighbours(0).collect();
        assert_eq!(order, vec![3, 1, 2]);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn random_numbering_needs_seed() {
        let el = EdgeList::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(PortGraph::from_edge_list(&el, Numbering::Random, None), Err(GraphError::MissingSeed));
        let a = PortGraph::from_edge_list(&el, Numbering::Random, Some(3)).unwrap();
        assert!(a.validate().is_empty());
    }

    #[test]
    fn reciprocity_violation_is_reported() {
        // ports[0][1] = (1,1) but ports[1][1] = (2,1)
        let g = PortGraph::from_ports_unchecked(vec![vec![ep(1, 1)], vec![ep(2, 1)], vec![ep(1, 1)]]);
        let v = g.validate();
        assert!(v.contains(&Violation::Reciprocity { node: 0, port: Port::new(1) }), "{v:?}");
    }

    #[test]
    fn port_gap_is_reported() {
        // node 1 has ports 1,2 but node 2's edge claims to land on port 3 of node 1
        let g = PortGraph::from_ports_unchecked(vec![vec![ep(1, 1)], vec![ep(0, 1), ep(2, 1)], vec![ep(1, 3)]]);
        let v = g.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::PortGap { node: 1, port, .. } if port.get() == 3)));
    }

    #[test]
    fn self_loops_and_parallel_edges_are_reported() {
        let g = PortGraph::from_ports_unchecked(vec![vec![ep(0, 1)]]);
        assert!(matches!(g.validate()[0], Violation::SelfLoop { node: 0, .. }));

        let g = PortGraph::from_ports_unchecked(vec![vec![ep(1, 1), ep(1, 2)], vec![ep(0, 1), ep(0, 2)]]);
        assert!(g.validate().iter().any(|x| matches!(x, Violation::ParallelEdge { .. })));
        assert!(PortGraph::new(g.ports.clone()).is_err());
    }

    #[test]
    fn permute_k2_is_identity() {
        let el = EdgeList::new(2, vec![(0, 1)]).unwrap();
        let g = PortGraph::from_edge_list(&el, Numbering::Sorted, None).unwrap();
        for seed in 0..10 {
            assert_eq!(g.permute_ports(seed), g);
        }
    }

    #[test]
    fn permuted_star_is_valid() {
        let el = generate::generate(generate::GraphKind::Star { leaves: 3 }).unwrap();
        let g = PortGraph::from_edge_list(&el, Numbering::Sorted, None).unwrap();
        let orders: BTreeSet<Vec<NodeId>> = (0..20)
            .map(|s| {
                let h = g.permute_ports(s);
                assert!(h.validate().is_empty());
                assert_eq!(h.edges(), g.edges());
                h.neighbours(0).collect()
            })
            .collect();
        assert!(orders.len() > 1);
    }

    #[test]
    fn relabel_keeps_port_structure() {
        let g = cycle4();
        let h = g.relabel(&[2, 0, 3, 1]);
        assert!(h.validate().is_empty());
        assert_eq!(h.endpoint(2, Port::new(1)), ep(0, 1));
    }
}
