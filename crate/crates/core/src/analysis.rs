//! Checks that turn a single run into a certified approximation bound.
//!
//! The pair edges P of a run form a graph of maximum degree 2 whose
//! non-isolated nodes are exactly the cover C. Each of its components is a
//! path or a cycle; cycles are opened into paths by dropping one edge. A
//! path with `m` edges needs `ceil(m / 2)` cover nodes in any vertex cover,
//! and the paths are vertex-disjoint, so the sum is a lower bound on the
//! optimum that can be computed without solving anything.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{NodeId, PortGraph};
use crate::ratio::ExactRatio;
use crate::simulator::CoverResult;

/// A structural claim about a run failed. None of these occur for runs of
/// the algorithm on valid graphs; seeing one means a bug somewhere.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisFault {
    #[error("pair edge {{{0}, {1}}} is not an edge of the graph")]
    PairEdgeNotInGraph(NodeId, NodeId),
    #[error("node {node} has degree {degree} in the pair graph")]
    DegreeAboveTwo { node: NodeId, degree: usize },
    #[error("node {node}: in cover = {in_cover}, but isolated in the pair graph = {isolated}")]
    CoverMismatch { node: NodeId, in_cover: bool, isolated: bool },
    #[error("component containing {node} is neither a path nor a cycle ({nodes} nodes, {edges} edges)")]
    NotPathOrCycle { node: NodeId, nodes: usize, edges: usize },
    #[error("components cover {covered} nodes, cover has {cover_size}")]
    NotAPartition { covered: usize, cover_size: usize },
    #[error("lower bound is 0 but the cover has {0} nodes")]
    ZeroBound(usize),
    #[error("{{{0}, {1}}} is not an edge of this cycle")]
    NotACycleEdge(NodeId, NodeId),
    #[error("node {0} is matched twice in the double cover")]
    NotAMatching(NodeId),
    #[error("double-cover edge {{{0}, {1}}} has no matched endpoint")]
    NotMaximal(NodeId, NodeId),
    #[error("matched pair {{{0}, {1}}} is not an edge of the double cover")]
    MatchingEdgeNotInDoubleCover(NodeId, NodeId),
    #[error("transcript does not fit the graph: {0}")]
    BadTranscript(String),
}

pub fn check_cover(g: &PortGraph, cover: &BTreeSet<NodeId>) -> bool {
    g.edges().iter().all(|(u, v)| cover.contains(u) || cover.contains(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Walk order. Paths start at their smaller endpoint; cycles start at
    /// their smallest node and continue towards its smaller neighbour.
    pub nodes: Vec<NodeId>,
}

impl Component {
    pub fn edge_count(&self) -> usize {
        match self.kind {
            ComponentKind::Path => self.nodes.len() - 1,
            ComponentKind::Cycle => self.nodes.len(),
        }
    }

    /// Edges as `(min, max)` pairs in walk order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let k = self.nodes.len();
        (0..self.edge_count())
            .map(|i| {
                let (u, v) = (self.nodes[i], self.nodes[(i + 1) % k]);
                (u.min(v), u.max(v))
            })
            .collect()
    }

    /// The path left after deleting `edge` from a cycle. A path is returned
    /// unchanged when `edge` is `None`.
    pub fn open_at(&self, edge: Option<(NodeId, NodeId)>) -> Result<Vec<NodeId>, AnalysisFault> {
        let Some((x, y)) = edge else {
            return match self.kind {
                ComponentKind::Path => Ok(self.nodes.clone()),
                ComponentKind::Cycle => Err(AnalysisFault::NotACycleEdge(0, 0)),
            };
        };
        let edge = (x.min(y), x.max(y));
        let pos = self
            .edges()
            .iter()
            .position(|&e| e == edge)
            .filter(|_| self.kind == ComponentKind::Cycle)
            .ok_or(AnalysisFault::NotACycleEdge(x, y))?;
        let k = self.nodes.len();
        Ok((1..=k).map(|s| self.nodes[(pos + s) % k]).collect())
    }
}

/// `ceil(m / 2)`: the fewest nodes that cover a path with `m` edges.
pub fn path_lower_bound(edges: usize) -> usize {
    edges.div_ceil(2)
}

/// The graph (V, P) together with its decomposition into paths and cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGraph {
    pub node_count: usize,
    pub edges: BTreeSet<(NodeId, NodeId)>,
    /// Degree of every node of V in (V, P).
    pub degrees: Vec<usize>,
    pub non_isolated: BTreeSet<NodeId>,
    /// Components of (C, P); isolated nodes are dropped.
    pub components: Vec<Component>,
}

impl PairGraph {
    /// Decomposes an edge set of maximum degree 2 into paths and cycles.
    pub fn decompose(node_count: usize, edges: BTreeSet<(NodeId, NodeId)>) -> Result<Self, AnalysisFault> {
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
        if let Some((node, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d > 2) {
            return Err(AnalysisFault::DegreeAboveTwo { node, degree });
        }
        let non_isolated: BTreeSet<NodeId> = (0..node_count).filter(|&v| degrees[v] > 0).collect();

        let mut seen = vec![false; node_count];
        let mut components = Vec::new();
        for &start in &non_isolated {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < members.len() {
                for &u in &adj[members[i]] {
                    if !seen[u] {
                        seen[u] = true;
                        members.push(u);
                    }
                }
                i += 1;
            }
            let nodes = members.len();
            let edge_count = members.iter().map(|&v| degrees[v]).sum::<usize>() / 2;
            let kind = if edge_count + 1 == nodes {
                ComponentKind::Path
            } else if edge_count == nodes && nodes >= 3 {
                ComponentKind::Cycle
            } else {
                return Err(AnalysisFault::NotPathOrCycle { node: start, nodes, edges: edge_count });
            };
            let first = match kind {
                ComponentKind::Path => *members.iter().filter(|&&v| degrees[v] == 1).min().unwrap(),
                ComponentKind::Cycle => *members.iter().min().unwrap(),
            };
            let mut walk = vec![first];
            let mut prev = usize::MAX;
            let mut cur = first;
            while walk.len() < nodes {
                let next = adj[cur].iter().copied().filter(|&u| u != prev).min().unwrap();
                walk.push(next);
                prev = cur;
                cur = next;
            }
            components.push(Component { kind, nodes: walk });
        }
        Ok(PairGraph { node_count, edges, degrees, non_isolated, components })
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Builds (V, P) and (C, P) for a run and checks every structural claim
/// about them: P ⊆ E, degrees at most 2, non-isolated nodes equal to C,
/// components that are paths or cycles and together partition C.
pub fn build_pair_graphs(g: &PortGraph, result: &CoverResult) -> Result<PairGraph, AnalysisFault> {
    for &(u, v) in &result.pair_edges {
        if !g.has_edge(u, v) {
            return Err(AnalysisFault::PairEdgeNotInGraph(u, v));
        }
    }
    let pg = PairGraph::decompose(g.node_count(), result.pair_edges.clone())?;
    if let Some(&node) = pg.non_isolated.symmetric_difference(&result.cover).next() {
        return Err(AnalysisFault::CoverMismatch {
            node,
            in_cover: result.cover.contains(&node),
            isolated: !pg.non_isolated.contains(&node),
        });
    }
    let mut covered = BTreeSet::new();
    let mut total = 0;
    for c in &pg.components {
        total += c.nodes.len();
        covered.extend(c.nodes.iter().copied());
    }
    if total != result.cover_size() || covered != result.cover {
        return Err(AnalysisFault::NotAPartition { covered: total, cover_size: result.cover_size() });
    }
    Ok(pg)
}

/// Lower-bound contribution of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBound {
    /// The path the bound is computed on.
    pub path: Vec<NodeId>,
    /// For cycles: the deleted edge, the lexicographically smallest one.
    pub removed_edge: Option<(NodeId, NodeId)>,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lower_bound: usize,
    pub cover_size: usize,
    /// `cover_size / lower_bound`.
    pub ratio: ExactRatio,
    pub parts: Vec<ComponentBound>,
}

/// Sums `ceil(m / 2)` over the paths of the decomposition. Returns `None`
/// for an empty cover, where the ratio is undefined.
pub fn certify(pg: &PairGraph, cover_size: usize) -> Result<Option<Certificate>, AnalysisFault> {
    let mut parts = Vec::with_capacity(pg.components.len());
    for c in &pg.components {
        let removed_edge = match c.kind {
            ComponentKind::Path => None,
            ComponentKind::Cycle => c.edges().into_iter().min(),
        };
        let path = c.open_at(removed_edge)?;
        let bound = path_lower_bound(path.len() - 1);
        parts.push(ComponentBound { path, removed_edge, bound });
    }
    let lower_bound: usize = parts.iter().map(|p| p.bound).sum();
    match (lower_bound, cover_size) {
        (0, 0) => Ok(None),
        (0, n) => Err(AnalysisFault::ZeroBound(n)),
        (lb, n) => Ok(Some(Certificate {
            lower_bound: lb,
            cover_size: n,
            ratio: ExactRatio::new(n as u64, lb as u64).expect("nonzero bound"),
            parts,
        })),
    }
}
