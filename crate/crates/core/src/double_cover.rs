//! The bipartite double cover view of a run.
//!
//! Every node `v` is split into a black copy `B(v) = v` and a white copy
//! `W(v) = v + n`; an edge `{u, v}` of G becomes the two edges
//! `{B(u), W(v)}` and `{B(v), W(u)}`. A proposal from `u` accepted by `v`
//! matches `B(u)` with `W(v)`, and the accepted proposals of a run form a
//! maximal matching of this graph.

use std::collections::BTreeSet;

use crate::algorithm::MessageKind;
use crate::analysis::AnalysisFault;
use crate::graph::{NodeId, PortGraph};
use crate::simulator::Transcript;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colour {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    base_nodes: usize,
    colour: Vec<Colour>,
    adjacency: Vec<Vec<NodeId>>,
    /// `(black, white)` pairs.
    edges: Vec<(NodeId, NodeId)>,
    /// `(black, white)` pairs.
    matching: BTreeSet<(NodeId, NodeId)>,
}

impl DoubleCover {
    pub fn build(g: &PortGraph) -> Self {
        let n = g.node_count();
        let mut colour = vec![Colour::Black; n];
        colour.resize(2 * n, Colour::White);
        let mut adjacency = vec![Vec::new(); 2 * n];
        let mut edges = Vec::with_capacity(2 * g.edge_count());
        for (u, v) in g.edges() {
            for (x, y) in [(u, v), (v, u)] {
                let (b, w) = (x, y + n);
                adjacency[b].push(w);
                adjacency[w].push(b);
                edges.push((b, w));
            }
        }
        edges.sort_unstable();
        DoubleCover { base_nodes: n, colour, adjacency, edges, matching: BTreeSet::new() }
    }

    pub fn black(&self, v: NodeId) -> NodeId {
        v
    }

    pub fn white(&self, v: NodeId) -> NodeId {
        v + self.base_nodes
    }

    /// The node of G a copy stands for.
    pub fn base(&self, x: NodeId) -> NodeId {
        x % self.base_nodes
    }

    pub fn node_count(&self) -> usize {
        self.colour.len()
    }

    pub fn colour(&self, x: NodeId) -> Colour {
        self.colour[x]
    }

    pub fn neighbours(&self, x: NodeId) -> &[NodeId] {
        &self.adjacency[x]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn matching(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.matching
    }

    /// Fills in M from the accepted proposals of `transcript` (a run on
    /// `g`), then checks that M is a maximal matching of this graph.
    pub fn extract_matching(mut self, g: &PortGraph, transcript: &Transcript) -> Result<Self, AnalysisFault> {
        let mut matching = BTreeSet::new();
        for e in transcript.entries.iter().filter(|e| e.kind == MessageKind::Accept) {
            let proposer = g
                .try_endpoint(e.sender, e.port)
                .ok_or_else(|| AnalysisFault::BadTranscript(format!("ACCEPT from ({}, {})", e.sender, e.port)))?
                .node;
            matching.insert((self.black(proposer), self.white(e.sender)));
        }
        self.matching = matching;
        self.verify_matching()?;
        Ok(self)
    }

    /// M ⊆ H, no copy matched twice, and every edge of H touches M.
    pub fn verify_matching(&self) -> Result<(), AnalysisFault> {
        let mut matched = vec![false; self.node_count()];
        for &(b, w) in &self.matching {
            if self.edges.binary_search(&(b, w)).is_err() {
                return Err(AnalysisFault::MatchingEdgeNotInDoubleCover(b, w));
            }
            for x in [b, w] {
                if std::mem::replace(&mut matched[x], true) {
                    return Err(AnalysisFault::NotAMatching(x));
                }
            }
        }
        if let Some(&(b, w)) = self.edges.iter().find(|&&(b, w)| !matched[b] && !matched[w]) {
            return Err(AnalysisFault::NotMaximal(b, w));
        }
        Ok(())
    }

    /// Nodes of G with at least one matched copy.
    pub fn project_cover(&self) -> BTreeSet<NodeId> {
        self.matching.iter().flat_map(|&(b, w)| [self.base(b), self.base(w)]).collect()
    }

    /// M mapped back onto G as `(min, max)` edges.
    pub fn project_edges(&self) -> BTreeSet<(NodeId, NodeId)> {
        self.matching
            .iter()
            .map(|&(b, w)| {
                let (u, v) = (self.base(b), self.base(w));
                (u.min(v), u.max(v))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, GraphKind};
    use crate::graph::Numbering;
    use crate::simulator::run;

    fn sorted(kind: GraphKind) -> PortGraph {
        PortGraph::from_edge_list(&generate(kind).unwrap(), Numbering::Sorted, None).unwrap()
    }

    /// Sizes of connected components, and whether every node has degree 2.
    fn shape(h: &DoubleCover) -> (Vec<usize>, bool) {
        let mut seen = vec![false; h.node_count()];
        let mut sizes = Vec::new();
        for s in 0..h.node_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(x) = stack.pop() {
                size += 1;
                for &y in h.neighbours(x) {
                    assert_ne!(h.colour(x), h.colour(y));
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        (sizes, (0..h.node_count()).all(|x| h.neighbours(x).len() == 2))
    }

    #[test]
    fn k2_double_cover_is_two_edges() {
        let h = DoubleCover::build(&sorted(GraphKind::Path { n: 2 }));
        assert_eq!(h.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(shape(&h).0, vec![2, 2]);
    }

    #[test]
    fn triangle_double_cover_is_a_hexagon() {
        let h = DoubleCover::build(&sorted(GraphKind::Cycle { n: 3 }));
        assert_eq!(shape(&h), (vec![6], true));
        assert_eq!(h.edges().len(), 6);
    }

    #[test]
    fn square_double_cover_is_two_squares() {
        let h = DoubleCover::build(&sorted(GraphKind::Cycle { n: 4 }));
        assert_eq!(shape(&h), (vec![4, 4], true));
    }

    #[test]
    fn k2_matching() {
        let g = sorted(GraphKind::Path { n: 2 });
        let (r, t) = run(&g).unwrap();
        let h = DoubleCover::build(&g).extract_matching(&g, &t).unwrap();
        assert_eq!(h.matching(), &BTreeSet::from([(0, 3), (1, 2)]));
        assert_eq!(h.project_cover(), r.cover);
    }

    #[test]
    fn star_matching() {
        let g = sorted(GraphKind::Star { leaves: 3 });
        let (r, t) = run(&g).unwrap();
        let h = DoubleCover::build(&g).extract_matching(&g, &t).unwrap();
        // {B(leaf1), W(centre)} and {B(centre), W(leaf1)}
        assert_eq!(h.matching(), &BTreeSet::from([(h.black(0), h.white(1)), (h.black(1), h.white(0))]));
        assert_eq!(h.project_cover(), BTreeSet::from([0, 1]));
        assert_eq!(h.project_edges(), r.pair_edges);
    }

    #[test]
    fn empty_graph_matching() {
        let g = PortGraph::empty(3);
        let (_, t) = run(&g).unwrap();
        let h = DoubleCover::build(&g).extract_matching(&g, &t).unwrap();
        assert!(h.matching().is_empty());
        assert!(h.project_cover().is_empty());
    }

    #[test]
    fn broken_matchings_are_rejected() {
        let g = sorted(GraphKind::Path { n: 3 });
        let mut h = DoubleCover::build(&g);
        assert_eq!(h.verify_matching(), Err(AnalysisFault::NotMaximal(0, 4)));
        h.matching = BTreeSet::from([(0, 4), (2, 4)]);
        assert_eq!(h.verify_matching(), Err(AnalysisFault::NotAMatching(4)));
        h.matching = BTreeSet::from([(0, 5)]);
        assert_eq!(h.verify_matching(), Err(AnalysisFault::MatchingEdgeNotInDoubleCover(0, 5)));
    }
}
