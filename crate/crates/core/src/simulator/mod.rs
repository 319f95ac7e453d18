//! Synchronous engine for the anonymous port-numbering model.
//!
//! Time steps are numbered from 1; odd steps run [`odd_step`], even steps
//! run [`even_step`]. A message sent through port `j` of `v` at step `t` is
//! delivered at step `t + 1` to the neighbour behind that port, tagged with
//! the receiver's own port number. All sends of a step are collected before
//! any of them is delivered, so node order within a step does not matter.

mod replay;
mod transcript;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algorithm::{even_step, odd_step, FaultMode, NodeState, PortMessage, ProtocolFault};
use crate::graph::{NodeId, Port, PortGraph};

pub use replay::{replay, Divergence};
pub use transcript::{Transcript, TranscriptEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("protocol fault at node {node}, step {step}: {fault}")]
    Protocol { node: NodeId, step: u32, fault: ProtocolFault },
    #[error("node {node} received {count} messages at odd step {step}")]
    OddStepOverflow { node: NodeId, step: u32, count: usize },
    #[error("node {node} has a = {port} towards {partner}, but b({partner}) does not lead back")]
    PairAsymmetry { node: NodeId, port: Port, partner: NodeId },
}

/// What the algorithm computed on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    /// C: nodes with c(v) = true.
    pub cover: BTreeSet<NodeId>,
    /// P: edges `(min, max)` joining a node to the neighbour that accepted it.
    pub pair_edges: BTreeSet<(NodeId, NodeId)>,
    pub rounds_run: u32,
    pub last_active_step: u32,
}

impl CoverResult {
    pub fn cover_size(&self) -> usize {
        self.cover.len()
    }
}

/// Number of steps after which no node sends anything: `2Δ + 1`, so 1 without edges.
pub fn horizon(g: &PortGraph) -> u32 {
    2 * g.max_degree() as u32 + 1
}

pub struct Simulator<'g> {
    graph: &'g PortGraph,
    mode: FaultMode,
    states: Vec<NodeState>,
    step: u32,
    /// Sent during the current step, delivered at the next one.
    in_flight: Vec<TranscriptEntry>,
    entries: Vec<TranscriptEntry>,
}

impl<'g> Simulator<'g> {
    pub fn new(graph: &'g PortGraph) -> Self {
        Self::with_mode(graph, FaultMode::Strict)
    }

    pub fn with_mode(graph: &'g PortGraph, mode: FaultMode) -> Self {
        Simulator {
            graph,
            mode,
            states: (0..graph.node_count()).map(|v| NodeState::new(graph.degree(v))).collect(),
            step: 0,
            in_flight: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn states(&self) -> &[NodeState] {
        &self.states
    }

    /// The last completed step (0 before the first).
    pub fn current_step(&self) -> u32 {
        self.step
    }

    /// Runs one time step and returns how many messages it sent.
    pub fn step(&mut self) -> Result<usize, SimError> {
        self.step += 1;
        let t = self.step;
        let mut deliveries: Vec<(NodeId, PortMessage)> = self
            .in_flight
            .drain(..)
            .map(|e| {
                let to = self.graph.endpoint(e.sender, e.port);
                (to.node, (to.port, e.kind))
            })
            .collect();
        deliveries.sort_unstable();

        let mut sent = Vec::new();
        let mut cursor = 0;
        for v in 0..self.states.len() {
            let start = cursor;
            while cursor < deliveries.len() && deliveries[cursor].0 == v {
                cursor += 1;
            }
            let inbox: Vec<PortMessage> = deliveries[start..cursor].iter().map(|d| d.1).collect();
            let (next, out) = transition(t, v, self.states[v], &inbox, self.mode)?;
            self.states[v] = next;
            sent.extend(out.into_iter().map(|(port, kind)| TranscriptEntry { step: t, sender: v, port, kind }));
        }
        let count = sent.len();
        self.entries.extend_from_slice(&sent);
        self.in_flight = sent;
        Ok(count)
    }

    /// Steps until the horizon `2Δ + 1` has been reached.
    pub fn run_to_horizon(&mut self) -> Result<(), SimError> {
        let h = horizon(self.graph);
        while self.step < h {
            self.step()?;
        }
        Ok(())
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            entries: self.entries.clone(),
            final_states: self.states.clone(),
            last_active_step: self.entries.last().map_or(0, |e| e.step),
        }
    }

    /// Reads C and P off the current states. Every `a` pointer must be
    /// matched by a `b` pointer coming back; anything else is an error.
    pub fn cover_result(&self) -> Result<CoverResult, SimError> {
        let g = self.graph;
        let cover = (0..g.node_count()).filter(|&v| self.states[v].c).collect();
        let mut pair_edges = BTreeSet::new();
        for (v, s) in self.states.iter().enumerate() {
            let Some(port) = s.a else { continue };
            let u = g.endpoint(v, port).node;
            let back = self.states[u].b.map(|b| g.endpoint(u, b).node);
            if back != Some(v) {
                return Err(SimError::PairAsymmetry { node: v, port, partner: u });
            }
            pair_edges.insert((u.min(v), u.max(v)));
        }
        Ok(CoverResult {
            cover,
            pair_edges,
            rounds_run: self.step,
            last_active_step: self.entries.last().map_or(0, |e| e.step),
        })
    }
}

/// One node's transition at step `t`, given everything delivered to it.
pub(crate) fn transition(
    t: u32,
    v: NodeId,
    state: NodeState,
    inbox: &[PortMessage],
    mode: FaultMode,
) -> Result<(NodeState, Vec<PortMessage>), SimError> {
    let fault = |fault| SimError::Protocol { node: v, step: t, fault };
    if t.is_multiple_of(2) {
        return even_step(state, inbox, mode).map_err(fault);
    }
    let message = match (inbox.len(), mode) {
        (0, _) => None,
        (1, _) => Some(inbox[0]),
        (count, FaultMode::Strict) => return Err(SimError::OddStepOverflow { node: v, step: t, count }),
        (_, FaultMode::Lenient) => inbox.iter().copied().find(|m| Some(m.0) == state.awaiting()),
    };
    let (next, out) = odd_step(state, message, mode).map_err(fault)?;
    Ok((next, out.into_iter().collect()))
}

/// Runs the algorithm for `2Δ + 1` steps with strict fault handling.
pub fn run(g: &PortGraph) -> Result<(CoverResult, Transcript), SimError> {
    run_with_mode(g, FaultMode::Strict)
}

pub fn run_with_mode(g: &PortGraph, mode: FaultMode) -> Result<(CoverResult, Transcript), SimError> {
    let mut sim = Simulator::with_mode(g, mode);
    sim.run_to_horizon()?;
    Ok((sim.cover_result()?, sim.transcript()))
}
