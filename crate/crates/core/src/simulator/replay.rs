use std::collections::BTreeMap;
use std::fmt;

use super::{horizon, transition, Transcript, TranscriptEntry};
use crate::algorithm::{FaultMode, MessageKind, NodeState, PortMessage};
use crate::graph::{NodeId, Port, PortGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divergence {
    /// The transitions send something different through `(node, port)` at
    /// `step` than the transcript records.
    Entry {
        step: u32,
        node: NodeId,
        port: Port,
        expected: Option<MessageKind>,
        found: Option<MessageKind>,
    },
    /// An entry that cannot belong to any run on this graph.
    Invalid {
        entry: TranscriptEntry,
        reason: &'static str,
    },
    /// Replaying the recorded messages drove a node into a protocol fault.
    Fault {
        step: u32,
        node: NodeId,
        message: String,
    },
    FinalState {
        node: NodeId,
    },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |k: &Option<MessageKind>| k.map_or("nothing", |k| k.as_str());
        match self {
            Divergence::Entry { step, node, port, expected, found } => write!(
                f,
                "step {step}, node {node}, port {port}: expected {}, transcript has {}",
                kind(expected),
                kind(found)
            ),
            Divergence::Invalid { entry, reason } => {
                write!(f, "entry `{} {} {} {}`: {reason}", entry.step, entry.sender, entry.port, entry.kind)
            }
            Divergence::Fault { step, node, message } => write!(f, "step {step}, node {node}: {message}"),
            Divergence::FinalState { node } => write!(f, "final state of node {node} differs"),
        }
    }
}

/// Checks a transcript against the transition functions.
///
/// Each step is recomputed from the messages the transcript says were
/// delivered, so a corrupted entry shows up at the step where it occurs
/// (and wherever its consequences surface later). A genuine transcript
/// yields no divergences.
pub fn replay(g: &PortGraph, transcript: &Transcript) -> Vec<Divergence> {
    let n = g.node_count();
    let h = horizon(g);
    let mut out = Vec::new();

    let mut recorded: BTreeMap<u32, BTreeMap<(NodeId, Port), MessageKind>> = BTreeMap::new();
    for &e in &transcript.entries {
        let reason = if e.sender >= n || e.port.get() as usize > g.degree(e.sender) {
            Some("no such port")
        } else if e.step > h {
            Some("sent after the horizon 2Δ+1")
        } else if recorded.get(&e.step).is_some_and(|m| m.contains_key(&(e.sender, e.port))) {
            Some("second message through the same port in one step")
        } else {
            None
        };
        match reason {
            Some(reason) => out.push(Divergence::Invalid { entry: e, reason }),
            None => {
                recorded.entry(e.step).or_default().insert((e.sender, e.port), e.kind);
            }
        }
    }

    let empty = BTreeMap::new();
    let mut states: Vec<NodeState> = (0..n).map(|v| NodeState::new(g.degree(v))).collect();
    for t in 1..=h {
        let mut inboxes: Vec<Vec<PortMessage>> = vec![Vec::new(); n];
        for (&(v, port), &kind) in recorded.get(&(t - 1)).unwrap_or(&empty) {
            let to = g.endpoint(v, port);
            inboxes[to.node].push((to.port, kind));
        }

        let mut derived = BTreeMap::new();
        for v in 0..n {
            let (next, sent) = match transition(t, v, states[v], &inboxes[v], FaultMode::Strict) {
                Ok(r) => r,
                Err(e) => {
                    out.push(Divergence::Fault { step: t, node: v, message: e.to_string() });
                    transition(t, v, states[v], &inboxes[v], FaultMode::Lenient)
                        .expect("lenient transitions do not fail")
                }
            };
            states[v] = next;
            derived.extend(sent.into_iter().map(|(port, kind)| ((v, port), kind)));
        }

        let found = recorded.get(&t).unwrap_or(&empty);
        let mut keys: Vec<_> = derived.keys().chain(found.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for (node, port) in keys {
            let expected = derived.get(&(node, port)).copied();
            let actual = found.get(&(node, port)).copied();
            if expected != actual {
                out.push(Divergence::Entry { step: t, node, port, expected, found: actual });
            }
        }
    }

    if !transcript.final_states.is_empty() {
        for (v, state) in states.iter().enumerate() {
            if transcript.final_states.get(v) != Some(state) {
                out.push(Divergence::FinalState { node: v });
            }
        }
    }
    out
}
