use std::fmt::Write as _;

use crate::algorithm::{MessageKind, NodeState};
use crate::graph::format::ParseError;
use crate::graph::{NodeId, Port};

/// One sent message.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TranscriptEntry {
    pub step: u32,
    pub sender: NodeId,
    /// The sender's port.
    pub port: Port,
    pub kind: MessageKind,
}

/// Every message of a run, in `(step, sender, port)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
    /// Empty when the transcript was read back from text.
    pub final_states: Vec<NodeState>,
    /// Largest step at which anything was sent, 0 if nothing was.
    pub last_active_step: u32,
}

impl Transcript {
    pub fn from_entries(mut entries: Vec<TranscriptEntry>) -> Self {
        entries.sort_unstable();
        let last_active_step = entries.iter().map(|e| e.step).max().unwrap_or(0);
        Transcript { entries, final_states: Vec::new(), last_active_step }
    }

    pub fn entries_at(&self, step: u32) -> impl Iterator<Item = &TranscriptEntry> {
        self.entries.iter().filter(move |e| e.step == step)
    }

    /// `t v port KIND` per line, sorted by `(t, v, port)`.
    pub fn to_text(&self) -> String {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        let mut out = String::new();
        for e in sorted {
            writeln!(out, "{} {} {} {}", e.step, e.sender, e.port, e.kind).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseError { line, message };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let [t, v, port, kind] = toks[..] else {
                return Err(err("expected `t v port KIND`".into()));
            };
            let num = |tok: &str| tok.parse::<u64>().map_err(|_| err(format!("not a number: {tok:?}")));
            let step = num(t)?;
            let port = num(port)?;
            if step == 0 || step > u32::MAX as u64 {
                return Err(err(format!("time step {step} out of range")));
            }
            if port == 0 || port > u32::MAX as u64 {
                return Err(err(format!("port {port} out of range")));
            }
            entries.push(TranscriptEntry {
                step: step as u32,
                sender: num(v)? as NodeId,
                port: Port::new(port as u32),
                kind: kind.parse().map_err(err)?,
            });
        }
        Ok(Self::from_entries(entries))
    }
}
