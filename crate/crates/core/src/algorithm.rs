//! Per-node transitions of the local vertex cover algorithm.
//!
//! A node only ever sees its own state, its degree and the messages that
//! arrived on its ports. Odd steps walk through the ports one at a time,
//! proposing to each neighbour until some proposal is accepted. Even steps
//! answer incoming proposals: the first one (lowest port) is accepted unless
//! an earlier one already was, everything else is rejected.

use std::fmt;

use thiserror::Error;

use crate::graph::Port;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageKind {
    Propose,
    Accept,
    Reject,
}

impl MessageKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MessageKind::Propose => "PROPOSE",
            MessageKind::Accept => "ACCEPT",
            MessageKind::Reject => "REJECT",
        }
    }
}

impl fmt::Display for MessageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MessageKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PROPOSE" => Ok(MessageKind::Propose),
            "ACCEPT" => Ok(MessageKind::Accept),
            "REJECT" => Ok(MessageKind::Reject),
            other => Err(format!("unknown message kind {other:?}")),
        }
    }
}

/// A message as seen by one node: the local port it travels through.
pub type PortMessage = (Port, MessageKind);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeState {
    /// Port whose neighbour accepted our proposal.
    pub a: Option<Port>,
    /// Port whose proposal we accepted.
    pub b: Option<Port>,
    /// Proposal scan position, `0..=degree + 1`.
    pub i: u32,
    /// Cover membership.
    pub c: bool,
    pub degree: u32,
}

impl NodeState {
    pub fn new(degree: usize) -> Self {
        NodeState { a: None, b: None, i: 0, c: false, degree: degree as u32 }
    }

    /// The port on which a response to our last proposal is due, if any.
    pub fn awaiting(&self) -> Option<Port> {
        (self.a.is_none() && 1 <= self.i && self.i <= self.degree).then(|| Port::new(self.i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FaultMode {
    /// Unexpected deliveries are errors.
    #[default]
    Strict,
    /// Unexpected deliveries are dropped.
    Lenient,
}

/// A delivery that correct scheduling can never produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProtocolFault {
    #[error("{kind} on port {port} at an odd step, no response was due there")]
    UnexpectedResponse { port: Port, kind: MessageKind },
    #[error("PROPOSE on port {port} at an odd step")]
    ProposeAtOddStep { port: Port },
    #[error("{kind} on port {port} at an even step")]
    ResponseAtEvenStep { port: Port, kind: MessageKind },
    #[error("two messages on port {port} in one step")]
    DuplicatePort { port: Port },
    #[error("port {port} exceeds degree {degree}")]
    PortOutOfRange { port: Port, degree: u32 },
}

/// One odd time step: read the pending response, advance the scan, propose.
pub fn odd_step(
    state: NodeState,
    inbox: Option<PortMessage>,
    mode: FaultMode,
) -> Result<(NodeState, Option<PortMessage>), ProtocolFault> {
    let mut s = state;
    if let Some((port, kind)) = inbox {
        let fault = if port.get() > s.degree {
            Some(ProtocolFault::PortOutOfRange { port, degree: s.degree })
        } else if kind == MessageKind::Propose {
            Some(ProtocolFault::ProposeAtOddStep { port })
        } else if s.awaiting() != Some(port) {
            Some(ProtocolFault::UnexpectedResponse { port, kind })
        } else {
            None
        };
        match (fault, mode) {
            (Some(f), FaultMode::Strict) => return Err(f),
            (Some(_), FaultMode::Lenient) => {}
            // a REJECT is consumed without effect
            (None, _) => {
                if kind == MessageKind::Accept {
                    s.a = Some(port);
                    s.c = true;
                }
            }
        }
    }
    if s.a.is_none() && s.i <= s.degree {
        s.i += 1;
    }
    let out = (s.a.is_none() && s.i <= s.degree).then(|| (Port::new(s.i), MessageKind::Propose));
    Ok((s, out))
}

/// One even time step: answer every proposal in increasing port order.
pub fn even_step(
    state: NodeState,
    inbox: &[PortMessage],
    mode: FaultMode,
) -> Result<(NodeState, Vec<PortMessage>), ProtocolFault> {
    let mut proposals = Vec::with_capacity(inbox.len());
    for &(port, kind) in inbox {
        let fault = if port.get() > state.degree {
            Some(ProtocolFault::PortOutOfRange { port, degree: state.degree })
        } else if kind != MessageKind::Propose {
            Some(ProtocolFault::ResponseAtEvenStep { port, kind })
        } else {
            None
        };
        match (fault, mode) {
            (Some(f), FaultMode::Strict) => return Err(f),
            (Some(_), FaultMode::Lenient) => {}
            (None, _) => proposals.push(port),
        }
    }
    proposals.sort_unstable();
    if let Some(w) = proposals.windows(2).find(|w| w[0] == w[1]) {
        match mode {
            FaultMode::Strict => return Err(ProtocolFault::DuplicatePort { port: w[0] }),
            FaultMode::Lenient => proposals.dedup(),
        }
    }

    let mut s = state;
    let out = proposals
        .into_iter()
        .map(|port| {
            if s.b.is_none() {
                s.b = Some(port);
                s.c = true;
                (port, MessageKind::Accept)
            } else {
                (port, MessageKind::Reject)
            }
        })
        .collect();
    Ok((s, out))
}
