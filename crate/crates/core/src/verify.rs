//! Runs the algorithm on one graph and evaluates every named check.

use std::collections::BTreeSet;

use crate::analysis::{build_pair_graphs, certify, check_cover, Certificate, PairGraph};
use crate::double_cover::DoubleCover;
use crate::graph::{NodeId, PortGraph};
use crate::simulator::{horizon, CoverResult, SimError, Simulator, Transcript};

pub const COVER_VALID: &str = "cover-valid";
pub const PAIR_SYMMETRY: &str = "pair-symmetry";
pub const G1_MAX_DEGREE_2: &str = "g1-max-degree-2";
pub const G1_NONISOLATED_EQUALS_C: &str = "g1-nonisolated-equals-C";
pub const COMPONENTS_PATHS_OR_CYCLES: &str = "components-paths-or-cycles";
pub const CERTIFIED_RATIO_LE_3: &str = "certified-ratio-le-3";
pub const ROUND_BOUND: &str = "round-bound";
pub const DOUBLE_COVER_MAXIMAL_MATCHING: &str = "double-cover-maximal-matching";
pub const PROJECTION_EQUALS_COVER: &str = "projection-equals-cover";

pub const CHECK_NAMES: [&str; 9] = [
    COVER_VALID,
    PAIR_SYMMETRY,
    G1_MAX_DEGREE_2,
    G1_NONISOLATED_EQUALS_C,
    COMPONENTS_PATHS_OR_CYCLES,
    CERTIFIED_RATIO_LE_3,
    ROUND_BOUND,
    DOUBLE_COVER_MAXIMAL_MATCHING,
    PROJECTION_EQUALS_COVER,
];

#[derive(Clone, Debug)]
pub struct Verified {
    pub result: CoverResult,
    pub transcript: Transcript,
    pub pair_graph: Option<PairGraph>,
    /// `None` when the cover is empty or certification failed.
    pub certificate: Option<Certificate>,
    /// One entry per name in [`CHECK_NAMES`], in that order; `Err` carries
    /// the reason.
    pub checks: Vec<(&'static str, Result<(), String>)>,
}

impl Verified {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &str)> {
        self.checks.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| (*name, e.as_str())))
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().any(|(n, r)| *n == name && r.is_ok())
    }
}

fn require(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// Runs the algorithm on `g` and evaluates every check in [`CHECK_NAMES`].
///
/// Only protocol faults abort; every other failure is reported through the
/// named checks.
pub fn verify(g: &PortGraph) -> Result<Verified, SimError> {
    let mut sim = Simulator::new(g);
    sim.run_to_horizon()?;
    let transcript = sim.transcript();
    let (result, pair_symmetry) = match sim.cover_result() {
        Ok(r) => (r, Ok(())),
        Err(e) => (unchecked_cover_result(g, &sim), Err(e.to_string())),
    };

    let settled = sim.states().to_vec();
    let extra_sent = sim.step()? + sim.step()?;
    let delta = g.max_degree() as u32;
    let round_bound =
        require(result.last_active_step <= 2 * delta && extra_sent == 0 && sim.states() == &settled[..], || {
            format!(
                "last message at step {} (bound {}), {} messages after the horizon",
                result.last_active_step,
                2 * delta,
                extra_sent
            )
        });

    let cover_valid = require(check_cover(g, &result.cover), || "some edge has no endpoint in C".into());

    let mut degree = vec![0usize; g.node_count()];
    for &(u, v) in &result.pair_edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let g1_degree = require(max_degree <= 2, || format!("pair graph has a node of degree {max_degree}"));
    let non_isolated: BTreeSet<NodeId> = (0..g.node_count()).filter(|&v| degree[v] > 0).collect();
    let g1_cover = require(non_isolated == result.cover, || {
        format!("{} non-isolated nodes in the pair graph, {} in C", non_isolated.len(), result.cover.len())
    });

    let pair_graph = build_pair_graphs(g, &result);
    let components = pair_graph.as_ref().map(|_| ()).map_err(ToString::to_string);

    let (certificate, ratio) = match &pair_graph {
        Ok(pg) => match certify(pg, result.cover_size()) {
            Ok(Some(c)) => {
                let ok = require(c.ratio.le_integer(3), || format!("certified ratio {} exceeds 3", c.ratio));
                (Some(c), ok)
            }
            Ok(None) => (None, Ok(())),
            Err(e) => (None, Err(e.to_string())),
        },
        Err(_) => (None, Err("no decomposition to certify".into())),
    };

    let (matching, projection) = match DoubleCover::build(g).extract_matching(g, &transcript) {
        Ok(h) => {
            let cover = h.project_cover();
            let edges = h.project_edges();
            let projection = require(cover == result.cover && edges == result.pair_edges, || {
                "projection of the matching differs from C or P".into()
            });
            (Ok(()), projection)
        }
        Err(e) => (Err(e.to_string()), Err("no matching to project".into())),
    };

    let checks = vec![
        (COVER_VALID, cover_valid),
        (PAIR_SYMMETRY, pair_symmetry),
        (G1_MAX_DEGREE_2, g1_degree),
        (G1_NONISOLATED_EQUALS_C, g1_cover),
        (COMPONENTS_PATHS_OR_CYCLES, components),
        (CERTIFIED_RATIO_LE_3, ratio),
        (ROUND_BOUND, round_bound),
        (DOUBLE_COVER_MAXIMAL_MATCHING, matching),
        (PROJECTION_EQUALS_COVER, projection),
    ];
    Ok(Verified { result, transcript, pair_graph: pair_graph.ok(), certificate, checks })
}

/// C and P read off the states without the pair-symmetry check; P follows
/// the `a` pointers only.
fn unchecked_cover_result(g: &PortGraph, sim: &Simulator<'_>) -> CoverResult {
    let states = sim.states();
    let pair_edges = states
        .iter()
        .enumerate()
        .filter_map(|(v, s)| s.a.map(|p| (v, g.endpoint(v, p).node)))
        .map(|(v, u)| (v.min(u), v.max(u)))
        .collect();
    let transcript_last = sim.transcript().last_active_step;
    CoverResult {
        cover: (0..g.node_count()).filter(|&v| states[v].c).collect(),
        pair_edges,
        rounds_run: horizon(g),
        last_active_step: transcript_last,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{generate, GraphKind};
    use crate::graph::Numbering;

    #[test]
    fn all_checks_pass_on_small_families() {
        for kind in [
            GraphKind::Path { n: 1 },
            GraphKind::Path { n: 2 },
            GraphKind::Path { n: 7 },
            GraphKind::Cycle { n: 5 },
            GraphKind::Clique { n: 6 },
            GraphKind::Star { leaves: 4 },
            GraphKind::RandomBounded { n: 50, max_degree: 6, edge_probability: 0.15, seed: 2 },
        ] {
            let g = PortGraph::from_edge_list(&generate(kind).unwrap(), Numbering::Random, Some(5)).unwrap();
            let v = verify(&g).unwrap();
            assert!(v.all_passed(), "{kind:?}: {:?}", v.failures().collect::<Vec<_>>());
            assert_eq!(v.checks.len(), CHECK_NAMES.len());
            for (i, (name, _)) in v.checks.iter().enumerate() {
                assert_eq!(*name, CHECK_NAMES[i]);
            }
        }
    }

    #[test]
    fn empty_graph_passes_without_certificate() {
        let v = verify(&PortGraph::empty(3)).unwrap();
        assert!(v.all_passed());
        assert!(v.certificate.is_none());
        assert_eq!(v.result.rounds_run, 1);
    }
}
