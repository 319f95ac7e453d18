//! Deterministic graph families used as test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EdgeList, GraphError, NodeId};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Clique {
        n: usize,
    },
    /// Centre 0, leaves `1..=leaves`.
    Star {
        leaves: usize,
    },
    /// Random simple graph with maximum degree at most `max_degree`.
    RandomBounded {
        n: usize,
        max_degree: usize,
        edge_probability: f64,
        seed: u64,
    },
}

pub fn generate(kind: GraphKind) -> Result<EdgeList, GraphError> {
    let bad = |msg: &str| Err(GraphError::BadParameters(msg.to_string()));
    let (n, edges): (usize, Vec<(NodeId, NodeId)>) = match kind {
        GraphKind::Cycle { n } if n < 3 => return bad("cycle needs n >= 3"),
        GraphKind::Cycle { n } => (n, (0..n).map(|v| (v, (v + 1) % n)).collect()),
        GraphKind::Path { n } if n < 1 => return bad("path needs n >= 1"),
        GraphKind::Path { n } => (n, (1..n).map(|v| (v - 1, v)).collect()),
        GraphKind::Clique { n } if n < 1 => return bad("clique needs n >= 1"),
        GraphKind::Clique { n } => (n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()),
        GraphKind::Star { leaves } if leaves < 1 => return bad("star needs at least one leaf"),
        GraphKind::Star { leaves } => (leaves + 1, (1..=leaves).map(|v| (0, v)).collect()),
        GraphKind::RandomBounded { edge_probability: p, .. } if !(0.0..=1.0).contains(&p) => {
            return bad("edge probability must lie in [0, 1]")
        }
        GraphKind::RandomBounded { n, max_degree, edge_probability, seed } => {
            (n, random_bounded(n, max_degree, edge_probability, seed))
        }
    };
    EdgeList::new(n, edges)
}

/// Every pair is a candidate with probability `p`; candidates are then taken
/// in a seeded random order and dropped if either endpoint is already full.
///
/// Candidates are drawn by geometric skipping over the pair index space, which
/// gives the same distribution as flipping a coin per pair in O(n + m) time.
fn random_bounded(n: usize, max_degree: usize, p: f64, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = Vec::new();
    if p >= 1.0 {
        candidates.extend((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))));
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        // pair (w, v) with w < v; v is the row, w walks along it
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                candidates.push((w as usize, v));
            }
        }
    }
    candidates.shuffle(&mut rng);

    let mut degree = vec![0usize; n];
    let mut edges: Vec<_> = candidates
        .into_iter()
        .filter(|&(u, v)| {
            let fits = degree[u] < max_degree && degree[v] < max_degree;
            if fits {
                degree[u] += 1;
                degree[v] += 1;
            }
            fits
        })
        .collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_families() {
        let c4 = generate(GraphKind::Cycle { n: 4 }).unwrap();
        assert_eq!(c4.edge_set(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(c4.edges(), &[(0, 1), (1, 2), (2, 3), (3, 0)]);

        let star = generate(GraphKind::Star { leaves: 3 }).unwrap();
        assert_eq!(star.edges(), &[(0, 1), (0, 2), (0, 3)]);

        assert_eq!(generate(GraphKind::Path { n: 1 }).unwrap().len(), 0);
        assert_eq!(generate(GraphKind::Clique { n: 5 }).unwrap().len(), 10);
    }

    #[test]
    fn bad_parameters() {
        for kind in [
            GraphKind::Cycle { n: 2 },
            GraphKind::Path { n: 0 },
            GraphKind::Clique { n: 0 },
            GraphKind::Star { leaves: 0 },
            GraphKind::RandomBounded { n: 5, max_degree: 2, edge_probability: 1.5, seed: 0 },
            GraphKind::RandomBounded { n: 5, max_degree: 2, edge_probability: f64::NAN, seed: 0 },
        ] {
            assert!(matches!(generate(kind), Err(GraphError::BadParameters(_))), "{kind:?}");
        }
    }

    #[test]
    fn random_bounded_respects_degree_bound() {
        let kind = GraphKind::RandomBounded { n: 20, max_degree: 4, edge_probability: 0.3, seed: 7 };
        let el = generate(kind).unwrap();
        assert!(el.max_degree() <= 4);
        assert!(!el.is_empty());
        assert_eq!(generate(kind).unwrap(), el);
    }

    #[test]
    fn random_bounded_extremes() {
        let full = generate(GraphKind::RandomBounded { n: 6, max_degree: 10, edge_probability: 1.0, seed: 1 }).unwrap();
        assert_eq!(full.len(), 15);
        let none = generate(GraphKind::RandomBounded { n: 6, max_degree: 10, edge_probability: 0.0, seed: 1 }).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn skip_sampling_has_expected_density() {
        // no degree cap: edge count should be close to p * n(n-1)/2
        let el =
            generate(GraphKind::RandomBounded { n: 400, max_degree: usize::MAX, edge_probability: 0.05, seed: 11 })
                .unwrap();
        let expected = 0.05 * 400.0 * 399.0 / 2.0;
        let sd = (expected * 0.95f64).sqrt();
        assert!((el.len() as f64 - expected).abs() < 5.0 * sd, "{} vs {expected}", el.len());
    }
}
