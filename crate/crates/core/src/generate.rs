//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng`, whose output stream is fixed by
//! its specification and identical on every platform. A generator spec is
//! seeded with `ChaCha8Rng::seed_from_u64(seed)`; sample `i` of a harness
//! run with master seed `s` uses `seed_from_u64(s)` switched to stream `i`
//! (see [`sample_rng`]), so samples can be produced in any order.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{AssignedGraph, Graph, VertexLabel};
use crate::potential::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("{m} edges requested but {n} vertices allow at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("target density must be nonnegative")]
    NegativeTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Uniform graph with exactly `m` edges.
    Gnm { n: usize, m: usize },
    /// `m = ⌊target·n/2⌋ + δ` edges with `δ` uniform in `-2..=2`,
    /// clamped to the feasible range.
    SparseNearThreshold {
        n: usize,
        #[serde(serialize_with = "crate::potential::serialize_rational")]
        target: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

pub fn spec_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sample `index` of a run with master seed `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenerateError> {
    let mut rng = spec_rng(spec.seed);
    match spec.model {
        Model::Gnm { n, m } => gnm(n, m, &mut rng),
        Model::SparseNearThreshold { n, target } => sparse_near_threshold(n, target, &mut rng),
    }
}

/// `m` distinct edges chosen uniformly among all vertex pairs.
pub fn gnm<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph, GenerateError> {
    let max = max_edges(n);
    if m > max {
        return Err(GenerateError::TooManyEdges { n, m, max });
    }
    let mut picked = sample(rng, max, m).into_vec();
    picked.sort_unstable();
    let edges = picked.into_iter().map(|k| unrank_pair(k, n));
    Ok(Graph::from_edges(n, edges).expect("distinct pairs"))
}

/// The `k`-th pair `(u, v)`, `u < v`, in row-major order.
fn unrank_pair(mut k: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    while k >= n - 1 - u {
        k -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + k)
}

pub fn sparse_near_threshold<R: Rng>(n: usize, target: Rational, rng: &mut R) -> Result<Graph, GenerateError> {
    if target < Rational::from_integer(0) {
        return Err(GenerateError::NegativeTarget);
    }
    let base = (target * Rational::from_integer(n as i64) / Rational::from_integer(2)).floor().to_integer();
    let m = (base + rng.random_range(-2..=2i64)).max(0) as usize;
    gnm(n, m.min(max_edges(n)), rng)
}

/// Connected graph: a random recursive tree plus `extra` random chords.
pub fn connected<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let missing = max_edges(n) - edges.len();
    for _ in 0..extra.min(missing) {
        loop {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let e = (u.min(v), u.max(v));
            if u != v && !edges.contains(&e) {
                edges.push(e);
                break;
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple")
}

/// Relative weights of `I`, `F`, `U` when labeling at random.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelMix {
    pub i: u32,
    pub f: u32,
    pub u: u32,
}

impl Default for LabelMix {
    fn default() -> Self {
        LabelMix { i: 1, f: 3, u: 6 }
    }
}

pub fn random_labels<R: Rng>(g: Graph, mix: LabelMix, rng: &mut R) -> AssignedGraph {
    let total = mix.i + mix.f + mix.u;
    let labels = g
        .vertices()
        .map(|_| {
            let x = rng.random_range(0..total);
            if x < mix.i {
                VertexLabel::I
            } else if x < mix.i + mix.f {
                VertexLabel::F
            } else {
                VertexLabel::U
            }
        })
        .collect();
    AssignedGraph::new(g, labels).expect("one label per vertex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::to_graph6;

    #[test]
    fn unrank_covers_all_pairs() {
        let n = 6;
        let pairs: Vec<_> = (0..max_edges(n)).map(|k| unrank_pair(k, n)).collect();
        let expected: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn gnm_is_deterministic() {
        let spec = GeneratorSpec {
            model: Model::Gnm { n: 5, m: 4 },
            seed: 42,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(to_graph6(&a), to_graph6(&b));
        assert_eq!(a.edge_count(), 4);
    }

    #[test]
    fn gnm_rejects_too_many_edges() {
        let spec = GeneratorSpec {
            model: Model::Gnm { n: 4, m: 7 },
            seed: 3,
        };
        assert_eq!(
            generate(&spec),
            Err(GenerateError::TooManyEdges { n: 4, m: 7, max: 6 })
        );
    }

    #[test]
    fn sparse_edge_count_window() {
        for seed in 0..50 {
            let spec = GeneratorSpec {
                model: Model::SparseNearThreshold {
                    n: 20,
                    target: Rational::new(5, 2),
                },
                seed,
            };
            let g = generate(&spec).unwrap();
            assert_eq!(g.vertex_count(), 20);
            assert!((23..=27).contains(&g.edge_count()));
        }
    }

    #[test]
    fn streams_differ() {
        let a: u64 = sample_rng(1, 0).random();
        let b: u64 = sample_rng(1, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, sample_rng(1, 0).random::<u64>());
    }

    #[test]
    fn connected_is_connected() {
        let mut rng = spec_rng(9);
        for n in 1..12 {
            let g = connected(n, n, &mut rng);
            assert_eq!(g.components().len(), 1);
        }
    }
}
