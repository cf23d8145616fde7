//! The potential function on assigned graphs, exact minimum-potential
//! subgraphs, maximum average degree, and the companion rational
//! identities.
//!
//! Potential of a vertex set `S` (always taken on the induced subgraph):
//! `|I(S)| + 4|F(S)| + 5|U(S)| - 4|E(G[S])|`.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::flow::max_selection;
use crate::graph::{AssignedGraph, Graph, GraphError, VertexLabel};

/// Exact rational used for densities, bounds and charges.
pub type Rational = Ratio<i64>;

pub const WEIGHT_I: i64 = 1;
pub const WEIGHT_F: i64 = 4;
pub const WEIGHT_U: i64 = 5;
pub const EDGE_PENALTY: i64 = 4;

/// Mad threshold below which every graph has an I,F-partition.
pub fn threshold() -> Rational {
    Rational::new(5, 2)
}

pub const DEFAULT_MIN_POTENTIAL_CAP: usize = 20;
pub const DEFAULT_MAD_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex set is empty")]
    EmptySet,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("brute force limited to {cap} vertices, graph has {n}")]
    CapExceeded { cap: usize, n: usize },
    #[error("girth must be at least 3, got {0}")]
    GirthTooSmall(u64),
}

pub fn label_weight(label: VertexLabel) -> i64 {
    match label {
        VertexLabel::I => WEIGHT_I,
        VertexLabel::F => WEIGHT_F,
        VertexLabel::U => WEIGHT_U,
    }
}

/// A nonempty vertex set together with the value it attains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgraphWitness<T> {
    pub vertices: Vec<usize>,
    pub value: T,
}

fn mask_of(n: usize, s: &[usize]) -> Result<Vec<bool>, GraphError> {
    let mut mask = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        mask[v] = true;
    }
    Ok(mask)
}

fn mask_potential(ag: &AssignedGraph, mask: &[bool]) -> i64 {
    let weights: i64 = ag
        .labels()
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(&l, _)| label_weight(l))
        .sum();
    weights - EDGE_PENALTY * ag.graph().induced_edge_count(mask) as i64
}

/// Potential of the subgraph induced by `s` (duplicates ignored).
pub fn potential(ag: &AssignedGraph, s: &[usize]) -> Result<i64, PotentialError> {
    let mask = mask_of(ag.vertex_count(), s)?;
    Ok(mask_potential(ag, &mask))
}

/// Potential of the whole graph.
pub fn total_potential(ag: &AssignedGraph) -> i64 {
    mask_potential(ag, &vec![true; ag.vertex_count()])
}

fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &m)| m.then_some(v))
        .collect()
}

/// Minimum potential over nonempty vertex subsets, via one selection
/// min-cut per vertex forced into the set. Ties go to the
/// lexicographically smallest witness among the per-vertex optima.
pub fn min_potential(ag: &AssignedGraph) -> Result<SubgraphWitness<i64>, PotentialError> {
    let n = ag.vertex_count();
    if n == 0 {
        return Err(PotentialError::EmptyGraph);
    }
    let costs: Vec<i64> = ag.labels().iter().map(|&l| label_weight(l)).collect();
    let edges = ag.graph().edges();
    let mut best: Option<SubgraphWitness<i64>> = None;
    for forced in 0..n {
        let (gain, mask) = max_selection(n, edges, EDGE_PENALTY, &costs, Some(forced));
        let cand = SubgraphWitness {
            vertices: members(&mask),
            value: -gain,
        };
        debug_assert_eq!(cand.value, mask_potential(ag, &mask));
        best = Some(match best {
            Some(b) if (b.value, &b.vertices) <= (cand.value, &cand.vertices) => b,
            _ => cand,
        });
    }
    Ok(best.expect("n > 0"))
}

pub fn brute_force_min_potential(ag: &AssignedGraph) -> Result<SubgraphWitness<i64>, PotentialError> {
    brute_force_min_potential_capped(ag, DEFAULT_MIN_POTENTIAL_CAP)
}

/// Exhaustive minimum over all `2^n - 1` nonempty subsets.
pub fn brute_force_min_potential_capped(
    ag: &AssignedGraph,
    cap: usize,
) -> Result<SubgraphWitness<i64>, PotentialError> {
    let n = ag.vertex_count();
    if n == 0 {
        return Err(PotentialError::EmptyGraph);
    }
    if n > cap || n >= 63 {
        return Err(PotentialError::CapExceeded { cap, n });
    }
    let weight: Vec<i64> = ag.labels().iter().map(|&l| label_weight(l)).collect();
    let edge_masks: Vec<u64> = ag
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u) | (1u64 << v))
        .collect();
    let mut best: Option<(i64, u64)> = None;
    for set in 1u64..(1u64 << n) {
        let mut value: i64 = (0..n).filter(|&v| set >> v & 1 == 1).map(|v| weight[v]).sum();
        value -= EDGE_PENALTY * edge_masks.iter().filter(|&&e| set & e == e).count() as i64;
        let better = match best {
            None => true,
            Some((bv, bs)) => value < bv || (value == bv && lex_less(set, bs)),
        };
        if better {
            best = Some((value, set));
        }
    }
    let (value, set) = best.expect("n > 0");
    Ok(SubgraphWitness {
        vertices: (0..n).filter(|&v| set >> v & 1 == 1).collect(),
        value,
    })
}

/// Lexicographic order on the sorted member lists of two bitsets.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    // Whichever set lacks the first differing element either continues
    // with a larger element (and is bigger) or has ended (a prefix, smaller).
    if a >> low & 1 == 1 {
        b >> low != 0
    } else {
        a >> low == 0
    }
}

/// True iff every nonempty vertex subset has positive potential.
pub fn all_potentials_positive(ag: &AssignedGraph) -> Result<bool, PotentialError> {
    Ok(min_potential(ag)?.value >= 1)
}

/// Maximum average degree `max 2|E(H)|/|V(H)|` with a densest witness.
///
/// Each step asks the selection network for a set maximizing
/// `2q|E(S)| - p|S|` at the current density `p/q`; a positive optimum is
/// a strictly denser set, so the iteration climbs through achievable
/// densities until no denser set exists.
pub fn mad(g: &Graph) -> Result<SubgraphWitness<Rational>, PotentialError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(PotentialError::EmptyGraph);
    }
    let mut witness: Vec<usize> = g.vertices().collect();
    let mut density = Rational::new(2 * g.edge_count() as i64, n as i64);
    loop {
        let (p, q) = (*density.numer(), *density.denom());
        let (gain, mask) = max_selection(n, g.edges(), 2 * q, &vec![p; n], None);
        if gain <= 0 {
            break;
        }
        let next = members(&mask);
        let next_density = Rational::new(2 * g.induced_edge_count(&mask) as i64, next.len() as i64);
        debug_assert!(next_density > density);
        witness = next;
        density = next_density;
    }
    Ok(SubgraphWitness {
        vertices: witness,
        value: density,
    })
}

pub fn brute_force_mad(g: &Graph) -> Result<SubgraphWitness<Rational>, PotentialError> {
    brute_force_mad_capped(g, DEFAULT_MAD_CAP)
}

pub fn brute_force_mad_capped(g: &Graph, cap: usize) -> Result<SubgraphWitness<Rational>, PotentialError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(PotentialError::EmptyGraph);
    }
    if n > cap || n >= 63 {
        return Err(PotentialError::CapExceeded { cap, n });
    }
    let edge_masks: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u) | (1u64 << v))
        .collect();
    let mut best = (Rational::new(0, 1), 1u64);
    for set in 1u64..(1u64 << n) {
        let e = edge_masks.iter().filter(|&&m| set & m == m).count() as i64;
        let d = Rational::new(2 * e, set.count_ones() as i64);
        if d > best.0 {
            best = (d, set);
        }
    }
    Ok(SubgraphWitness {
        vertices: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(),
        value: best.0,
    })
}

/// `(2|E| + 22|I| + 8|F|) / (|U| + 9|I| + 4|F|)` on `G[s]`; this is
/// below 5/2 exactly when the potential of `s` is positive.
pub fn sparsity_fraction(ag: &AssignedGraph, s: &[usize]) -> Result<Rational, PotentialError> {
    let mask = mask_of(ag.vertex_count(), s)?;
    if !mask.iter().any(|&m| m) {
        return Err(PotentialError::EmptySet);
    }
    let (i, f, u) = ag.label_counts(&mask);
    let (i, f, u) = (i as i64, f as i64, u as i64);
    let e = ag.graph().induced_edge_count(&mask) as i64;
    Ok(Rational::new(2 * e + 22 * i + 8 * f, u + 9 * i + 4 * f))
}

/// Upper bound `2g/(g-2)` on Mad for planar graphs of girth at least `g`.
pub fn girth_mad_bound(girth: u64) -> Result<Rational, PotentialError> {
    if girth < 3 {
        return Err(PotentialError::GirthTooSmall(girth));
    }
    Ok(Rational::new(2 * girth as i64, girth as i64 - 2))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde helper writing a rational as a [`format_rational`] string.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use VertexLabel::*;

    fn labeled(g: Graph, labels: &[VertexLabel]) -> AssignedGraph {
        AssignedGraph::new(g, labels.to_vec()).unwrap()
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential(&labeled(Graph::empty(1), &[I]), &[0]), Ok(1));
        assert_eq!(potential(&labeled(named::complete(2), &[I, F]), &[0, 1]), Ok(1));
        let tri = AssignedGraph::unassigned(named::complete(3));
        assert_eq!(potential(&tri, &[0, 1, 2]), Ok(3));
        assert!(matches!(potential(&tri, &[3]), Err(PotentialError::Graph(_))));
    }

    #[test]
    fn min_potential_examples() {
        let tri = AssignedGraph::unassigned(named::complete(3));
        let w = min_potential(&tri).unwrap();
        assert_eq!((w.value, w.vertices), (3, vec![0, 1, 2]));

        let c4 = labeled(named::cycle(4), &[F, F, F, F]);
        let w = min_potential(&c4).unwrap();
        assert_eq!((w.value, w.vertices), (0, vec![0, 1, 2, 3]));

        let ii = labeled(named::complete(2), &[I, I]);
        assert_eq!(min_potential(&ii).unwrap().value, -2);
        assert_eq!(
            min_potential(&AssignedGraph::default()),
            Err(PotentialError::EmptyGraph)
        );
    }

    #[test]
    fn brute_force_examples() {
        let u = AssignedGraph::unassigned(Graph::empty(1));
        assert_eq!(brute_force_min_potential(&u).unwrap().value, 5);

        // I–F edge plus an isolated I vertex: the whole set has potential 2,
        // the I–F edge alone attains the minimum 1.
        let fig = labeled(Graph::from_edges(3, [(0, 1)]).unwrap(), &[I, F, I]);
        assert_eq!(potential(&fig, &[0, 1, 2]), Ok(2));
        let w = brute_force_min_potential(&fig).unwrap();
        assert_eq!(w.value, 1);

        let iso = labeled(Graph::empty(4), &[I, I, I, I]);
        assert_eq!(brute_force_min_potential(&iso).unwrap().value, 1);

        let big = AssignedGraph::unassigned(Graph::empty(21));
        assert!(matches!(
            brute_force_min_potential(&big),
            Err(PotentialError::CapExceeded { .. })
        ));
    }

    #[test]
    fn lex_order_on_bitsets() {
        // {0,2} < {1}; {0} < {0,1}; {0,1} < {0,2}
        assert!(lex_less(0b101, 0b010));
        assert!(lex_less(0b001, 0b011));
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b011, 0b001));
    }

    #[test]
    fn positivity_examples() {
        assert!(all_potentials_positive(&labeled(Graph::empty(1), &[I])).unwrap());
        assert!(!all_potentials_positive(&labeled(named::complete(2), &[I, I])).unwrap());
    }

    #[test]
    fn mad_examples() {
        assert_eq!(mad(&named::cycle(10)).unwrap().value, Rational::from_integer(2));
        assert_eq!(mad(&named::complete_bipartite(3, 3)).unwrap().value, Rational::from_integer(3));
        assert_eq!(mad(&named::star(5)).unwrap().value, Rational::new(5, 3));
        assert_eq!(mad(&Graph::empty(3)).unwrap().value, Rational::from_integer(0));
        // A K4 with a long pendant path: the witness is the K4.
        let mut edges: Vec<(usize, usize)> = named::complete(4).edges().to_vec();
        edges.extend([(3, 4), (4, 5), (5, 6)]);
        let w = mad(&Graph::from_edges(7, edges).unwrap()).unwrap();
        assert_eq!(w.value, Rational::from_integer(3));
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn brute_force_mad_examples() {
        assert_eq!(brute_force_mad(&named::complete(4)).unwrap().value, Rational::from_integer(3));
        assert_eq!(brute_force_mad(&named::path(2)).unwrap().value, Rational::from_integer(1));
    }

    #[test]
    fn sparsity_fraction_examples() {
        let u = AssignedGraph::unassigned(Graph::empty(1));
        assert_eq!(sparsity_fraction(&u, &[0]), Ok(Rational::from_integer(0)));
        let iu = labeled(named::complete(2), &[I, U]);
        assert_eq!(sparsity_fraction(&iu, &[0, 1]), Ok(Rational::new(12, 5)));
        let ii = labeled(named::complete(2), &[I, I]);
        // 2·1 + 22·2 over 9·2.
        assert_eq!(sparsity_fraction(&ii, &[0, 1]), Ok(Rational::new(23, 9)));
        assert_eq!(sparsity_fraction(&ii, &[]), Err(PotentialError::EmptySet));
    }

    #[test]
    fn girth_bounds() {
        assert_eq!(girth_mad_bound(10), Ok(Rational::new(5, 2)));
        assert_eq!(girth_mad_bound(3), Ok(Rational::from_integer(6)));
        assert_eq!(girth_mad_bound(6), Ok(Rational::from_integer(3)));
        assert_eq!(girth_mad_bound(2), Err(PotentialError::GirthTooSmall(2)));
        assert_eq!(format_rational(&Rational::new(5, 2)), "5/2");
        assert_eq!(format_rational(&Rational::new(6, 2)), "3");
    }
}
