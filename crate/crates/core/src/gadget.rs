//! Gadget constructions that force preassigned vertices, the expansion of
//! an assigned graph into an equivalent unassigned one, and the cycle-with-
//! pendant-triangles family showing the 5/2 threshold is tight.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{AssignedGraph, Graph, GraphError, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("vertex {vertex} is labeled {found}, expected {expected}")]
    WrongLabel {
        vertex: usize,
        expected: VertexLabel,
        found: VertexLabel,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("sharpness cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GadgetKind {
    /// Triangle `abc` plus the edge `va`.
    Forest,
    /// Triangles `abc`, `fgh`, path `adef`, and edges `vd`, `ve`.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetRecord {
    pub host: usize,
    pub kind: GadgetKind,
    /// Added vertices with their role letters, in insertion order.
    pub added: Vec<(char, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetExpansion {
    pub result: AssignedGraph,
    /// Original vertex `v` is vertex `vertex_map[v]` of the result.
    pub vertex_map: Vec<usize>,
    pub gadgets: Vec<GadgetRecord>,
}

const F_ROLES: [char; 3] = ['a', 'b', 'c'];
const F_EDGES: [(char, char); 4] = [('a', 'b'), ('b', 'c'), ('c', 'a'), ('v', 'a')];
const I_ROLES: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];
const I_EDGES: [(char, char); 11] = [
    ('a', 'b'),
    ('b', 'c'),
    ('c', 'a'),
    ('f', 'g'),
    ('g', 'h'),
    ('h', 'f'),
    ('a', 'd'),
    ('d', 'e'),
    ('e', 'f'),
    ('v', 'd'),
    ('v', 'e'),
];

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<VertexLabel>,
    gadgets: Vec<GadgetRecord>,
}

impl Builder {
    fn from(ag: &AssignedGraph) -> Self {
        Builder {
            n: ag.vertex_count(),
            edges: ag.graph().edges().to_vec(),
            labels: ag.labels().to_vec(),
            gadgets: Vec::new(),
        }
    }

    fn attach(&mut self, host: usize, kind: GadgetKind, roles: &[char], edges: &[(char, char)]) {
        let base = self.n;
        let index = |r: char| {
            if r == 'v' {
                host
            } else {
                base + roles.iter().position(|&x| x == r).expect("known role")
            }
        };
        self.n += roles.len();
        self.labels.extend(std::iter::repeat_n(VertexLabel::U, roles.len()));
        self.labels[host] = VertexLabel::U;
        self.edges.extend(edges.iter().map(|&(x, y)| (index(x), index(y))));
        self.gadgets.push(GadgetRecord {
            host,
            kind,
            added: roles.iter().map(|&r| (r, index(r))).collect(),
        });
    }

    fn finish(self, original: usize) -> GadgetExpansion {
        let g = Graph::from_edges(self.n, self.edges).expect("gadget edges are simple");
        GadgetExpansion {
            result: AssignedGraph::new(g, self.labels).expect("labels sized"),
            vertex_map: (0..original).collect(),
            gadgets: self.gadgets,
        }
    }
}

fn expect_label(ag: &AssignedGraph, v: usize, expected: VertexLabel) -> Result<(), GadgetError> {
    ag.graph().check_vertex(v)?;
    let found = ag.label(v);
    if found != expected {
        return Err(GadgetError::WrongLabel {
            vertex: v,
            expected,
            found,
        });
    }
    Ok(())
}

/// Hangs a triangle off the F-labeled vertex `v` and relabels it `U`.
pub fn attach_f_gadget(ag: &AssignedGraph, v: usize) -> Result<GadgetExpansion, GadgetError> {
    expect_label(ag, v, VertexLabel::F)?;
    let mut b = Builder::from(ag);
    b.attach(v, GadgetKind::Forest, &F_ROLES, &F_EDGES);
    Ok(b.finish(ag.vertex_count()))
}

/// Attaches the eight-vertex I-gadget to the I-labeled vertex `v` and
/// relabels it `U`.
pub fn attach_i_gadget(ag: &AssignedGraph, v: usize) -> Result<GadgetExpansion, GadgetError> {
    expect_label(ag, v, VertexLabel::I)?;
    let mut b = Builder::from(ag);
    b.attach(v, GadgetKind::Independent, &I_ROLES, &I_EDGES);
    Ok(b.finish(ag.vertex_count()))
}

/// Replaces every preassignment by a gadget: all F vertices first, then
/// all I vertices, each group in ascending order. The result is all `U`.
pub fn expand_to_unassigned(ag: &AssignedGraph) -> GadgetExpansion {
    let mut b = Builder::from(ag);
    for v in ag.graph().vertices().filter(|&v| ag.label(v) == VertexLabel::F) {
        b.attach(v, GadgetKind::Forest, &F_ROLES, &F_EDGES);
    }
    for v in ag.graph().vertices().filter(|&v| ag.label(v) == VertexLabel::I) {
        b.attach(v, GadgetKind::Independent, &I_ROLES, &I_EDGES);
    }
    b.finish(ag.vertex_count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessGraph {
    pub cycle_length: usize,
    pub graph: Graph,
}

impl SharpnessGraph {
    /// Cycle vertex `i` is vertex `i`; its triangle is `a, b, c` at
    /// `k + 3i`, `k + 3i + 1`, `k + 3i + 2`, with `a` adjacent to `i`.
    pub fn triangle(&self, i: usize) -> [usize; 3] {
        let base = self.cycle_length + 3 * i;
        [base, base + 1, base + 2]
    }
}

/// A `k`-cycle with a triangle hung from each cycle vertex by one edge:
/// `4k` vertices, `5k` edges, Mad exactly 5/2, and no I,F-partition.
pub fn sharpness_graph(k: usize) -> Result<SharpnessGraph, GadgetError> {
    if k < 3 {
        return Err(GadgetError::CycleTooShort(k));
    }
    let mut edges = Vec::with_capacity(5 * k);
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        let (a, b, c) = (k + 3 * i, k + 3 * i + 1, k + 3 * i + 2);
        edges.extend([(i, a), (a, b), (b, c), (c, a)]);
    }
    Ok(SharpnessGraph {
        cycle_length: k,
        graph: Graph::from_edges(4 * k, edges).expect("simple construction"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::total_potential;

    fn single(label: VertexLabel) -> AssignedGraph {
        AssignedGraph::new(Graph::empty(1), vec![label]).unwrap()
    }

    #[test]
    fn f_gadget_counts() {
        let e = attach_f_gadget(&single(VertexLabel::F), 0).unwrap();
        assert_eq!(e.result.vertex_count(), 4);
        assert_eq!(e.result.graph().edge_count(), 4);
        assert!(e.result.labels().iter().all(|&l| l == VertexLabel::U));
        assert_eq!(total_potential(&e.result), 4);
        assert_eq!(e.gadgets[0].added, vec![('a', 1), ('b', 2), ('c', 3)]);
        assert!(e.result.graph().has_edge(0, 1));
    }

    #[test]
    fn i_gadget_counts() {
        let e = attach_i_gadget(&single(VertexLabel::I), 0).unwrap();
        assert_eq!(e.result.vertex_count(), 9);
        assert_eq!(e.result.graph().edge_count(), 11);
        let g = e.result.graph();
        let (d, e_) = (4, 5);
        assert!(g.has_edge(0, d) && g.has_edge(0, e_) && g.has_edge(d, e_));
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn wrong_labels_rejected() {
        assert!(matches!(
            attach_f_gadget(&single(VertexLabel::I), 0),
            Err(GadgetError::WrongLabel { .. })
        ));
        assert!(matches!(
            attach_i_gadget(&single(VertexLabel::U), 0),
            Err(GadgetError::WrongLabel { .. })
        ));
        assert!(matches!(
            attach_i_gadget(&single(VertexLabel::I), 3),
            Err(GadgetError::Graph(_))
        ));
    }

    #[test]
    fn expansion_of_i_f_edge() {
        let ag = AssignedGraph::new(
            Graph::from_edges(2, [(0, 1)]).unwrap(),
            vec![VertexLabel::I, VertexLabel::F],
        )
        .unwrap();
        let e = expand_to_unassigned(&ag);
        assert_eq!(e.result.vertex_count(), 13);
        assert_eq!(e.result.graph().edge_count(), 16);
        assert!(e.result.labels().iter().all(|&l| l == VertexLabel::U));
        // F gadget first (host 1), then the I gadget (host 0).
        assert_eq!(e.gadgets[0].host, 1);
        assert_eq!(e.gadgets[1].host, 0);
        assert_eq!(e.gadgets[1].added[0], ('a', 5));
    }

    #[test]
    fn unassigned_expansion_is_identity() {
        let ag = AssignedGraph::unassigned(crate::graph::named::cycle(5));
        let e = expand_to_unassigned(&ag);
        assert_eq!(e.result, ag);
        assert!(e.gadgets.is_empty());
    }

    #[test]
    fn sharpness_counts() {
        let s = sharpness_graph(3).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (12, 15));
        let s = sharpness_graph(5).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (20, 25));
        assert_eq!(s.triangle(1), [8, 9, 10]);
        assert!(s.graph.has_edge(1, 8));
        assert_eq!(sharpness_graph(2), Err(GadgetError::CycleTooShort(2)));
    }
}
