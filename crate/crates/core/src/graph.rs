//! Simple undirected graphs, assigned graphs and the partition/coloring
//! value types shared by every other module.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("label vector has {got} entries, graph has {expected} vertices")]
    LabelCount { expected: usize, got: usize },
}

/// Simple undirected graph on the dense vertex set `0..n`.
///
/// Adjacency lists and the edge list are kept sorted, so equality is
/// structural equality of the labelled graph.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); vertex_count],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge iterator. Repeated edges (in either
    /// orientation) collapse into one; self-loops and out-of-range
    /// endpoints are rejected.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Number of edges with both endpoints in the member mask.
    pub fn induced_edge_count(&self, member: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }

    /// Induced subgraph on `keep` (in the given order). Returns the new
    /// graph and, for each new index, the original vertex.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(keep.len(), edges).expect("induced subgraph of a simple graph");
        (g, keep.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A forest has exactly `n - c` edges, `c` being the component count.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// Vertices at distance 1 or 2 from `v` (excluding `v`), sorted.
    pub fn second_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &u in &self.adj[v] {
            out.insert(u);
            for &w in &self.adj[u] {
                if w != v {
                    out.insert(w);
                }
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count(), self.edges)
    }
}

/// Preassignment tag of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexLabel {
    /// Must end up in the 2-independent side.
    I,
    /// Must end up in the forest side.
    F,
    /// Free.
    U,
}

impl VertexLabel {
    pub const ALL: [VertexLabel; 3] = [VertexLabel::I, VertexLabel::F, VertexLabel::U];

    pub fn letter(self) -> char {
        match self {
            VertexLabel::I => 'I',
            VertexLabel::F => 'F',
            VertexLabel::U => 'U',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(VertexLabel::I),
            'F' => Some(VertexLabel::F),
            'U' => Some(VertexLabel::U),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A graph together with a total I/F/U labeling of its vertices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AssignedGraph {
    graph: Graph,
    labels: Vec<VertexLabel>,
}

impl AssignedGraph {
    pub fn new(graph: Graph, labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        if labels.len() != graph.vertex_count() {
            return Err(GraphError::LabelCount {
                expected: graph.vertex_count(),
                got: labels.len(),
            });
        }
        Ok(AssignedGraph { graph, labels })
    }

    /// Every vertex labeled `U`.
    pub fn unassigned(graph: Graph) -> Self {
        let labels = vec![VertexLabel::U; graph.vertex_count()];
        AssignedGraph { graph, labels }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn with_label(mut self, v: usize, label: VertexLabel) -> Result<Self, GraphError> {
        self.graph.check_vertex(v)?;
        self.labels[v] = label;
        Ok(self)
    }

    pub fn into_parts(self) -> (Graph, Vec<VertexLabel>) {
        (self.graph, self.labels)
    }

    /// Vertices of `subset` carrying `label`.
    pub fn labeled_in(&self, subset: &[usize], label: VertexLabel) -> Vec<usize> {
        subset
            .iter()
            .copied()
            .filter(|&v| self.labels[v] == label)
            .collect()
    }

    /// Counts `(|I|, |F|, |U|)` over the member mask.
    pub fn label_counts(&self, member: &[bool]) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for (v, &l) in self.labels.iter().enumerate() {
            if !member[v] {
                continue;
            }
            match l {
                VertexLabel::I => counts.0 += 1,
                VertexLabel::F => counts.1 += 1,
                VertexLabel::U => counts.2 += 1,
            }
        }
        counts
    }

    /// Induced assigned subgraph on `keep`, with the original index of
    /// each retained vertex.
    pub fn induced(&self, keep: &[usize]) -> (AssignedGraph, Vec<usize>) {
        let (g, map) = self.graph.induced_subgraph(keep);
        let labels = map.iter().map(|&v| self.labels[v]).collect();
        (AssignedGraph { graph: g, labels }, map)
    }
}

impl fmt::Debug for AssignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: String = self.labels.iter().map(|l| l.letter()).collect();
        write!(
            f,
            "AssignedGraph(n={}, labels={}, edges={:?})",
            self.vertex_count(),
            labels,
            self.graph.edges()
        )
    }
}

/// Which side of an I,F-partition a vertex is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Independent,
    Forest,
}

/// A candidate split of the vertex set into an independent part and a
/// forest part. Both lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Partition {
    pub independent: Vec<usize>,
    pub forest: Vec<usize>,
}

impl Partition {
    pub fn new(mut independent: Vec<usize>, mut forest: Vec<usize>) -> Self {
        independent.sort_unstable();
        independent.dedup();
        forest.sort_unstable();
        forest.dedup();
        Partition {
            independent,
            forest,
        }
    }

    pub fn from_sides(sides: &[Side]) -> Self {
        let mut independent = Vec::new();
        let mut forest = Vec::new();
        for (v, s) in sides.iter().enumerate() {
            match s {
                Side::Independent => independent.push(v),
                Side::Forest => forest.push(v),
            }
        }
        Partition {
            independent,
            forest,
        }
    }

    /// Per-vertex sides, or `None` if the two parts do not split `0..n`
    /// exactly.
    pub fn sides(&self, n: usize) -> Option<Vec<Side>> {
        let mut sides: Vec<Option<Side>> = vec![None; n];
        for (part, side) in [
            (&self.independent, Side::Independent),
            (&self.forest, Side::Forest),
        ] {
            for &v in part {
                if v >= n || sides[v].is_some() {
                    return None;
                }
                sides[v] = Some(side);
            }
        }
        sides.into_iter().collect()
    }
}

/// Vertex colors, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct StarColoring {
    pub colors: Vec<u32>,
}

impl StarColoring {
    pub fn new(colors: Vec<u32>) -> Self {
        StarColoring { colors }
    }

    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Named small graphs used across the tests, the harness and the CLI.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).unwrap()
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        complete_bipartite(1, k)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse_and_loops_fail() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn forest_detection() {
        assert!(named::path(5).is_forest());
        assert!(named::star(4).is_forest());
        assert!(!named::cycle(4).is_forest());
        assert!(Graph::empty(3).is_forest());
    }

    #[test]
    fn induced_keeps_labels() {
        let ag = AssignedGraph::unassigned(named::cycle(4))
            .with_label(2, VertexLabel::I)
            .unwrap();
        let (sub, map) = ag.induced(&[1, 2, 3]);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(sub.graph().edge_count(), 2);
        assert_eq!(sub.label(1), VertexLabel::I);
    }

    #[test]
    fn partition_sides_require_exact_cover() {
        assert!(Partition::new(vec![0], vec![1, 2]).sides(3).is_some());
        assert!(Partition::new(vec![0], vec![1]).sides(3).is_none());
        assert!(Partition::new(vec![0, 1], vec![1, 2]).sides(3).is_none());
    }

    #[test]
    fn petersen_is_cubic() {
        let g = named::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }
}
