//! Threads: maximal paths of degree-2 `U` vertices.
//!
//! The degree-2 `U` vertices induce a disjoint union of paths and cycles.
//! A cycle there is a whole component of the graph (every vertex has both
//! its neighbors on the cycle) and is reported as degenerate; every path
//! is a thread whose borders are the outside neighbors of its ends.

use serde::Serialize;

use crate::graph::{AssignedGraph, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreadKind {
    /// Two distinct bordering vertices.
    Open,
    /// Both ends attach to the same bordering vertex.
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Thread {
    /// Internal vertices in path order.
    pub internal: Vec<usize>,
    pub kind: ThreadKind,
    /// For open threads `[start, end]`, where `start` is adjacent to
    /// `internal[0]` and `end` to the last internal vertex; for closed
    /// threads the single border.
    pub borders: Vec<usize>,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.internal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.internal.is_empty()
    }

    /// The border reached from `v` by walking through the thread, when
    /// `v` is one of its borders. For closed threads this is `v` itself.
    pub fn far_border(&self, v: usize) -> Option<usize> {
        match (self.kind, self.borders.as_slice()) {
            (ThreadKind::Closed, [b]) if *b == v => Some(v),
            (ThreadKind::Open, [s, e]) if *s == v => Some(*e),
            (ThreadKind::Open, [s, e]) if *e == v => Some(*s),
            _ => None,
        }
    }

    /// Whether each border is a 3+-vertex or preassigned. Fails only when
    /// a border is a `U` vertex of degree at most 1.
    pub fn well_bordered(&self, ag: &AssignedGraph) -> bool {
        self.borders
            .iter()
            .all(|&b| ag.graph().degree(b) >= 3 || ag.label(b) != VertexLabel::U)
    }
}

/// All threads of an assigned graph plus per-vertex lookup tables.
#[derive(Debug, Clone)]
pub struct ThreadIndex {
    pub threads: Vec<Thread>,
    /// Thread containing each vertex as an internal vertex.
    pub thread_of: Vec<Option<usize>>,
    /// Components made entirely of degree-2 `U` vertices (cycles).
    pub degenerate_cycles: Vec<Vec<usize>>,
}

fn is_thread_vertex(ag: &AssignedGraph, v: usize) -> bool {
    ag.graph().degree(v) == 2 && ag.label(v) == VertexLabel::U
}

impl ThreadIndex {
    pub fn build(ag: &AssignedGraph) -> Self {
        let g = ag.graph();
        let n = g.vertex_count();
        let mut thread_of = vec![None; n];
        let mut visited = vec![false; n];
        let mut threads = Vec::new();
        let mut degenerate_cycles = Vec::new();

        for s in g.vertices() {
            if visited[s] || !is_thread_vertex(ag, s) {
                continue;
            }
            // Walk to one end of the run containing `s`.
            let mut start = s;
            let mut prev = usize::MAX;
            let mut cyclic = false;
            loop {
                let next = g
                    .neighbors(start)
                    .iter()
                    .copied()
                    .find(|&w| w != prev && is_thread_vertex(ag, w));
                match next {
                    Some(w) if w == s => {
                        cyclic = true;
                        break;
                    }
                    Some(w) => {
                        prev = start;
                        start = w;
                    }
                    None => break,
                }
                if start == s {
                    cyclic = true;
                    break;
                }
            }
            if cyclic {
                let mut comp = Vec::new();
                let mut cur = s;
                let mut prev = usize::MAX;
                loop {
                    visited[cur] = true;
                    comp.push(cur);
                    let next = g.neighbors(cur).iter().copied().find(|&w| w != prev && !visited[w]);
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                        }
                        None => break,
                    }
                }
                comp.sort_unstable();
                degenerate_cycles.push(comp);
                continue;
            }
            // Walk from `start` along the run, collecting internal vertices.
            let mut internal = vec![start];
            visited[start] = true;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev && is_thread_vertex(ag, w) && !visited[w]);
                match next {
                    Some(w) => {
                        visited[w] = true;
                        internal.push(w);
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            let thread = Self::make_thread(ag, internal);
            let id = threads.len();
            for &v in &thread.internal {
                thread_of[v] = Some(id);
            }
            threads.push(thread);
        }

        ThreadIndex {
            threads,
            thread_of,
            degenerate_cycles,
        }
    }

    fn make_thread(ag: &AssignedGraph, mut internal: Vec<usize>) -> Thread {
        let g = ag.graph();
        if internal.len() == 1 {
            let v = internal[0];
            let nb = g.neighbors(v);
            return Thread {
                internal,
                kind: ThreadKind::Open,
                borders: vec![nb[0], nb[1]],
            };
        }
        let outside = |end: usize, inner: usize| -> usize {
            *g.neighbors(end).iter().find(|&&w| w != inner).expect("degree 2")
        };
        let l = internal.len();
        let mut start = outside(internal[0], internal[1]);
        let mut end = outside(internal[l - 1], internal[l - 2]);
        // Canonical orientation: smaller border first, or smaller first
        // internal vertex for closed threads.
        if start > end || (start == end && internal[0] > internal[l - 1]) {
            internal.reverse();
            std::mem::swap(&mut start, &mut end);
        }
        if start == end {
            Thread {
                internal,
                kind: ThreadKind::Closed,
                borders: vec![start],
            }
        } else {
            Thread {
                internal,
                kind: ThreadKind::Open,
                borders: vec![start, end],
            }
        }
    }

    /// Threads entered by each edge at `v`, one entry per edge, so closed
    /// threads appear twice. `v` must not itself be a thread vertex.
    pub fn incident(&self, ag: &AssignedGraph, v: usize) -> Vec<usize> {
        if self.thread_of[v].is_some() {
            return Vec::new();
        }
        ag.graph()
            .neighbors(v)
            .iter()
            .filter_map(|&w| self.thread_of[w])
            .collect()
    }

    /// Number of incident `len`-threads at `v`, counting closed ones twice.
    pub fn incidence_count(&self, ag: &AssignedGraph, v: usize, len: usize) -> usize {
        self.incident(ag, v)
            .into_iter()
            .filter(|&t| self.threads[t].len() == len)
            .count()
    }
}

/// All maximal threads, ordered by their smallest internal vertex.
pub fn find_threads(ag: &AssignedGraph) -> Vec<Thread> {
    ThreadIndex::build(ag).threads
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::sharpness_graph;
    use crate::graph::{named, Graph};

    #[test]
    fn open_three_thread_between_hubs() {
        // Two K4s joined by a path of three degree-2 vertices 8-9-10.
        let mut edges: Vec<(usize, usize)> = named::complete(4).edges().to_vec();
        edges.extend(named::complete(4).edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        edges.extend([(0, 8), (8, 9), (9, 10), (10, 4)]);
        let ag = AssignedGraph::unassigned(Graph::from_edges(11, edges).unwrap());
        let threads = find_threads(&ag);
        assert_eq!(threads.len(), 1);
        let t = &threads[0];
        assert_eq!(t.internal, vec![8, 9, 10]);
        assert_eq!(t.kind, ThreadKind::Open);
        assert_eq!(t.borders, vec![0, 4]);
        assert!(t.well_bordered(&ag));
        assert_eq!(t.far_border(0), Some(4));
    }

    #[test]
    fn sharpness_has_closed_two_threads() {
        let s = sharpness_graph(3).unwrap();
        let ag = AssignedGraph::unassigned(s.graph.clone());
        let threads = find_threads(&ag);
        assert_eq!(threads.len(), 3);
        for i in 0..3 {
            let [a, b, c] = s.triangle(i);
            let t = threads.iter().find(|t| t.borders == vec![a]).unwrap();
            assert_eq!(t.kind, ThreadKind::Closed);
            assert_eq!(t.internal, vec![b, c]);
        }
        let idx = ThreadIndex::build(&ag);
        assert_eq!(idx.incidence_count(&ag, s.triangle(0)[0], 2), 2);
    }

    #[test]
    fn complete_graph_has_none() {
        assert!(find_threads(&AssignedGraph::unassigned(named::complete(4))).is_empty());
    }

    #[test]
    fn all_u_cycle_is_degenerate() {
        let ag = AssignedGraph::unassigned(named::cycle(5));
        let idx = ThreadIndex::build(&ag);
        assert!(idx.threads.is_empty());
        assert_eq!(idx.degenerate_cycles, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn cycle_with_preassigned_vertex_is_closed_thread() {
        let ag = AssignedGraph::unassigned(named::cycle(4))
            .with_label(0, VertexLabel::I)
            .unwrap();
        let threads = find_threads(&ag);
        assert_eq!(threads.len(), 1);
        assert_eq!(threads[0].kind, ThreadKind::Closed);
        assert_eq!(threads[0].internal, vec![1, 2, 3]);
        assert_eq!(threads[0].borders, vec![0]);
    }

    #[test]
    fn one_thread_has_sorted_borders() {
        let ag = AssignedGraph::unassigned(named::path(3));
        let t = &find_threads(&ag)[0];
        assert_eq!((t.internal.clone(), t.borders.clone()), (vec![1], vec![0, 2]));
        // Borders are U leaves, so this is not a thread in the strict sense.
        assert!(!t.well_bordered(&ag));
    }
}
