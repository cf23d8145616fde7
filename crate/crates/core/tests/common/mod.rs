//! Slow, obviously-correct reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::VecDeque;

use ifpart::graph::{AssignedGraph, Graph, Side, VertexLabel};

pub fn bfs_distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Counts connected components of the subgraph induced by `member`.
fn induced_components(g: &Graph, member: &[bool]) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for s in g.vertices().filter(|&v| member[v]) {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Definition-level check: labels respected, independent vertices
/// pairwise more than 2 apart (by BFS), forest side has `|F| - c` edges.
pub fn reference_valid(ag: &AssignedGraph, sides: &[Side]) -> bool {
    let g = ag.graph();
    for v in g.vertices() {
        match (ag.label(v), sides[v]) {
            (VertexLabel::I, Side::Forest) | (VertexLabel::F, Side::Independent) => return false,
            _ => {}
        }
    }
    let independent: Vec<usize> = g.vertices().filter(|&v| sides[v] == Side::Independent).collect();
    for &u in &independent {
        let dist = bfs_distances(g, u);
        if independent.iter().any(|&w| w != u && dist[w].is_some_and(|d| d <= 2)) {
            return false;
        }
    }
    let member: Vec<bool> = sides.iter().map(|&s| s == Side::Forest).collect();
    let vertices = member.iter().filter(|&&m| m).count();
    vertices == 0 || g.induced_edge_count(&member) + induced_components(g, &member) == vertices
}

pub fn sides_of(mask: u64, n: usize) -> Vec<Side> {
    (0..n)
        .map(|v| if mask >> v & 1 == 1 { Side::Independent } else { Side::Forest })
        .collect()
}

/// Whether any of the `2^n` splits is a valid I,F-partition.
pub fn reference_has_partition(ag: &AssignedGraph) -> bool {
    let n = ag.vertex_count();
    (0u64..1 << n).any(|mask| reference_valid(ag, &sides_of(mask, n)))
}

/// All paths on four vertices, each listed once.
pub fn four_paths(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != a && d != b && a < d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn reference_star(g: &Graph, colors: &[u32]) -> bool {
    g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
        && four_paths(g).iter().all(|p| {
            !(colors[p[0]] == colors[p[2]] && colors[p[1]] == colors[p[3]])
        })
}

/// Smallest `k` admitting a star coloring, by trying every `k^n` coloring.
pub fn reference_star_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    for k in 1..=n as u32 {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let colors: Vec<u32> = (0..n).map(|i| (code / (k as u64).pow(i as u32) % k as u64) as u32 + 1).collect();
            if reference_star(g, &colors) {
                return k as usize;
            }
        }
    }
    n
}

/// Every simple graph on `n` labeled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}
