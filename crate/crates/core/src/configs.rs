//! Detection of the reducible configurations excluded from a minimal
//! counterexample, plus the degenerate shapes the discharging argument
//! does not cover, and the enumeration of small low-potential graphs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{AssignedGraph, Graph, VertexLabel};
use crate::potential::{brute_force_min_potential, total_potential};
use crate::threads::{Thread, ThreadIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConfigKind {
    /// 1-vertex in `U`.
    C1,
    /// Thread with at least three internal vertices.
    C2,
    /// 4-vertex in `U` whose four edges all enter 2-threads.
    C3,
    /// 1-vertex in `F`.
    #[serde(rename = "CL6_1")]
    Cl6One,
    /// 2-vertex in `F`.
    #[serde(rename = "CL6_2")]
    Cl6Two,
    /// 3-vertex in `F ∪ U` without `I` neighbors, incident to a 2-thread.
    #[serde(rename = "CL7")]
    Cl7,
    /// 3-vertex in `U` on three 1-threads whose far borders avoid `I`.
    #[serde(rename = "CL8")]
    Cl8,
    /// 4-vertex in `U` on three 2-threads and a 1-thread whose far border
    /// avoids `I`.
    #[serde(rename = "CL9")]
    Cl9,
    DegenerateIsolated,
    DegenerateAllUCycle,
}

impl ConfigKind {
    pub fn is_degenerate(self) -> bool {
        matches!(self, ConfigKind::DegenerateIsolated | ConfigKind::DegenerateAllUCycle)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::C1 => "C1",
            ConfigKind::C2 => "C2",
            ConfigKind::C3 => "C3",
            ConfigKind::Cl6One => "CL6_1",
            ConfigKind::Cl6Two => "CL6_2",
            ConfigKind::Cl7 => "CL7",
            ConfigKind::Cl8 => "CL8",
            ConfigKind::Cl9 => "CL9",
            ConfigKind::DegenerateIsolated => "DEGENERATE_ISOLATED",
            ConfigKind::DegenerateAllUCycle => "DEGENERATE_ALL_U_CYCLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConfigurationReport {
    pub kind: ConfigKind,
    pub anchor: usize,
    /// Vertices making up the pattern (anchor first where applicable).
    pub vertices: Vec<usize>,
    /// Threads involved, in the anchor's edge order.
    pub threads: Vec<Thread>,
}

fn has_i_neighbor(ag: &AssignedGraph, v: usize) -> bool {
    ag.graph().neighbors(v).iter().any(|&w| ag.label(w) == VertexLabel::I)
}

/// Every configuration present in `ag`, sorted by (anchor, kind).
pub fn detect_configurations(ag: &AssignedGraph) -> Vec<ConfigurationReport> {
    let idx = ThreadIndex::build(ag);
    detect_with_index(ag, &idx)
}

pub(crate) fn detect_with_index(ag: &AssignedGraph, idx: &ThreadIndex) -> Vec<ConfigurationReport> {
    let g = ag.graph();
    let mut out = Vec::new();
    let report = |kind, anchor, vertices: Vec<usize>, threads: Vec<Thread>| ConfigurationReport {
        kind,
        anchor,
        vertices,
        threads,
    };

    for cycle in &idx.degenerate_cycles {
        out.push(report(ConfigKind::DegenerateAllUCycle, cycle[0], cycle.clone(), vec![]));
    }
    for t in &idx.threads {
        if t.len() >= 3 {
            let centre = t.internal[1];
            out.push(report(
                ConfigKind::C2,
                centre,
                vec![centre, t.internal[0], t.internal[2]],
                vec![t.clone()],
            ));
        }
    }

    for v in g.vertices() {
        let d = g.degree(v);
        let label = ag.label(v);
        if d == 0 {
            out.push(report(ConfigKind::DegenerateIsolated, v, vec![v], vec![]));
            continue;
        }
        match (label, d) {
            (VertexLabel::U, 1) => out.push(report(ConfigKind::C1, v, vec![v], vec![])),
            (VertexLabel::F, 1) => out.push(report(ConfigKind::Cl6One, v, vec![v], vec![])),
            (VertexLabel::F, 2) => {
                let mut vs = vec![v];
                vs.extend_from_slice(g.neighbors(v));
                out.push(report(ConfigKind::Cl6Two, v, vs, vec![]));
            }
            _ => {}
        }
        if idx.thread_of[v].is_some() || !(3..=4).contains(&d) {
            continue;
        }

        let incident = idx.incident(ag, v);
        let lens: Vec<usize> = incident.iter().map(|&t| idx.threads[t].len()).collect();
        let twos = lens.iter().filter(|&&l| l == 2).count();
        let ones = lens.iter().filter(|&&l| l == 1).count();
        let threads_of = |want: &dyn Fn(usize) -> bool| -> Vec<Thread> {
            let mut seen = BTreeSet::new();
            incident
                .iter()
                .filter(|&&t| want(idx.threads[t].len()) && seen.insert(t))
                .map(|&t| idx.threads[t].clone())
                .collect()
        };
        let far_ok = |t: &Thread| t.far_border(v).is_some_and(|a| ag.label(a) != VertexLabel::I);

        if label == VertexLabel::U && d == 4 && twos == 4 {
            let ts = threads_of(&|l| l == 2);
            out.push(report(ConfigKind::C3, v, pattern_vertices(v, &ts), ts));
        }
        if label != VertexLabel::I && d == 3 && twos >= 1 && !has_i_neighbor(ag, v) {
            let ts = threads_of(&|l| l == 2);
            out.push(report(ConfigKind::Cl7, v, pattern_vertices(v, &ts), ts));
        }
        if label == VertexLabel::U && d == 3 && ones == 3 {
            let ts = threads_of(&|l| l == 1);
            if ts.iter().all(far_ok) {
                let mut vs = pattern_vertices(v, &ts);
                vs.extend(ts.iter().filter_map(|t| t.far_border(v)));
                out.push(report(ConfigKind::Cl8, v, vs, ts));
            }
        }
        if label == VertexLabel::U && d == 4 && twos == 3 && ones == 1 {
            let ts = threads_of(&|l| l == 2 || l == 1);
            let one = ts.iter().find(|t| t.len() == 1).expect("one 1-thread");
            if far_ok(one) {
                let mut vs = pattern_vertices(v, &ts);
                vs.extend(one.far_border(v));
                out.push(report(ConfigKind::Cl9, v, vs, ts));
            }
        }
    }
    out.sort_by_key(|r| (r.anchor, r.kind));
    out
}

fn pattern_vertices(v: usize, threads: &[Thread]) -> Vec<usize> {
    let mut vs = vec![v];
    for t in threads {
        vs.extend_from_slice(&t.internal);
    }
    vs
}

/// Assigned graphs `H` (up to label-preserving isomorphism) with
/// `|V(H)| + |E(H)| ≤ 4` and `0 < ρ(H) < 3` whose nonempty vertex subsets
/// all have positive potential. Ordered by (vertices, edges, labels).
pub fn enumerate_low_potential_configs() -> Vec<AssignedGraph> {
    const BUDGET: usize = 4;
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=BUDGET {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for edge_mask in 0u32..(1 << pairs.len()) {
            let m = edge_mask.count_ones() as usize;
            if n + m > BUDGET {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| edge_mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, edges).expect("simple");
            for code in 0..3usize.pow(n as u32) {
                let labels: Vec<VertexLabel> = (0..n)
                    .map(|i| VertexLabel::ALL[code / 3usize.pow(i as u32) % 3])
                    .collect();
                let ag = AssignedGraph::new(g.clone(), labels).expect("sized");
                let rho = total_potential(&ag);
                if !(1..3).contains(&rho) {
                    continue;
                }
                if brute_force_min_potential(&ag).expect("tiny").value < 1 {
                    continue;
                }
                if seen.insert(canonical_form(&ag)) {
                    out.push(ag);
                }
            }
        }
    }
    out
}

/// Vertex count, edges and labels under the canonical relabeling.
pub type CanonicalForm = (usize, Vec<(usize, usize)>, Vec<VertexLabel>);

/// Lexicographically smallest (edges, labels) over all vertex
/// permutations; equal forms mean label-preserving isomorphism.
pub fn canonical_form(ag: &AssignedGraph) -> CanonicalForm {
    let n = ag.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = None;
    loop {
        let mut labels = vec![VertexLabel::U; n];
        for v in 0..n {
            labels[perm[v]] = ag.label(v);
        }
        let mut edges: Vec<(usize, usize)> = ag
            .graph()
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        edges.sort_unstable();
        let cand = (labels, edges);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (labels, edges) = best.unwrap_or_default();
    (n, edges, labels)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
