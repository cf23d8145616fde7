//! Constructive reductions: each detected configuration yields a smaller
//! assigned graph and a rule that turns any I,F-partition of the smaller
//! graph into one of the original.
//!
//! Deletions of C1, C2, C3 and 1-vertices in `F` preserve solvability in
//! both directions. Contraction of a 2-vertex in `F` and the CL7–CL9
//! reductions (which also relabel bordering `U` vertices to `F`) are only
//! sound in the extension direction; the solver treats them as attempts.

use serde::Serialize;
use thiserror::Error;

use crate::configs::{detect_configurations, ConfigKind, ConfigurationReport};
use crate::graph::{AssignedGraph, Graph, Partition, Side, VertexLabel};
use crate::threads::ThreadKind;
use crate::verify::{verify_if_partition, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReductionKind {
    C1,
    C2,
    C3,
    Cl6Delete,
    Cl6Contract,
    Cl7Open,
    Cl7Closed,
    Cl8,
    Cl9,
}

impl ReductionKind {
    /// Whether the reduced instance is solvable exactly when the original is.
    pub fn preserves_solvability(self) -> bool {
        matches!(
            self,
            ReductionKind::C1 | ReductionKind::C2 | ReductionKind::C3 | ReductionKind::Cl6Delete
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("configuration {kind:?} at vertex {anchor} is not present")]
    Stale { kind: ConfigKind, anchor: usize },
    #[error("{0:?} has no reduction")]
    NotReducible(ConfigKind),
    #[error("cannot contract at {vertex}: its neighbors {u} and {w} are adjacent")]
    AdjacentNeighbors { vertex: usize, u: usize, w: usize },
    #[error("partition does not cover the reduced instance")]
    BadReducedPartition,
    #[error("extended partition is invalid: {0:?}")]
    ExtensionFailed(Vec<Violation>),
}

/// How the removed vertices are placed once the reduced instance is solved.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Plan {
    /// Every removed vertex goes to the forest side.
    AllForest,
    /// Path `a - x - v - y - b`: forest if `a` or `b` is independent,
    /// otherwise `v` independent.
    ThreadCentre {
        centre: usize,
        ends: [usize; 2],
    },
    /// `centre` independent, the rest forest.
    CentreIndependent { centre: usize },
    /// Open 2-thread `v - y - z - c`: forest if `v` or `c` is independent,
    /// otherwise `y` independent.
    OpenTwoThread { v: usize, y: usize, c: usize },
    /// Closed 2-thread at `v`: `y` independent, `v` and `z` forest.
    ClosedTwoThread { y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    /// Original vertices deleted from the instance.
    pub removed: Vec<usize>,
    /// Original vertices whose neighborhood changed (contraction target).
    pub modified: Vec<usize>,
    /// Original vertices relabeled from `U` to `F`.
    pub reassigned: Vec<usize>,
    pub reduced: AssignedGraph,
    /// Original index of each vertex of `reduced`.
    pub origin: Vec<usize>,
    plan: Plan,
}

impl ReductionStep {
    /// Lifts a partition of `reduced` to `original` and verifies it.
    pub fn extend(&self, original: &AssignedGraph, reduced: &Partition) -> Result<Partition, ReduceError> {
        let small = reduced
            .sides(self.reduced.vertex_count())
            .ok_or(ReduceError::BadReducedPartition)?;
        let mut sides: Vec<Option<Side>> = vec![None; original.vertex_count()];
        for (i, &v) in self.origin.iter().enumerate() {
            sides[v] = Some(small[i]);
        }
        let independent = |v: usize| sides[v] == Some(Side::Independent);
        let chosen = match self.plan {
            Plan::AllForest => None,
            Plan::ThreadCentre { centre, ends } => (!ends.iter().any(|&e| independent(e))).then_some(centre),
            Plan::CentreIndependent { centre } => Some(centre),
            Plan::OpenTwoThread { v, y, c } => (!independent(v) && !independent(c)).then_some(y),
            Plan::ClosedTwoThread { y } => Some(y),
        };
        if let Some(v) = chosen {
            sides[v] = Some(Side::Independent);
        }
        let sides: Vec<Side> = sides.into_iter().map(|s| s.unwrap_or(Side::Forest)).collect();
        let p = Partition::from_sides(&sides);
        let violations = verify_if_partition(original, &p).expect("sides cover every vertex");
        if violations.is_empty() {
            Ok(p)
        } else {
            Err(ReduceError::ExtensionFailed(violations))
        }
    }
}

fn delete(
    ag: &AssignedGraph,
    kind: ReductionKind,
    removed: Vec<usize>,
    reassign: &[usize],
    plan: Plan,
) -> ReductionStep {
    let mut gone = vec![false; ag.vertex_count()];
    for &v in &removed {
        gone[v] = true;
    }
    let keep: Vec<usize> = ag.graph().vertices().filter(|&v| !gone[v]).collect();
    let (mut reduced, origin) = ag.induced(&keep);
    let mut reassigned = Vec::new();
    for (i, &v) in origin.iter().enumerate() {
        if reassign.contains(&v) && ag.label(v) == VertexLabel::U {
            reduced = reduced.with_label(i, VertexLabel::F).expect("in range");
            reassigned.push(v);
        }
    }
    ReductionStep {
        kind,
        removed,
        modified: Vec::new(),
        reassigned,
        reduced,
        origin,
        plan,
    }
}

fn other_neighbor(g: &Graph, of: usize, not: usize) -> usize {
    *g.neighbors(of).iter().find(|&&w| w != not).expect("degree-2 vertex")
}

/// Builds the reduction for a configuration previously reported on `ag`.
pub fn reduce_configuration(ag: &AssignedGraph, config: &ConfigurationReport) -> Result<ReductionStep, ReduceError> {
    if !detect_configurations(ag).contains(config) {
        return Err(ReduceError::Stale {
            kind: config.kind,
            anchor: config.anchor,
        });
    }
    build(ag, config)
}

/// Same as [`reduce_configuration`] without re-running detection; the
/// caller vouches that `config` came from `ag`.
pub(crate) fn build(ag: &AssignedGraph, config: &ConfigurationReport) -> Result<ReductionStep, ReduceError> {
    let g = ag.graph();
    let v = config.anchor;
    let step = match config.kind {
        ConfigKind::C1 => delete(ag, ReductionKind::C1, vec![v], &[], Plan::AllForest),
        ConfigKind::Cl6One => delete(ag, ReductionKind::Cl6Delete, vec![v], &[], Plan::AllForest),
        ConfigKind::C2 => {
            let (x, y) = (config.vertices[1], config.vertices[2]);
            let ends = [other_neighbor(g, x, v), other_neighbor(g, y, v)];
            delete(
                ag,
                ReductionKind::C2,
                vec![v, x, y],
                &[],
                Plan::ThreadCentre { centre: v, ends },
            )
        }
        ConfigKind::C3 => delete(
            ag,
            ReductionKind::C3,
            config.vertices.clone(),
            &[],
            Plan::CentreIndependent { centre: v },
        ),
        ConfigKind::Cl6Two => {
            let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
            if g.has_edge(u, w) {
                return Err(ReduceError::AdjacentNeighbors { vertex: v, u, w });
            }
            let keep: Vec<usize> = g.vertices().filter(|&x| x != v).collect();
            let mut index = vec![usize::MAX; g.vertex_count()];
            for (i, &x) in keep.iter().enumerate() {
                index[x] = i;
            }
            let edges = g
                .edges()
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (index[a], index[b]))
                .chain([(index[u], index[w])]);
            let graph = Graph::from_edges(keep.len(), edges).expect("simple");
            let labels = keep.iter().map(|&x| ag.label(x)).collect();
            ReductionStep {
                kind: ReductionKind::Cl6Contract,
                removed: vec![v],
                modified: vec![u],
                reassigned: Vec::new(),
                reduced: AssignedGraph::new(graph, labels).expect("sized"),
                origin: keep,
                plan: Plan::AllForest,
            }
        }
        ConfigKind::Cl7 => {
            let t = config.threads.first().expect("CL7 lists its 2-threads");
            match t.kind {
                ThreadKind::Closed => {
                    let (y, z) = (t.internal[0], t.internal[1]);
                    let rest: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != y && w != z).collect();
                    delete(
                        ag,
                        ReductionKind::Cl7Closed,
                        vec![v, y, z],
                        &rest,
                        Plan::ClosedTwoThread { y },
                    )
                }
                ThreadKind::Open => {
                    // Orient the thread so that `y` is next to `v`.
                    let (y, z, c) = if t.borders[0] == v {
                        (t.internal[0], t.internal[1], t.borders[1])
                    } else {
                        (t.internal[1], t.internal[0], t.borders[0])
                    };
                    let rest: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != y).collect();
                    delete(
                        ag,
                        ReductionKind::Cl7Open,
                        vec![y, z],
                        &rest,
                        Plan::OpenTwoThread { v, y, c },
                    )
                }
            }
        }
        ConfigKind::Cl8 => {
            let borders: Vec<usize> = config.threads.iter().filter_map(|t| t.far_border(v)).collect();
            let mut removed = vec![v];
            removed.extend(config.threads.iter().map(|t| t.internal[0]));
            delete(
                ag,
                ReductionKind::Cl8,
                removed,
                &borders,
                Plan::CentreIndependent { centre: v },
            )
        }
        ConfigKind::Cl9 => {
            let one = config.threads.iter().find(|t| t.len() == 1).expect("CL9 lists its 1-thread");
            let a = one.far_border(v).expect("v borders its threads");
            let mut removed = vec![v];
            for t in &config.threads {
                removed.extend_from_slice(&t.internal);
            }
            delete(
                ag,
                ReductionKind::Cl9,
                removed,
                &[a],
                Plan::CentreIndependent { centre: v },
            )
        }
        kind @ (ConfigKind::DegenerateIsolated | ConfigKind::DegenerateAllUCycle) => {
            return Err(ReduceError::NotReducible(kind))
        }
    };
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn config(ag: &AssignedGraph, kind: ConfigKind, anchor: usize) -> ConfigurationReport {
        detect_configurations(ag)
            .into_iter()
            .find(|r| r.kind == kind && r.anchor == anchor)
            .unwrap_or_else(|| panic!("no {kind:?} at {anchor}"))
    }

    #[test]
    fn c1_on_path_leaf() {
        let ag = AssignedGraph::unassigned(named::path(4));
        let step = reduce_configuration(&ag, &config(&ag, ConfigKind::C1, 3)).unwrap();
        assert_eq!(step.reduced.graph(), &named::path(3));
        let p = step.extend(&ag, &Partition::new(vec![], vec![0, 1, 2])).unwrap();
        assert_eq!(p.forest, vec![0, 1, 2, 3]);
    }

    fn c2_instance() -> AssignedGraph {
        // Triangles 0,1,2 and 3,4,5 joined by the path 0-6-7-8-3.
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 7), (7, 8), (8, 3)];
        AssignedGraph::unassigned(Graph::from_edges(9, edges).unwrap())
    }

    #[test]
    fn c2_centre_goes_independent_when_borders_are_forest() {
        let ag = c2_instance();
        let step = reduce_configuration(&ag, &config(&ag, ConfigKind::C2, 7)).unwrap();
        assert_eq!(step.removed, vec![7, 6, 8]);
        assert_eq!(step.reduced.vertex_count(), 6);
        let reduced = Partition::new(vec![1, 4], vec![0, 2, 3, 5]);
        let p = step.extend(&ag, &reduced).unwrap();
        assert_eq!(p.independent, vec![1, 4, 7]);
        // With border 0 independent the thread goes to the forest.
        let reduced = Partition::new(vec![0, 4], vec![1, 2, 3, 5]);
        let p = step.extend(&ag, &reduced).unwrap();
        assert_eq!(p.independent, vec![0, 4]);
    }

    #[test]
    fn stale_configuration_rejected() {
        let ag = AssignedGraph::unassigned(named::path(4));
        let c = config(&ag, ConfigKind::C1, 3);
        let other = AssignedGraph::unassigned(named::cycle(4));
        assert!(matches!(reduce_configuration(&other, &c), Err(ReduceError::Stale { .. })));
    }

    #[test]
    fn cl8_spider_reassigns_borders() {
        // v=0 with 1-threads 1,2,3 to borders 4,5,6, which lie on the
        // 6-cycle 4-7-5-8-6-9.
        let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
            .into_iter()
            .chain([(4, 7), (7, 5), (5, 8), (8, 6), (6, 9), (9, 4)]);
        let ag = AssignedGraph::unassigned(Graph::from_edges(10, edges).unwrap());
        let step = reduce_configuration(&ag, &config(&ag, ConfigKind::Cl8, 0)).unwrap();
        assert_eq!(step.kind, ReductionKind::Cl8);
        assert_eq!(step.removed, vec![0, 1, 2, 3]);
        assert_eq!(step.reassigned, vec![4, 5, 6]);
        assert!(step.reduced.labels()[..3].iter().all(|&l| l == VertexLabel::F));
        let reduced = Partition::new(vec![3], vec![0, 1, 2, 4, 5]);
        let p = step.extend(&ag, &reduced).unwrap();
        assert_eq!(p.independent, vec![0, 7]);
    }

    #[test]
    fn cl6_contraction() {
        // 4-cycle with one F vertex of degree 2 plus a chord elsewhere.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]).unwrap();
        let ag = AssignedGraph::unassigned(g).with_label(0, VertexLabel::F).unwrap();
        let step = reduce_configuration(&ag, &config(&ag, ConfigKind::Cl6Two, 0)).unwrap();
        assert_eq!(step.kind, ReductionKind::Cl6Contract);
        assert_eq!(step.modified, vec![1]);
        assert!(step.reduced.graph().has_edge(0, 2)); // 1-3 in original indices
        let reduced = Partition::new(vec![1], vec![0, 2, 3]);
        let p = step.extend(&ag, &reduced).unwrap();
        assert_eq!(p.independent, vec![2]);

        let tri = AssignedGraph::unassigned(named::cycle(3)).with_label(0, VertexLabel::F).unwrap();
        let c = config(&tri, ConfigKind::Cl6Two, 0);
        assert!(matches!(
            reduce_configuration(&tri, &c),
            Err(ReduceError::AdjacentNeighbors { .. })
        ));
    }

    #[test]
    fn degenerate_not_reducible() {
        let ag = AssignedGraph::unassigned(named::cycle(4));
        let c = config(&ag, ConfigKind::DegenerateAllUCycle, 0);
        assert!(matches!(reduce_configuration(&ag, &c), Err(ReduceError::NotReducible(_))));
    }
}
