//! Verification of I,F-partitions against an assigned graph.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::dsu::RollbackDsu;
use crate::graph::{AssignedGraph, Partition, Side, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("partition does not cover the {0} vertices exactly once")]
    NotCovering(usize),
}

/// Why a candidate partition is not a valid I,F-partition extending the
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two independent-side vertices at distance at most 2, with the
    /// connecting path.
    DistanceConflict {
        first: usize,
        second: usize,
        path: Vec<usize>,
    },
    /// A cycle inside the forest side, listed in order.
    ForestCycle { cycle: Vec<usize> },
    /// A preassigned vertex placed on the wrong side.
    ExtensionBreach { vertex: usize, label: VertexLabel },
}

/// Returns every violation; an empty list means `p` is a valid
/// I,F-partition of `ag` with `I ⊆ 𝓘` and `F ⊆ 𝓕`.
pub fn verify_if_partition(ag: &AssignedGraph, p: &Partition) -> Result<Vec<Violation>, VerifyError> {
    let n = ag.vertex_count();
    let sides = p.sides(n).ok_or(VerifyError::NotCovering(n))?;
    let g = ag.graph();
    let mut out = Vec::new();

    for v in g.vertices() {
        match (ag.label(v), sides[v]) {
            (VertexLabel::I, Side::Forest) | (VertexLabel::F, Side::Independent) => {
                out.push(Violation::ExtensionBreach {
                    vertex: v,
                    label: ag.label(v),
                })
            }
            _ => {}
        }
    }

    let independent = |v: usize| sides[v] == Side::Independent;
    for &u in &p.independent {
        let mut reported = Vec::new();
        for &x in g.neighbors(u) {
            if independent(x) && x > u && !reported.contains(&x) {
                reported.push(x);
                out.push(Violation::DistanceConflict {
                    first: u,
                    second: x,
                    path: vec![u, x],
                });
            }
        }
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x) {
                if w > u && independent(w) && !reported.contains(&w) {
                    reported.push(w);
                    out.push(Violation::DistanceConflict {
                        first: u,
                        second: w,
                        path: vec![u, x, w],
                    });
                }
            }
        }
    }

    out.extend(
        forest_cycles(ag, &sides)
            .into_iter()
            .map(|cycle| Violation::ForestCycle { cycle }),
    );
    Ok(out)
}

pub fn is_valid_if_partition(ag: &AssignedGraph, p: &Partition) -> bool {
    matches!(verify_if_partition(ag, p), Ok(v) if v.is_empty())
}

/// One fundamental cycle per forest-side edge that closes a cycle.
fn forest_cycles(ag: &AssignedGraph, sides: &[Side]) -> Vec<Vec<usize>> {
    let g = ag.graph();
    let n = g.vertex_count();
    let mut dsu = RollbackDsu::new(n);
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cycles = Vec::new();
    for &(u, v) in g.edges() {
        if sides[u] != Side::Forest || sides[v] != Side::Forest {
            continue;
        }
        if dsu.union(u, v) {
            tree_adj[u].push(v);
            tree_adj[v].push(u);
        } else {
            cycles.push(tree_path(&tree_adj, v, u));
        }
    }
    cycles
}

fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path
}
