//! Star colorings: verification (two independent checkers), the forest
//! 3-coloring, the 4-coloring induced by an I,F-partition, and exact star
//! chromatic numbers for small graphs.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{AssignedGraph, Graph, Partition, StarColoring};
use crate::verify::verify_if_partition;

pub const DEFAULT_CHROMATIC_CAP: usize = 12;
/// Color given to the independent side by [`star_coloring_from_partition`].
pub const INDEPENDENT_COLOR: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("graph contains a cycle")]
    NotForest,
    #[error("partition is not a valid I,F-partition ({0} violations)")]
    InvalidPartition(usize),
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    PartialColoring { expected: usize, got: usize },
    #[error("vertex {0} has color 0; colors are 1-based")]
    ZeroColor(usize),
    #[error("exact search limited to {cap} vertices, graph has {n}")]
    CapExceeded { cap: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringResult {
    pub coloring: StarColoring,
    pub colors_used: usize,
}

impl ColoringResult {
    fn from_colors(colors: Vec<u32>) -> Self {
        let coloring = StarColoring::new(colors);
        let colors_used = coloring.colors_used();
        ColoringResult {
            coloring,
            colors_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StarViolation {
    Improper { u: usize, v: usize },
    /// A path on four vertices using only two colors.
    BicoloredPath { path: [usize; 4] },
    /// A component of a two-color union that is not a star.
    NonStarComponent { colors: (u32, u32), component: Vec<usize> },
}

fn check_total(g: &Graph, c: &StarColoring) -> Result<(), ColoringError> {
    if c.colors.len() != g.vertex_count() {
        return Err(ColoringError::PartialColoring {
            expected: g.vertex_count(),
            got: c.colors.len(),
        });
    }
    if let Some(v) = c.colors.iter().position(|&x| x == 0) {
        return Err(ColoringError::ZeroColor(v));
    }
    Ok(())
}

fn improper_edges(g: &Graph, col: &[u32]) -> Vec<StarViolation> {
    g.edges()
        .iter()
        .filter(|&&(u, v)| col[u] == col[v])
        .map(|&(u, v)| StarViolation::Improper { u, v })
        .collect()
}

/// Accepts iff the coloring is proper and no path on four vertices is
/// colored with two colors.
pub fn verify_star_coloring(g: &Graph, c: &StarColoring) -> Result<Vec<StarViolation>, ColoringError> {
    check_total(g, c)?;
    let col = &c.colors;
    let mut out = improper_edges(g, col);
    if !out.is_empty() {
        return Ok(out);
    }
    for &(x, y) in g.edges() {
        for (b, cc) in [(x, y), (y, x)] {
            for &a in g.neighbors(b) {
                if a == cc || col[a] != col[cc] {
                    continue;
                }
                for &d in g.neighbors(cc) {
                    if d != b && col[d] == col[b] && a < d {
                        out.push(StarViolation::BicoloredPath { path: [a, b, cc, d] });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Independent checker: for every pair of colors, each component of the
/// induced union must be a star (a tree with at most one vertex of
/// degree above 1).
pub fn verify_star_coloring_by_components(
    g: &Graph,
    c: &StarColoring,
) -> Result<Vec<StarViolation>, ColoringError> {
    check_total(g, c)?;
    let col = &c.colors;
    let mut out = improper_edges(g, col);
    if !out.is_empty() {
        return Ok(out);
    }
    let palette: Vec<u32> = col.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    for (i, &ca) in palette.iter().enumerate() {
        for &cb in &palette[i + 1..] {
            let keep: Vec<usize> = g.vertices().filter(|&v| col[v] == ca || col[v] == cb).collect();
            let (sub, map) = g.induced_subgraph(&keep);
            for comp in sub.components() {
                let edges = comp.iter().map(|&v| sub.degree(v)).sum::<usize>() / 2;
                let hubs = comp.iter().filter(|&&v| sub.degree(v) > 1).count();
                if edges + 1 != comp.len() || hubs > 1 {
                    out.push(StarViolation::NonStarComponent {
                        colors: (ca, cb),
                        component: comp.iter().map(|&v| map[v]).collect(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Colors each tree by BFS depth mod 3 from its lowest-indexed vertex.
pub fn star_color_forest(g: &Graph) -> Result<ColoringResult, ColoringError> {
    if !g.is_forest() {
        return Err(ColoringError::NotForest);
    }
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    for root in 0..n {
        if colors[root] != 0 {
            continue;
        }
        colors[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if colors[w] == 0 {
                    colors[w] = colors[u] % 3 + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(ColoringResult::from_colors(colors))
}

/// Star 3-colors the forest side and gives every independent vertex
/// color 4.
pub fn star_coloring_from_partition(g: &Graph, p: &Partition) -> Result<ColoringResult, ColoringError> {
    let ag = AssignedGraph::unassigned(g.clone());
    let violations = verify_if_partition(&ag, p).map_err(|_| ColoringError::InvalidPartition(1))?;
    if !violations.is_empty() {
        return Err(ColoringError::InvalidPartition(violations.len()));
    }
    let (forest, map) = g.induced_subgraph(&p.forest);
    let inner = star_color_forest(&forest)?;
    let mut colors = vec![INDEPENDENT_COLOR; g.vertex_count()];
    for (i, &v) in map.iter().enumerate() {
        colors[v] = inner.coloring.colors[i];
    }
    let result = ColoringResult::from_colors(colors);
    debug_assert!(verify_star_coloring(g, &result.coloring).unwrap().is_empty());
    Ok(result)
}

pub fn star_chromatic_number(g: &Graph) -> Result<ColoringResult, ColoringError> {
    star_chromatic_number_capped(g, DEFAULT_CHROMATIC_CAP)
}

/// Smallest `k` admitting a star `k`-coloring, with a witness.
pub fn star_chromatic_number_capped(g: &Graph, cap: usize) -> Result<ColoringResult, ColoringError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(ColoringError::CapExceeded { cap, n });
    }
    if n == 0 {
        return Ok(ColoringResult::from_colors(Vec::new()));
    }
    let order = search_order(g);
    for k in 1..=n as u32 {
        let mut colors = vec![0u32; n];
        if extend_coloring(g, &order, 0, k, 0, &mut colors) {
            return Ok(ColoringResult::from_colors(colors));
        }
    }
    unreachable!("n distinct colors always form a star coloring")
}

/// BFS order from the highest-degree vertex of each component, so every
/// vertex after the first in its component has a colored neighbor.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut by_degree: Vec<usize> = g.vertices().collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &s in &by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
            for w in next {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

fn extend_coloring(g: &Graph, order: &[usize], idx: usize, k: u32, max_used: u32, colors: &mut [u32]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for c in 1..=k.min(max_used + 1) {
        if admissible(g, colors, v, c) {
            colors[v] = c;
            if extend_coloring(g, order, idx + 1, k, max_used.max(c), colors) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}

/// Whether coloring `v` with `c` keeps the partial coloring proper and
/// free of bicolored 4-vertex paths through `v` (0 = uncolored).
fn admissible(g: &Graph, colors: &[u32], v: usize, c: u32) -> bool {
    let nv = g.neighbors(v);
    if nv.iter().any(|&x| colors[x] == c) {
        return false;
    }
    for &x in nv {
        let cx = colors[x];
        if cx == 0 {
            continue;
        }
        // v second on the path: a - v - x - d.
        let a_exists = nv.iter().any(|&a| a != x && colors[a] == cx);
        if a_exists && g.neighbors(x).iter().any(|&d| d != v && colors[d] == c) {
            return false;
        }
        // v first on the path: v - x - y - d.
        for &y in g.neighbors(x) {
            if y != v
                && colors[y] == c
                && g.neighbors(y).iter().any(|&d| d != x && colors[d] == cx)
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn both(g: &Graph, colors: &[u32]) -> (bool, bool) {
        let c = StarColoring::new(colors.to_vec());
        (
            verify_star_coloring(g, &c).unwrap().is_empty(),
            verify_star_coloring_by_components(g, &c).unwrap().is_empty(),
        )
    }

    #[test]
    fn p4_examples() {
        let p4 = named::path(4);
        assert_eq!(both(&p4, &[1, 2, 1, 2]), (false, false));
        assert_eq!(both(&p4, &[1, 2, 3, 1]), (true, true));
        let v = verify_star_coloring(&p4, &StarColoring::new(vec![1, 2, 1, 2])).unwrap();
        assert_eq!(v, vec![StarViolation::BicoloredPath { path: [0, 1, 2, 3] }]);
    }

    #[test]
    fn c5_bicolored_path() {
        assert_eq!(both(&named::cycle(5), &[1, 2, 1, 2, 3]), (false, false));
    }

    #[test]
    fn improper_and_partial() {
        let p2 = named::path(2);
        assert_eq!(both(&p2, &[1, 1]), (false, false));
        assert!(matches!(
            verify_star_coloring(&p2, &StarColoring::new(vec![1])),
            Err(ColoringError::PartialColoring { .. })
        ));
        assert_eq!(
            verify_star_coloring(&p2, &StarColoring::new(vec![0, 1])),
            Err(ColoringError::ZeroColor(0))
        );
    }

    #[test]
    fn forest_colorings() {
        let r = star_color_forest(&Graph::empty(1)).unwrap();
        assert_eq!((r.coloring.colors.clone(), r.colors_used), (vec![1], 1));

        let r = star_color_forest(&named::path(7)).unwrap();
        assert_eq!(r.coloring.colors, vec![1, 2, 3, 1, 2, 3, 1]);
        assert_eq!(both(&named::path(7), &r.coloring.colors), (true, true));

        let r = star_color_forest(&named::star(4)).unwrap();
        assert_eq!(r.coloring.colors, vec![1, 2, 2, 2, 2]);
        assert_eq!(r.colors_used, 2);

        assert_eq!(star_color_forest(&named::cycle(3)), Err(ColoringError::NotForest));
    }

    #[test]
    fn coloring_from_partition() {
        let r = star_coloring_from_partition(&named::path(5), &Partition::new(vec![], (0..5).collect())).unwrap();
        assert_eq!(r.colors_used, 3);

        let c5 = named::cycle(5);
        let r = star_coloring_from_partition(&c5, &Partition::new(vec![0], vec![1, 2, 3, 4])).unwrap();
        assert_eq!(r.colors_used, 4);
        assert_eq!(both(&c5, &r.coloring.colors), (true, true));

        let bad = Partition::new(vec![], (0..5).collect());
        assert!(matches!(
            star_coloring_from_partition(&c5, &bad),
            Err(ColoringError::InvalidPartition(_))
        ));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(star_chromatic_number(&named::path(4)).unwrap().colors_used, 3);
        assert_eq!(star_chromatic_number(&named::cycle(5)).unwrap().colors_used, 4);
        assert_eq!(star_chromatic_number(&named::complete_bipartite(3, 3)).unwrap().colors_used, 4);
        assert_eq!(star_chromatic_number(&named::complete(4)).unwrap().colors_used, 4);
        assert_eq!(star_chromatic_number(&named::star(6)).unwrap().colors_used, 2);
        assert!(matches!(
            star_chromatic_number(&Graph::empty(13)),
            Err(ColoringError::CapExceeded { .. })
        ));
    }
}
