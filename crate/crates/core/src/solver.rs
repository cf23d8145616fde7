//! Complete search for I,F-partitions extending an assignment.
//!
//! Components are solved independently. Within a component, reductions
//! that keep the instance equisatisfiable are applied first; the remaining
//! reductions are tried once and abandoned for plain backtracking if the
//! reduced instance has no partition. Backtracking uses forward checking:
//! a counter of nearby `𝓘` vertices per vertex and a rollback union-find
//! over the forest side.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::configs::detect_configurations;
use crate::dsu::RollbackDsu;
use crate::graph::{AssignedGraph, Graph, Partition, Side, VertexLabel};
use crate::reduce::build;
use crate::verify::verify_if_partition;

/// Name of the environment variable holding default resource caps, e.g.
/// `IFPART_LIMITS="nodes=1000000,ms=30000"`.
pub const LIMITS_ENV: &str = "IFPART_LIMITS";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search nodes.
    pub nodes: Option<u64>,
    /// Wall-clock budget in milliseconds.
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid limits {0:?}: expected comma-separated nodes=N and ms=M")]
pub struct LimitsError(pub String);

impl Limits {
    pub fn unlimited() -> Self {
        Limits::default()
    }

    pub fn parse(spec: &str) -> Result<Self, LimitsError> {
        let mut limits = Limits::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| LimitsError(spec.into()))?;
            let value: u64 = value.trim().parse().map_err(|_| LimitsError(spec.into()))?;
            match key.trim() {
                "nodes" => limits.nodes = Some(value),
                "ms" => limits.millis = Some(value),
                _ => return Err(LimitsError(spec.into())),
            }
        }
        Ok(limits)
    }

    /// Limits from [`LIMITS_ENV`]; unlimited when unset.
    pub fn from_env() -> Result<Self, LimitsError> {
        match std::env::var(LIMITS_ENV) {
            Ok(s) => Limits::parse(&s),
            Err(_) => Ok(Limits::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub limits: Limits,
    /// Use configuration reductions before backtracking.
    pub reductions: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            limits: Limits::default(),
            reductions: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    Sat { partition: Partition },
    Unsat,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub reductions_applied: u64,
    /// Reductions whose reduced instance was unsolvable, forcing a
    /// fallback to backtracking.
    pub fallbacks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, Outcome::Sat { .. })
    }

    pub fn is_unsat(&self) -> bool {
        self.outcome == Outcome::Unsat
    }

    pub fn partition(&self) -> Option<&Partition> {
        match &self.outcome {
            Outcome::Sat { partition } => Some(partition),
            _ => None,
        }
    }
}

/// Solves with limits taken from the environment.
pub fn solve_if_partition(ag: &AssignedGraph) -> SolveResult {
    let limits = Limits::from_env().unwrap_or_else(|e| {
        log::warn!("{e}; running without limits");
        Limits::default()
    });
    solve_with(
        ag,
        &SolverOptions {
            limits,
            reductions: true,
        },
    )
}

pub fn solve_with(ag: &AssignedGraph, options: &SolverOptions) -> SolveResult {
    let mut ctx = Ctx {
        options: *options,
        start: Instant::now(),
        stats: SolveStats::default(),
    };
    let outcome = match ctx.solve(ag) {
        Res::Sat(p) => {
            let violations = verify_if_partition(ag, &p).expect("solver covers every vertex");
            assert!(violations.is_empty(), "solver produced an invalid partition: {violations:?}");
            Outcome::Sat { partition: p }
        }
        Res::Unsat => Outcome::Unsat,
        Res::Cap => Outcome::Inconclusive,
    };
    SolveResult {
        outcome,
        stats: ctx.stats,
    }
}

enum Res {
    Sat(Partition),
    Unsat,
    Cap,
}

struct Ctx {
    options: SolverOptions,
    start: Instant,
    stats: SolveStats,
}

impl Ctx {
    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        let limits = self.options.limits;
        if limits.nodes.is_some_and(|max| self.stats.nodes > max) {
            return false;
        }
        if let Some(ms) = limits.millis {
            if self.stats.nodes.is_multiple_of(1024) && self.start.elapsed() > Duration::from_millis(ms) {
                return false;
            }
        }
        true
    }

    fn solve(&mut self, ag: &AssignedGraph) -> Res {
        if ag.vertex_count() == 0 {
            return Res::Sat(Partition::default());
        }
        let components = ag.graph().components();
        if components.len() > 1 {
            return self.solve_components(ag, components);
        }
        if self.options.reductions {
            if let Some(res) = self.try_reductions(ag) {
                return res;
            }
        }
        Search::new(ag).run(self)
    }

    fn solve_components(&mut self, ag: &AssignedGraph, components: Vec<Vec<usize>>) -> Res {
        let mut sides = vec![Side::Forest; ag.vertex_count()];
        let mut capped = false;
        for comp in components {
            let (sub, origin) = ag.induced(&comp);
            match self.solve(&sub) {
                Res::Sat(p) => {
                    for &v in &p.independent {
                        sides[origin[v]] = Side::Independent;
                    }
                }
                Res::Unsat => return Res::Unsat,
                Res::Cap => capped = true,
            }
        }
        if capped {
            Res::Cap
        } else {
            Res::Sat(Partition::from_sides(&sides))
        }
    }

    /// `None` when no reduction settled the instance.
    fn try_reductions(&mut self, ag: &AssignedGraph) -> Option<Res> {
        let configs = detect_configurations(ag);
        let exact = configs
            .iter()
            .filter_map(|c| build(ag, c).ok())
            .find(|s| s.kind.preserves_solvability());
        if let Some(step) = exact {
            self.stats.reductions_applied += 1;
            return match self.solve(&step.reduced) {
                Res::Sat(p) => match step.extend(ag, &p) {
                    Ok(full) => Some(Res::Sat(full)),
                    Err(e) => {
                        log::warn!("extension failed after {:?}: {e}", step.kind);
                        self.stats.fallbacks += 1;
                        None
                    }
                },
                Res::Unsat => Some(Res::Unsat),
                Res::Cap => Some(Res::Cap),
            };
        }
        let step = configs.iter().find_map(|c| build(ag, c).ok())?;
        self.stats.reductions_applied += 1;
        match self.solve(&step.reduced) {
            Res::Sat(p) => match step.extend(ag, &p) {
                Ok(full) => return Some(Res::Sat(full)),
                Err(e) => log::warn!("extension failed after {:?}: {e}", step.kind),
            },
            Res::Cap => return Some(Res::Cap),
            Res::Unsat => {}
        }
        self.stats.fallbacks += 1;
        None
    }
}

struct Search<'a> {
    g: &'a Graph,
    labels: &'a [VertexLabel],
    near: Vec<Vec<usize>>,
    side: Vec<Option<Side>>,
    /// Number of `𝓘` vertices within distance 2.
    i_block: Vec<u32>,
    dsu: RollbackDsu,
}

impl<'a> Search<'a> {
    fn new(ag: &'a AssignedGraph) -> Self {
        let g = ag.graph();
        let n = g.vertex_count();
        Search {
            g,
            labels: ag.labels(),
            near: g.vertices().map(|v| g.second_neighborhood(v)).collect(),
            side: vec![None; n],
            i_block: vec![0; n],
            dsu: RollbackDsu::new(n),
        }
    }

    fn allowed(&self, v: usize, side: Side) -> bool {
        match side {
            Side::Independent => self.labels[v] != VertexLabel::F && self.i_block[v] == 0,
            Side::Forest => {
                if self.labels[v] == VertexLabel::I {
                    return false;
                }
                let mut roots: Vec<usize> = Vec::new();
                for &w in self.g.neighbors(v) {
                    if self.side[w] == Some(Side::Forest) {
                        let r = self.dsu.find(w);
                        if roots.contains(&r) {
                            return false;
                        }
                        roots.push(r);
                    }
                }
                true
            }
        }
    }

    fn assign(&mut self, v: usize, side: Side) {
        self.side[v] = Some(side);
        match side {
            Side::Independent => {
                for &w in &self.near[v] {
                    self.i_block[w] += 1;
                }
            }
            Side::Forest => {
                for &w in self.g.neighbors(v) {
                    if self.side[w] == Some(Side::Forest) {
                        self.dsu.union(v, w);
                    }
                }
            }
        }
    }

    fn unassign(&mut self, v: usize, side: Side, checkpoint: usize) {
        self.side[v] = None;
        match side {
            Side::Independent => {
                for &w in &self.near[v] {
                    self.i_block[w] -= 1;
                }
            }
            Side::Forest => self.dsu.rollback(checkpoint),
        }
    }

    fn run(mut self, ctx: &mut Ctx) -> Res {
        self.step(ctx)
    }

    fn step(&mut self, ctx: &mut Ctx) -> Res {
        if !ctx.tick() {
            return Res::Cap;
        }
        // Most constrained vertex first, then higher degree, then lower index.
        let mut pick: Option<(usize, usize)> = None;
        for v in self.g.vertices() {
            if self.side[v].is_some() {
                continue;
            }
            let options = [Side::Forest, Side::Independent]
                .into_iter()
                .filter(|&s| self.allowed(v, s))
                .count();
            if options == 0 {
                return Res::Unsat;
            }
            let better = match pick {
                None => true,
                Some((u, o)) => (options, std::cmp::Reverse(self.g.degree(v))) < (o, std::cmp::Reverse(self.g.degree(u))),
            };
            if better {
                pick = Some((v, options));
            }
        }
        let Some((v, _)) = pick else {
            let sides: Vec<Side> = self.side.iter().map(|s| s.expect("all assigned")).collect();
            return Res::Sat(Partition::from_sides(&sides));
        };
        for side in [Side::Forest, Side::Independent] {
            if !self.allowed(v, side) {
                continue;
            }
            let checkpoint = self.dsu.checkpoint();
            self.assign(v, side);
            let res = self.step(ctx);
            self.unassign(v, side, checkpoint);
            match res {
                Res::Unsat => {}
                other => return other,
            }
        }
        Res::Unsat
    }
}
