//! Property checks over seeded random corpora.
//!
//! Each check draws instances from `sample_rng(seed, i)` for `i = 0, 1, …`
//! and keeps going until `samples` instances have passed the check's
//! filter (or the attempt budget runs out). The first failing instance is
//! returned verbatim so it can be dumped for triage.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::coloring::{star_coloring_from_partition, verify_star_coloring, verify_star_coloring_by_components};
use crate::configs::{canonical_form, detect_configurations, enumerate_low_potential_configs};
use crate::discharge::{audit_lemma8, run_discharging, Lemma8Verdict};
use crate::format::{to_assignment, to_graph6};
use crate::gadget::{attach_f_gadget, attach_i_gadget, expand_to_unassigned};
use crate::generate::{connected, gnm, max_edges, random_labels, sample_rng, sparse_near_threshold, LabelMix};
use crate::graph::{named, AssignedGraph, Graph, Partition, Side, VertexLabel};
use crate::potential::{
    all_potentials_positive, brute_force_mad, brute_force_min_potential, mad, min_potential, potential, threshold,
    total_potential, Rational,
};
use crate::solver::{solve_with, SolverOptions};
use crate::verify::is_valid_if_partition;

/// Generated instances per requested sample before a check gives up.
pub const ATTEMPTS_PER_SAMPLE: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    MadPartition,
    PotentialPartition,
    Star4,
    Lemma8,
    GadgetForcing,
    Claim4,
    OracleMinpot,
    OracleMad,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::MadPartition,
        Theorem::PotentialPartition,
        Theorem::Star4,
        Theorem::Lemma8,
        Theorem::GadgetForcing,
        Theorem::Claim4,
        Theorem::OracleMinpot,
        Theorem::OracleMad,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::MadPartition => "mad-partition",
            Theorem::PotentialPartition => "potential-partition",
            Theorem::Star4 => "star4",
            Theorem::Lemma8 => "lemma8",
            Theorem::GadgetForcing => "gadget-forcing",
            Theorem::Claim4 => "claim4",
            Theorem::OracleMinpot => "oracle-minpot",
            Theorem::OracleMad => "oracle-mad",
        }
    }

    /// `(max_n, samples)` used when the caller does not specify them.
    pub fn defaults(self) -> (usize, u64) {
        match self {
            Theorem::MadPartition | Theorem::Star4 => (10, 500),
            Theorem::PotentialPartition => (10, 300),
            Theorem::Lemma8 => (12, 500),
            Theorem::GadgetForcing => (10, 100),
            Theorem::Claim4 => (4, 1),
            Theorem::OracleMinpot => (14, 200),
            Theorem::OracleMad => (12, 300),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTheorem(pub String);

impl fmt::Display for UnknownTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = Theorem::ALL.iter().map(|t| t.name()).collect();
        write!(f, "unknown theorem {:?}; expected one of {}", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownTheorem {}

impl FromStr for Theorem {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub max_n: usize,
    pub samples: u64,
    pub seed: u64,
}

impl CheckConfig {
    pub fn defaults(theorem: Theorem, seed: u64) -> Self {
        let (max_n, samples) = theorem.defaults();
        CheckConfig { max_n, samples, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Attempt index; regenerate with `sample_rng(seed, sample)`.
    pub sample: u64,
    pub graph6: String,
    /// Non-`U` labels as `v L` lines.
    pub assignment: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theorem: Theorem,
    pub config: CheckConfig,
    /// Instances generated, including those rejected by the filter.
    pub attempts: u64,
    /// Instances that passed the filter and were checked.
    pub tested: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(theorem: Theorem, config: CheckConfig) -> Self {
        CheckReport {
            theorem,
            config,
            attempts: 0,
            tested: 0,
            failures: 0,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.tested >= self.config.samples
    }

    fn fail(&mut self, sample: u64, ag: &AssignedGraph, detail: impl Into<String>) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                sample,
                graph6: to_graph6(ag.graph()),
                assignment: to_assignment(ag),
                detail: detail.into(),
            });
        }
    }
}

/// What a sampled instance turned out to be.
enum Verdict {
    /// Rejected by the filter.
    Skip,
    Pass,
    Fail(String),
}

/// Σμ_i = -ρ(G) at every stage of the discharging run.
pub fn conservation_holds(ag: &AssignedGraph) -> bool {
    let expected = Rational::from_integer(-total_potential(ag));
    run_discharging(ag).stage_totals().iter().all(|&t| t == expected)
}

/// Runs one property check.
pub fn run_check(theorem: Theorem, config: CheckConfig) -> CheckReport {
    match theorem {
        Theorem::Claim4 => check_low_potential(config),
        Theorem::GadgetForcing => check_gadget_forcing(config),
        _ => sampled(theorem, config),
    }
}

fn sampled(theorem: Theorem, config: CheckConfig) -> CheckReport {
    let mut report = CheckReport::new(theorem, config);
    let budget = config.samples.saturating_mul(ATTEMPTS_PER_SAMPLE).max(1);
    let mut config_free = 0u64;
    while report.tested < config.samples && report.attempts < budget {
        let index = report.attempts;
        report.attempts += 1;
        let mut rng = sample_rng(config.seed, index);
        let ag = draw(theorem, config.max_n, &mut rng);
        let verdict = match theorem {
            Theorem::MadPartition => mad_partition(&ag, false),
            Theorem::Star4 => mad_partition(&ag, true),
            Theorem::PotentialPartition => potential_partition(&ag),
            Theorem::Lemma8 => discharging_contrapositive(&ag, &mut config_free),
            Theorem::OracleMinpot => oracle_minpot(&ag),
            Theorem::OracleMad => oracle_mad(ag.graph()),
            Theorem::Claim4 | Theorem::GadgetForcing => unreachable!("not sampled"),
        };
        let verdict = match verdict {
            Verdict::Skip => continue,
            v if !conservation_holds(&ag) => match v {
                Verdict::Fail(d) => Verdict::Fail(d),
                _ => Verdict::Fail("charge not conserved".into()),
            },
            v => v,
        };
        report.tested += 1;
        if let Verdict::Fail(detail) = verdict {
            report.fail(index, &ag, detail);
        }
    }
    if report.tested < config.samples {
        report.notes.push(format!(
            "only {} of {} samples passed the filter in {} attempts",
            report.tested, config.samples, report.attempts
        ));
    }
    if theorem == Theorem::Lemma8 {
        report.notes.push(format!("{config_free} configuration-free instances audited"));
    }
    report
}

fn draw<R: Rng>(theorem: Theorem, max_n: usize, rng: &mut R) -> AssignedGraph {
    let max_n = max_n.max(1);
    match theorem {
        Theorem::MadPartition | Theorem::Star4 => {
            let n = rng.random_range(1..=max_n);
            AssignedGraph::unassigned(sparse_near_threshold(n, threshold(), rng).expect("m within range"))
        }
        Theorem::PotentialPartition => {
            let n = rng.random_range(1..=max_n);
            let g = sparse_near_threshold(n, Rational::from_integer(2), rng).expect("m within range");
            random_labels(g, LabelMix::default(), rng)
        }
        Theorem::Lemma8 => {
            let n = rng.random_range(2..=max_n.max(2));
            let extra = rng.random_range(0..=n);
            let g = connected(n, extra, rng);
            random_labels(g, LabelMix::default(), rng)
        }
        Theorem::OracleMinpot => {
            let n = rng.random_range(1..=max_n);
            let m = rng.random_range(0..=max_edges(n).min(2 * n));
            random_labels(gnm(n, m, rng).expect("m within range"), LabelMix { i: 1, f: 1, u: 1 }, rng)
        }
        Theorem::OracleMad | Theorem::GadgetForcing => {
            let n = rng.random_range(1..=max_n);
            let m = rng.random_range(0..=max_edges(n).min(2 * n + 2));
            let g = gnm(n, m, rng).expect("m within range");
            if theorem == Theorem::GadgetForcing {
                random_labels(g, LabelMix { i: 1, f: 1, u: 2 }, rng)
            } else {
                AssignedGraph::unassigned(g)
            }
        }
        Theorem::Claim4 => unreachable!("not sampled"),
    }
}

fn solve_verified(ag: &AssignedGraph) -> Result<Partition, String> {
    let r = solve_with(ag, &SolverOptions::default());
    match r.partition() {
        Some(p) if is_valid_if_partition(ag, p) => Ok(p.clone()),
        Some(_) => Err("solver returned an invalid partition".into()),
        None => Err(format!("solver outcome {:?}", r.outcome)),
    }
}

fn mad_partition(ag: &AssignedGraph, chain: bool) -> Verdict {
    let m = mad(ag.graph()).expect("nonempty");
    if m.value >= threshold() {
        return Verdict::Skip;
    }
    let p = match solve_verified(ag) {
        Ok(p) => p,
        Err(e) => return Verdict::Fail(format!("mad {} but {e}", m.value)),
    };
    if chain {
        let c = match star_coloring_from_partition(ag.graph(), &p) {
            Ok(c) => c,
            Err(e) => return Verdict::Fail(e.to_string()),
        };
        let primary = verify_star_coloring(ag.graph(), &c.coloring).expect("total");
        let dual = verify_star_coloring_by_components(ag.graph(), &c.coloring).expect("total");
        if c.colors_used > 4 || !primary.is_empty() || !dual.is_empty() {
            return Verdict::Fail(format!(
                "coloring with {} colors, {} P4 and {} component violations",
                c.colors_used,
                primary.len(),
                dual.len()
            ));
        }
    }
    Verdict::Pass
}

fn potential_partition(ag: &AssignedGraph) -> Verdict {
    if !all_potentials_positive(ag).expect("nonempty") {
        return Verdict::Skip;
    }
    match solve_verified(ag) {
        Ok(_) => Verdict::Pass,
        Err(e) => Verdict::Fail(format!("all potentials positive but {e}")),
    }
}

fn discharging_contrapositive(ag: &AssignedGraph, config_free: &mut u64) -> Verdict {
    let configs = detect_configurations(ag);
    if configs.iter().any(|c| c.kind.is_degenerate()) {
        return Verdict::Skip;
    }
    if configs.is_empty() {
        *config_free += 1;
        if let v @ Lemma8Verdict::Violated { .. } = audit_lemma8(ag) {
            return Verdict::Fail(format!("configuration-free audit failed: {v:?}"));
        }
    }
    if total_potential(ag) <= 0 {
        return Verdict::Skip;
    }
    if configs.is_empty() {
        Verdict::Fail(format!("potential {} but no configuration", total_potential(ag)))
    } else {
        Verdict::Pass
    }
}

fn oracle_minpot(ag: &AssignedGraph) -> Verdict {
    let fast = min_potential(ag).expect("nonempty");
    let slow = brute_force_min_potential(ag).expect("within cap");
    if fast.value != slow.value {
        return Verdict::Fail(format!("flow {} vs brute force {}", fast.value, slow.value));
    }
    if fast.vertices.is_empty() || potential(ag, &fast.vertices) != Ok(fast.value) {
        return Verdict::Fail(format!("witness {:?} does not attain {}", fast.vertices, fast.value));
    }
    Verdict::Pass
}

fn oracle_mad(g: &Graph) -> Verdict {
    let fast = mad(g).expect("nonempty");
    let slow = brute_force_mad(g).expect("within cap");
    if fast.value != slow.value {
        return Verdict::Fail(format!("flow {} vs brute force {}", fast.value, slow.value));
    }
    let mut mask = vec![false; g.vertex_count()];
    for &v in &fast.vertices {
        mask[v] = true;
    }
    let density = Rational::new(2 * g.induced_edge_count(&mask) as i64, fast.vertices.len().max(1) as i64);
    if fast.vertices.is_empty() || density != fast.value {
        return Verdict::Fail(format!("witness {:?} has density {density}", fast.vertices));
    }
    Verdict::Pass
}

fn check_low_potential(config: CheckConfig) -> CheckReport {
    use VertexLabel::*;
    let mut report = CheckReport::new(Theorem::Claim4, CheckConfig { samples: 1, ..config });
    let found = enumerate_low_potential_configs();
    let expected = [
        AssignedGraph::new(Graph::empty(1), vec![I]),
        AssignedGraph::new(Graph::empty(2), vec![I, I]),
        AssignedGraph::new(named::path(2), vec![I, U]),
        AssignedGraph::new(named::path(2), vec![I, F]),
        AssignedGraph::new(Graph::from_edges(3, [(0, 1)]).expect("simple"), vec![I, F, I]),
    ];
    let want: BTreeSet<_> = expected.iter().map(|ag| canonical_form(ag.as_ref().expect("sized"))).collect();
    let got: BTreeSet<_> = found.iter().map(canonical_form).collect();
    report.attempts = 1;
    report.tested = 1;
    for ag in &found {
        let labels: String = ag.labels().iter().map(|l| l.letter()).collect();
        report.notes.push(format!(
            "{} labels={} potential={}",
            to_graph6(ag.graph()),
            labels,
            total_potential(ag)
        ));
    }
    if found.len() != 5 || got != want {
        let mut detail = format!("expected 5 configurations, found {}", found.len());
        if let Some(extra) = found.iter().find(|ag| !want.contains(&canonical_form(ag))) {
            detail.push_str("; unexpected one shown");
            report.fail(0, extra, detail);
        } else {
            report.fail(0, &AssignedGraph::unassigned(Graph::empty(0)), detail);
        }
    }
    report
}

/// All `2^n` splits of `ag`'s vertices that are valid I,F-partitions.
pub fn all_partitions(ag: &AssignedGraph) -> Vec<Partition> {
    let n = ag.vertex_count();
    assert!(n < 24, "exhaustive enumeration limited to 23 vertices");
    (0u32..1 << n)
        .map(|mask| {
            let sides: Vec<Side> = (0..n)
                .map(|v| if mask >> v & 1 == 1 { Side::Independent } else { Side::Forest })
                .collect();
            Partition::from_sides(&sides)
        })
        .filter(|p| is_valid_if_partition(ag, p))
        .collect()
}

fn check_gadget_forcing(config: CheckConfig) -> CheckReport {
    let mut report = CheckReport::new(Theorem::GadgetForcing, config);
    let single = |label| AssignedGraph::new(Graph::empty(1), vec![label]).expect("sized");

    // Exhaustive split enumeration on the two bare gadgets.
    for (label, side, expansion) in [
        (VertexLabel::F, Side::Forest, attach_f_gadget(&single(VertexLabel::F), 0)),
        (VertexLabel::I, Side::Independent, attach_i_gadget(&single(VertexLabel::I), 0)),
    ] {
        let e = expansion.expect("label matches");
        let parts = all_partitions(&e.result);
        let forced = parts.iter().all(|p| p.sides(e.result.vertex_count()).expect("total")[0] == side);
        report.tested += 1;
        report.notes.push(format!(
            "{label}-gadget: {} splits, {} valid, host forced to {side:?}: {forced}",
            1u32 << e.result.vertex_count(),
            parts.len()
        ));
        if parts.is_empty() || !forced {
            report.fail(0, &e.result, format!("{label}-gadget does not force its host"));
        }
    }

    // Every small positive-potential assigned graph: the expansion forces
    // each host and its partitions restrict to extending partitions.
    let mut seen = BTreeSet::new();
    let mut round_trips = 0u64;
    for ag in small_assigned_graphs(4) {
        if !seen.insert(canonical_form(&ag)) || !all_potentials_positive(&ag).expect("nonempty") {
            continue;
        }
        round_trips += 1;
        if let Err(detail) = round_trip(&ag) {
            report.fail(0, &ag, detail);
        }
    }
    report.notes.push(format!("{round_trips} small assigned graphs round-tripped"));

    // Potential positivity is preserved in both directions.
    let budget = config.samples.saturating_mul(ATTEMPTS_PER_SAMPLE).max(1);
    let mut random = 0u64;
    while random < config.samples && report.attempts < budget {
        let index = report.attempts;
        report.attempts += 1;
        let ag = draw(Theorem::GadgetForcing, config.max_n, &mut sample_rng(config.seed, index));
        let e = expand_to_unassigned(&ag);
        let before = all_potentials_positive(&ag).expect("nonempty");
        let after = all_potentials_positive(&e.result).expect("nonempty");
        random += 1;
        if before != after {
            report.fail(index, &ag, format!("positivity {before} before expansion, {after} after"));
        }
    }
    report.tested += random;
    report.config.samples += 2;
    report
}

fn round_trip(ag: &AssignedGraph) -> Result<(), String> {
    let e = expand_to_unassigned(ag);
    let p = solve_verified(&e.result).map_err(|err| format!("expansion: {err}"))?;
    let sides = p.sides(e.result.vertex_count()).expect("total");
    let restricted: Vec<Side> = e.vertex_map.iter().map(|&v| sides[v]).collect();
    if !is_valid_if_partition(ag, &Partition::from_sides(&restricted)) {
        return Err("restricted partition does not extend the assignment".into());
    }
    for g in &e.gadgets {
        let opposite = match ag.label(g.host) {
            VertexLabel::F => VertexLabel::I,
            _ => VertexLabel::F,
        };
        let flipped = e
            .result
            .clone()
            .with_label(e.vertex_map[g.host], opposite)
            .expect("in range");
        if !solve_with(&flipped, &SolverOptions::default()).is_unsat() {
            return Err(format!("host {} not forced by its {:?} gadget", g.host, g.kind));
        }
    }
    Ok(())
}

/// Every labeled graph on `1..=max_n` vertices (not deduplicated).
pub fn small_assigned_graphs(max_n: usize) -> Vec<AssignedGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for edge_mask in 0u32..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| edge_mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).expect("simple");
            for code in 0..3usize.pow(n as u32) {
                let labels = (0..n)
                    .map(|i| VertexLabel::ALL[code / 3usize.pow(i as u32) % 3])
                    .collect();
                out.push(AssignedGraph::new(g.clone(), labels).expect("sized"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>(), Ok(t));
        }
        assert!("theorem9".parse::<Theorem>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for t in [Theorem::MadPartition, Theorem::OracleMad, Theorem::Lemma8] {
            let r = run_check(t, CheckConfig { max_n: 7, samples: 20, seed: 3 });
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn low_potential_configurations_listed() {
        let r = run_check(Theorem::Claim4, CheckConfig::defaults(Theorem::Claim4, 0));
        assert!(r.passed());
        assert_eq!(r.notes.len(), 5);
    }
}
