//! Charges and the three redistribution rules, plus the audit that a
//! configuration-free assigned graph has nonpositive potential.
//!
//! Initial charge is `μ0(v) = 2d(v) - w(v)` with `w` = 1, 4, 5 for I, F, U,
//! so the total initial charge is exactly `-ρ(G)`. Rules run in stages;
//! each reads the frozen charges of the previous stage:
//!
//! * R1: a vertex with `μ0(v) ≥ d(v)` sends 1 to every neighbor.
//! * R2: the internal vertex of a 1-thread with `μ1 < 0` pulls 1/2 from
//!   each neighbor.
//! * R3: an internal vertex of a 2-thread with `μ2 < 0` pulls 1 from its
//!   neighbor on the thread's border.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::configs::{detect_with_index, ConfigurationReport};
use crate::graph::AssignedGraph;
use crate::potential::{format_rational, label_weight, total_potential, Rational};
use crate::threads::{ThreadIndex, ThreadKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub from: usize,
    pub to: usize,
    pub amount: Rational,
}

/// Per-stage charge vectors (`stages[i]` is `μi`) and the transfer log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeTrace {
    pub stages: Vec<Vec<Rational>>,
    pub transfers: Vec<Transfer>,
}

impl ChargeTrace {
    pub fn initial(&self) -> &[Rational] {
        &self.stages[0]
    }

    pub fn last(&self) -> &[Rational] {
        self.stages.last().expect("at least the initial stage")
    }

    pub fn stage_totals(&self) -> Vec<Rational> {
        self.stages.iter().map(|s| s.iter().sum()).collect()
    }
}

impl Serialize for Transfer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Transfer", 5)?;
        st.serialize_field("rule", &self.rule)?;
        st.serialize_field("from", &self.from)?;
        st.serialize_field("to", &self.to)?;
        st.serialize_field("amount_num", self.amount.numer())?;
        st.serialize_field("amount_den", self.amount.denom())?;
        st.end()
    }
}

impl Serialize for ChargeTrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fmt = |v: &Vec<Rational>| v.iter().map(format_rational).collect::<Vec<_>>();
        let names = ["mu0", "mu1", "mu2", "mu3"];
        let mut st = s.serialize_struct("ChargeTrace", self.stages.len() + 2)?;
        for (name, stage) in names.iter().zip(&self.stages) {
            st.serialize_field(name, &fmt(stage))?;
        }
        st.serialize_field("totals", &self.stage_totals().iter().map(format_rational).collect::<Vec<_>>())?;
        st.serialize_field("transfers", &self.transfers)?;
        st.end()
    }
}

/// `μ0` only. The total equals `-ρ(G)`.
pub fn initial_charge(ag: &AssignedGraph) -> ChargeTrace {
    let g = ag.graph();
    let mu0: Vec<Rational> = g
        .vertices()
        .map(|v| Rational::from_integer(2 * g.degree(v) as i64 - label_weight(ag.label(v))))
        .collect();
    assert_eq!(
        mu0.iter().sum::<Rational>(),
        Rational::from_integer(-total_potential(ag)),
        "initial charge must sum to minus the potential"
    );
    ChargeTrace {
        stages: vec![mu0],
        transfers: Vec::new(),
    }
}

pub fn run_discharging(ag: &AssignedGraph) -> ChargeTrace {
    let idx = ThreadIndex::build(ag);
    run_with_index(ag, &idx)
}

fn run_with_index(ag: &AssignedGraph, idx: &ThreadIndex) -> ChargeTrace {
    let g = ag.graph();
    let mut trace = initial_charge(ag);
    let expected_total: Rational = trace.initial().iter().sum();
    let one = Rational::from_integer(1);
    let half = Rational::new(1, 2);
    let zero = Rational::from_integer(0);

    for rule in [Rule::R1, Rule::R2, Rule::R3] {
        let prev = trace.last().to_vec();
        let mut moves: Vec<Transfer> = Vec::new();
        match rule {
            Rule::R1 => {
                for v in g.vertices() {
                    if prev[v] >= Rational::from_integer(g.degree(v) as i64) {
                        moves.extend(g.neighbors(v).iter().map(|&u| Transfer {
                            rule,
                            from: v,
                            to: u,
                            amount: one,
                        }));
                    }
                }
            }
            Rule::R2 => {
                for t in idx.threads.iter().filter(|t| t.len() == 1) {
                    let x = t.internal[0];
                    if prev[x] < zero {
                        moves.extend(g.neighbors(x).iter().map(|&u| Transfer {
                            rule,
                            from: u,
                            to: x,
                            amount: half,
                        }));
                    }
                }
            }
            Rule::R3 => {
                for t in idx.threads.iter().filter(|t| t.len() == 2) {
                    let pulls = match t.kind {
                        ThreadKind::Open => [(t.internal[0], t.borders[0]), (t.internal[1], t.borders[1])],
                        ThreadKind::Closed => [(t.internal[0], t.borders[0]), (t.internal[1], t.borders[0])],
                    };
                    for (y, border) in pulls {
                        if prev[y] < zero {
                            moves.push(Transfer {
                                rule,
                                from: border,
                                to: y,
                                amount: one,
                            });
                        }
                    }
                }
            }
        }
        let mut next = prev;
        for m in &moves {
            next[m.from] -= m.amount;
            next[m.to] += m.amount;
        }
        assert_eq!(next.iter().sum::<Rational>(), expected_total, "charge not conserved by {rule:?}");
        trace.stages.push(next);
        trace.transfers.extend(moves);
    }
    trace
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Lemma8Verdict {
    /// Some configuration (possibly degenerate) is present, so the lemma
    /// says nothing.
    Vacuous { configurations: Vec<ConfigurationReport> },
    /// Configuration-free, nonpositive potential, all final charges ≥ 0.
    Holds { potential: i64 },
    /// Configuration-free but the conclusion fails. Never expected.
    Violated {
        potential: i64,
        negative_vertices: Vec<usize>,
    },
}

impl Lemma8Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Lemma8Verdict::Violated { .. })
    }
}

pub fn audit_lemma8(ag: &AssignedGraph) -> Lemma8Verdict {
    let idx = ThreadIndex::build(ag);
    let configurations = detect_with_index(ag, &idx);
    if !configurations.is_empty() {
        return Lemma8Verdict::Vacuous { configurations };
    }
    let trace = run_with_index(ag, &idx);
    let potential = total_potential(ag);
    let negative_vertices: Vec<usize> = trace
        .last()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c < Rational::from_integer(0))
        .map(|(v, _)| v)
        .collect();
    if potential <= 0 && negative_vertices.is_empty() {
        Lemma8Verdict::Holds { potential }
    } else {
        Lemma8Verdict::Violated {
            potential,
            negative_vertices,
        }
    }
}
