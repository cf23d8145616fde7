use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ifpart::coloring::{star_chromatic_number_capped, star_coloring_from_partition, ColoringError, DEFAULT_CHROMATIC_CAP};
use ifpart::configs::detect_configurations;
use ifpart::discharge::{audit_lemma8, run_discharging};
use ifpart::format::{parse_assignment, parse_graph, to_graph6, GraphFormat};
use ifpart::gadget::{expand_to_unassigned, sharpness_graph};
use ifpart::potential::{
    all_potentials_positive, brute_force_mad_capped, brute_force_min_potential_capped, format_rational, mad,
    min_potential, PotentialError, DEFAULT_MAD_CAP, DEFAULT_MIN_POTENTIAL_CAP,
};
use ifpart::solver::{solve_if_partition, Outcome};
use ifpart::{AssignedGraph, Graph};
use serde_json::json;

use crate::{read_input, CliError, Exit, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Mad,
    Potential,
    Partition,
    Starcolor,
    Gadgetize,
    Sharpness,
    Discharge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edges,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Graph6 => GraphFormat::Graph6,
            Format::Edges => GraphFormat::EdgeList,
        }
    }
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[arg(value_enum)]
    what: Analysis,
    /// Input graph file; standard input when omitted.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Input format. Defaults to `edges` for `.edges` files, else graph6.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Assignment file with `vertex label` lines (I, F or U).
    #[arg(long)]
    assign: Option<PathBuf>,
    /// starcolor: exact star chromatic number. mad/potential: also
    /// cross-check against brute force.
    #[arg(long)]
    exact: bool,
    /// Vertex cap for exact and brute-force computations.
    #[arg(long)]
    cap: Option<usize>,
    /// Cycle length for `sharpness`.
    #[arg(long, default_value_t = 3)]
    k: usize,
}

fn infer_format(args: &AnalyzeArgs) -> GraphFormat {
    match (args.format, &args.graph) {
        (Some(f), _) => f.into(),
        (None, Some(p)) if p.extension().is_some_and(|e| e == "edges") => GraphFormat::EdgeList,
        _ => GraphFormat::Graph6,
    }
}

fn load(args: &AnalyzeArgs) -> Result<(AssignedGraph, Vec<u8>), CliError> {
    let mut input = read_input(args.graph.as_deref())?;
    let parsed = parse_graph(&input, infer_format(args))?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    let g: Graph = parsed.value;
    let ag = match &args.assign {
        Some(path) => {
            let bytes = read_input(Some(Path::new(path)))?;
            let ag = parse_assignment(&bytes, &g)?.value;
            input.extend_from_slice(&bytes);
            ag
        }
        None => AssignedGraph::unassigned(g),
    };
    Ok((ag, input))
}

fn capped(e: PotentialError, input: Vec<u8>) -> Result<Output, CliError> {
    match e {
        PotentialError::CapExceeded { cap, n } => Ok(Output::json(
            json!({ "inconclusive": true, "reason": format!("brute force capped at {cap} vertices, graph has {n}") }),
            Exit::Inconclusive,
            input,
        )),
        other => Err(other.into()),
    }
}

pub fn run(args: &AnalyzeArgs) -> Result<Output, CliError> {
    if args.what == Analysis::Sharpness {
        let s = sharpness_graph(args.k)?;
        let text = to_graph6(&s.graph);
        return Ok(Output {
            stdout: format!("{text}\n"),
            payload: json!({ "graph6": text, "k": args.k }),
            exit: Exit::Success,
            input: Vec::new(),
        });
    }
    let (ag, input) = load(args)?;
    match args.what {
        Analysis::Mad => {
            let m = mad(ag.graph())?;
            let mut out = json!({ "mad": format_rational(&m.value), "witness": m.vertices });
            if args.exact {
                match brute_force_mad_capped(ag.graph(), args.cap.unwrap_or(DEFAULT_MAD_CAP)) {
                    Ok(b) => out["brute_force"] = json!(format_rational(&b.value)),
                    Err(e) => return capped(e, input),
                }
            }
            Ok(Output::json(out, Exit::Success, input))
        }
        Analysis::Potential => {
            let m = min_potential(&ag)?;
            let mut out = json!({
                "min": m.value,
                "witness": m.vertices,
                "all_positive": all_potentials_positive(&ag)?,
            });
            if args.exact {
                match brute_force_min_potential_capped(&ag, args.cap.unwrap_or(DEFAULT_MIN_POTENTIAL_CAP)) {
                    Ok(b) => out["brute_force"] = json!(b.value),
                    Err(e) => return capped(e, input),
                }
            }
            Ok(Output::json(out, Exit::Success, input))
        }
        Analysis::Partition => {
            let r = solve_if_partition(&ag);
            let (out, exit) = match &r.outcome {
                Outcome::Sat { partition } => (
                    json!({ "sat": true, "I": partition.independent, "F": partition.forest, "stats": r.stats }),
                    Exit::Success,
                ),
                Outcome::Unsat => (json!({ "sat": false, "stats": r.stats }), Exit::Negative),
                Outcome::Inconclusive => (
                    json!({ "sat": null, "inconclusive": true, "stats": r.stats }),
                    Exit::Inconclusive,
                ),
            };
            Ok(Output::json(out, exit, input))
        }
        Analysis::Starcolor => starcolor(args, &ag, input),
        Analysis::Gadgetize => {
            let e = expand_to_unassigned(&ag);
            let text = to_graph6(e.result.graph());
            Ok(Output {
                stdout: format!("{text}\n"),
                payload: json!({ "graph6": text, "vertex_map": e.vertex_map, "gadgets": e.gadgets }),
                exit: Exit::Success,
                input,
            })
        }
        Analysis::Discharge => {
            let trace = run_discharging(&ag);
            let configurations = detect_configurations(&ag);
            let verdict = audit_lemma8(&ag);
            let exit = if verdict.is_violation() {
                Exit::Negative
            } else {
                Exit::Success
            };
            let out = json!({ "trace": trace, "configurations": configurations, "audit": verdict });
            Ok(Output::json(out, exit, input))
        }
        Analysis::Sharpness => unreachable!("handled above"),
    }
}

fn starcolor(args: &AnalyzeArgs, ag: &AssignedGraph, input: Vec<u8>) -> Result<Output, CliError> {
    let g = ag.graph();
    if args.exact {
        return match star_chromatic_number_capped(g, args.cap.unwrap_or(DEFAULT_CHROMATIC_CAP)) {
            Ok(c) => Ok(Output::json(
                json!({ "k": c.colors_used, "colors": c.coloring.colors, "method": "exact" }),
                Exit::Success,
                input,
            )),
            Err(ColoringError::CapExceeded { cap, n }) => Ok(Output::json(
                json!({ "k": null, "inconclusive": true, "reason": format!("exact search capped at {cap} vertices, graph has {n}") }),
                Exit::Inconclusive,
                input,
            )),
            Err(e) => Err(e.into()),
        };
    }
    let unassigned = AssignedGraph::unassigned(g.clone());
    let r = solve_if_partition(&unassigned);
    match &r.outcome {
        Outcome::Sat { partition } => {
            let c = star_coloring_from_partition(g, partition)?;
            Ok(Output::json(
                json!({ "k": c.colors_used, "colors": c.coloring.colors, "method": "partition" }),
                Exit::Success,
                input,
            ))
        }
        Outcome::Unsat => Ok(Output::json(
            json!({ "k": null, "reason": "no I,F-partition; use --exact" }),
            Exit::Negative,
            input,
        )),
        Outcome::Inconclusive => Ok(Output::json(
            json!({ "k": null, "inconclusive": true }),
            Exit::Inconclusive,
            input,
        )),
    }
}
