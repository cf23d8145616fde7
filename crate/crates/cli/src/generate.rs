use clap::{Args, ValueEnum};
use ifpart::format::write_graph;
use ifpart::generate::{generate, GeneratorSpec, Model};
use ifpart::Rational;
use serde_json::json;

use crate::analyze::Format;
use crate::{CliError, Exit, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ModelName {
    Gnm,
    SparseNearThreshold,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long)]
    n: usize,
    /// Edge count for `gnm`.
    #[arg(long, required_if_eq("model", "gnm"))]
    m: Option<usize>,
    /// Target average degree `p/q` for `sparse_near_threshold`.
    #[arg(long, default_value = "5/2")]
    target: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError(format!("target {s:?} is not a fraction p/q"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn run(args: &GenerateArgs) -> Result<Output, CliError> {
    let model = match args.model {
        ModelName::Gnm => Model::Gnm {
            n: args.n,
            m: args.m.expect("clap enforces --m for gnm"),
        },
        ModelName::SparseNearThreshold => Model::SparseNearThreshold {
            n: args.n,
            target: parse_rational(&args.target)?,
        },
    };
    let spec = GeneratorSpec { model, seed: args.seed };
    let g = generate(&spec)?;
    let text = write_graph(&g, args.format.into());
    let stdout = if text.ends_with('\n') { text.clone() } else { format!("{text}\n") };
    Ok(Output {
        stdout,
        payload: json!({ "spec": spec, "vertices": g.vertex_count(), "edges": g.edge_count() }),
        exit: Exit::Success,
        input: Vec::new(),
    })
}
