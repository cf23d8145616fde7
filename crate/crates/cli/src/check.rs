use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use ifpart::harness::{run_check, CheckConfig, CheckReport, Theorem};

use crate::{CliError, Exit, Output};

#[derive(Args)]
pub struct CheckArgs {
    /// One of mad-partition, potential-partition, star4, lemma8,
    /// gadget-forcing, claim4, oracle-minpot, oracle-mad.
    #[arg(long)]
    theorem: String,
    /// Largest vertex count to sample.
    #[arg(long)]
    n: Option<usize>,
    /// Instances to check after filtering.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for counterexample files, written only on failure.
    #[arg(long, default_value = "ifpart-counterexamples")]
    out: PathBuf,
}

pub fn run(args: &CheckArgs) -> Result<Output, CliError> {
    let theorem: Theorem = args.theorem.parse()?;
    let mut config = CheckConfig::defaults(theorem, args.seed);
    if let Some(n) = args.n {
        config.max_n = n;
    }
    if let Some(s) = args.samples {
        config.samples = s;
    }
    let report = run_check(theorem, config);
    let exit = if report.failures > 0 {
        dump(&report, &args.out)?;
        Exit::Negative
    } else if report.tested < report.config.samples {
        Exit::Inconclusive
    } else {
        Exit::Success
    };
    Ok(Output::json(serde_json::to_value(&report)?, exit, Vec::new()))
}

/// Writes `<theorem>-<seed>.g6`, `.assign` and `.txt` for the first
/// counterexample.
fn dump(report: &CheckReport, dir: &Path) -> Result<(), CliError> {
    let Some(c) = &report.counterexample else {
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| CliError(format!("{}: {e}", dir.display())))?;
    let stem = format!("{}-{}-{}", report.theorem, report.config.seed, c.sample);
    let detail = format!(
        "theorem {}\nmax_n {}\nseed {}\nsample {}\n{}\n",
        report.theorem, report.config.max_n, report.config.seed, c.sample, c.detail
    );
    for (ext, body) in [("g6", format!("{}\n", c.graph6)), ("assign", c.assignment.clone()), ("txt", detail)] {
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, body).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    eprintln!("counterexample written to {}", dir.join(&stem).display());
    Ok(())
}
