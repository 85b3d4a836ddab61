//! `bounds-sweep`: seeded randomized stress test of every coherence bound.
//! Exit status is 0 only if the smallest slack across all trials stays
//! above -1e-6.

use std::path::PathBuf;

use clap::Args;

use ampcoh_core::bounds::DominantBranch;
use ampcoh_core::coherence::CgOptions;
use ampcoh_core::sweep::{self, SweepConfig};

use crate::emit::{self, Cell, Format, Manifest};
use crate::error::CliError;
use crate::FormatArg;

/// Slack below this value counts as a violated bound.
const SLACK_TOL: f64 = -1e-6;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep seed; every trial derives its own stream from it.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Trials per state family (this many pure plus this many mixed).
    #[arg(long, default_value_t = 500)]
    pub trials: usize,

    /// Comma-separated register dimensions, cycled round-robin.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    pub dims: Vec<usize>,

    /// Output file (defaults to bounds-sweep.<format> in $AMPCOH_OUT_DIR or `.`).
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage(
            "--trials must be at least 1".to_string(),
        ));
    }
    if args.dims.is_empty() {
        return Err(CliError::Usage("--dims must not be empty".to_string()));
    }
    if let Some(bad) = args.dims.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!(
            "--dims entries must be at least 2 (got {bad})"
        )));
    }

    let cfg = SweepConfig {
        seed: args.seed,
        dims: args.dims.clone(),
        trials_pure: args.trials,
        trials_mixed: args.trials,
        cg: CgOptions::default(),
    };
    let records = sweep::run(&cfg);

    let min_slack = records
        .iter()
        .map(|r| r.min_slack())
        .fold(f64::INFINITY, f64::min);
    let violations = records
        .iter()
        .filter(|r| r.min_slack() < SLACK_TOL)
        .count();
    let capped = records.iter().filter(|r| r.cg_optimizer_capped).count();

    let columns = [
        "trial",
        "kind",
        "n",
        "m",
        "purity",
        "p_suc",
        "c1",
        "c1_lower",
        "c1_dominant_lower",
        "c1_upper",
        "branch",
        "cg",
        "cg_lower",
        "cg_upper",
        "cg_lower_active",
        "fidelity_bound",
        "min_slack",
        "optimizer_capped",
    ];
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .map(|r| {
            vec![
                Cell::U(r.trial as u64),
                Cell::S(r.kind.as_str().to_string()),
                Cell::U(r.n as u64),
                Cell::U(r.m as u64),
                Cell::F(r.purity),
                Cell::F(r.p_suc),
                Cell::F(r.c1),
                Cell::F(r.c1_lower),
                Cell::F(r.c1_dominant_lower),
                Cell::F(r.c1_upper),
                Cell::S(
                    match r.branch {
                        DominantBranch::Marked => "marked",
                        DominantBranch::Unmarked => "unmarked",
                    }
                    .to_string(),
                ),
                Cell::F(r.cg),
                Cell::F(r.cg_lower),
                Cell::F(r.cg_upper),
                Cell::B(r.cg_lower_active),
                Cell::F(r.fidelity_bound),
                Cell::F(r.min_slack()),
                Cell::B(r.cg_optimizer_capped),
            ]
        })
        .collect();

    let format: Format = args.format.into();
    let output = emit::resolve_output(args.output.clone(), "bounds-sweep", format);
    let manifest = Manifest {
        command: "bounds-sweep",
        config: format!(
            "trials_pure={} trials_mixed={} dims={}",
            args.trials,
            args.trials,
            args.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        engine: "direct",
        seed: args.seed,
        output_path: output.display().to_string(),
        format,
    };
    let summary = [
        ("summary_min_slack", format!("{min_slack:.11e}")),
        ("summary_violations", violations.to_string()),
        ("summary_optimizer_capped", capped.to_string()),
    ];
    let written = emit::write_table(&manifest, &columns, &rows, &summary)?;
    eprintln!(
        "wrote {} ({} rows); min slack {:.3e}, {} violation(s)",
        manifest.output_path, written, min_slack, violations
    );

    if min_slack < SLACK_TOL {
        return Err(CliError::BoundViolation { min_slack });
    }
    Ok(())
}
