//! `scenario`: evaluate one of the built-in analytic families and tabulate
//! success probability, coherence quantifiers, and their two-sided bounds
//! per iteration.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use ampcoh_core::bounds::geometric_coherence_sandwich;
use ampcoh_core::bounds::DominantBranch;
use ampcoh_core::coherence::{geometric_coherence_mixed, CgOptions};
use ampcoh_core::scenarios::{self, ScenarioKind, ScenarioSpec};
use ampcoh_core::state::MarkedSet;

use crate::emit::{self, Cell, Format, Manifest};
use crate::error::CliError;
use crate::FormatArg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Uniform preparation state, marked set re-weighted by the iteration.
    Original,
    /// Preparation state flat on each block with tunable marked weight.
    Consistent,
    /// Preparation state split into imbalanced half-blocks.
    Inconsistent,
    /// Incoherent mixture of the two block-uniform states (a fixed profile).
    MixedFixedPoint,
}

impl KindArg {
    fn as_str(self) -> &'static str {
        match self {
            KindArg::Original => "original",
            KindArg::Consistent => "consistent",
            KindArg::Inconsistent => "inconsistent",
            KindArg::MixedFixedPoint => "mixed-fixed-point",
        }
    }
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Which analytic family to evaluate.
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Register dimension.
    #[arg(long, default_value_t = 16)]
    pub n: usize,

    /// Number of marked indices (the marked set is {0, .., m-1}).
    #[arg(long, default_value_t = 2)]
    pub m: usize,

    /// Consistent kind: weight (in units of 1/n) the preparation state puts
    /// on the marked block; may be fractional.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub m_eta: f64,

    /// Inconsistent kind: amplitude imbalance within each block, in [0, 1).
    #[arg(long, default_value_t = 0.72, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Mixed-fixed-point kind: weight of the marked block in the mixture.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub theta: f64,

    /// Last iteration count to tabulate (rows cover t = 0..=t_max).
    #[arg(long, default_value_t = 40)]
    pub t_max: usize,

    /// Also run the simplex-ascent optimizer for the mixed kind and append
    /// its value as a `cg_ascent` column (slower; ignored for pure kinds).
    #[arg(long)]
    pub with_cg: bool,

    /// Output file (defaults to scenario.<format> in $AMPCOH_OUT_DIR or `.`).
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

fn kind_config_string(args: &ScenarioArgs) -> String {
    let mut cfg = format!("kind={} n={} m={}", args.kind.as_str(), args.n, args.m);
    match args.kind {
        KindArg::Original => {}
        KindArg::Consistent => cfg.push_str(&format!(" m_eta={}", args.m_eta)),
        KindArg::Inconsistent => cfg.push_str(&format!(" alpha={}", args.alpha)),
        KindArg::MixedFixedPoint => cfg.push_str(&format!(" theta={}", args.theta)),
    }
    cfg.push_str(&format!(" t_max={}", args.t_max));
    if args.with_cg {
        cfg.push_str(" with_cg=true");
    }
    cfg
}

fn branch_name(branch: DominantBranch) -> &'static str {
    match branch {
        DominantBranch::Marked => "marked",
        DominantBranch::Unmarked => "unmarked",
    }
}

pub fn run(args: ScenarioArgs) -> Result<(), CliError> {
    let marked = MarkedSet::new(args.n, 0..args.m)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let kind = match args.kind {
        KindArg::Original => ScenarioKind::Original,
        KindArg::Consistent => ScenarioKind::Consistent { m_eta: args.m_eta },
        KindArg::Inconsistent => ScenarioKind::Inconsistent { alpha: args.alpha },
        KindArg::MixedFixedPoint => ScenarioKind::MixedFixedPoint { theta: args.theta },
    };
    let spec = ScenarioSpec::new(marked, kind).map_err(|e| CliError::Usage(e.to_string()))?;
    if spec.marked.exceeds_half() {
        eprintln!(
            "warning: {} of {} indices are marked; amplification is weak past n/2",
            args.m, args.n
        );
    }

    let curve = scenarios::curve(&spec, args.t_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    // The mixed profile is stationary, so one ascent run covers every row.
    let mixed = matches!(args.kind, KindArg::MixedFixedPoint);
    let cg_ascent = if args.with_cg && mixed {
        let rho = spec
            .initial_density()
            .expect("mixed kind always has a density");
        Some(geometric_coherence_mixed(&rho, &CgOptions::default()).value)
    } else {
        if args.with_cg {
            eprintln!(
                "warning: --with-cg only applies to the mixed-fixed-point kind; \
                 the pure-state cg column is already exact"
            );
        }
        None
    };

    let purity = match args.kind {
        KindArg::MixedFixedPoint => {
            args.theta * args.theta + (1.0 - args.theta) * (1.0 - args.theta)
        }
        _ => 1.0,
    };

    let mut columns = vec![
        "t",
        "p_suc",
        "c1",
        "c1_lower",
        "c1_upper",
        "cg",
        "cg_lower",
        "cg_upper",
        "cl1",
        "s1",
        "branch",
        "c1_lower_slack",
        "c1_upper_slack",
        "cg_lower_slack",
        "cg_upper_slack",
    ];
    if cg_ascent.is_some() {
        columns.push("cg_ascent");
    }

    let rows: Vec<Vec<Cell>> = curve
        .points
        .iter()
        .map(|p| {
            let (cg_lower, cg_upper, _active) =
                geometric_coherence_sandwich(args.n, args.m, purity, p.p_suc);
            let mut row = vec![
                Cell::U(p.t as u64),
                Cell::F(p.p_suc),
                Cell::F(p.c1),
                Cell::F(p.c1_lower),
                Cell::F(p.c1_upper),
                Cell::F(p.cg),
                Cell::F(cg_lower),
                Cell::F(cg_upper),
                Cell::F(p.cl1),
                Cell::F(p.s1),
                Cell::S(branch_name(p.branch).to_string()),
                Cell::F(p.c1 - p.c1_lower),
                Cell::F(p.c1_upper - p.c1),
                Cell::F(p.cg - cg_lower),
                Cell::F(cg_upper - p.cg),
            ];
            if let Some(v) = cg_ascent {
                row.push(Cell::F(v));
            }
            row
        })
        .collect();

    let format: Format = args.format.into();
    let output = emit::resolve_output(args.output.clone(), "scenario", format);
    let manifest = Manifest {
        command: "scenario",
        config: kind_config_string(&args),
        engine: "closed_form",
        seed: 0,
        output_path: output.display().to_string(),
        format,
    };
    let written = emit::write_table(&manifest, &columns, &rows, &[])?;
    eprintln!("wrote {} ({} rows)", manifest.output_path, written);
    Ok(())
}
