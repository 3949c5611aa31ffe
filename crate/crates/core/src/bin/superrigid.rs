use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use superrigid::cli::{self, BoundsQuery, BranchMode, Config, Report};
use superrigid::error::{Error, Result};
use superrigid::vic::ModuleFile;

/// Exact computations for representations of SL_n(Z): depth, bounds,
/// branching, congruence quotients and VIC-modules.
#[derive(Parser)]
#[command(name = "superrigid", version)]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    group_cap: u64,
    /// Largest cyclotomic order searched for eigenvalues.
    #[arg(long, global = true, default_value_t = 5040)]
    cyclotomic_cap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples for sampled checks.
    #[arg(long, global = true, default_value_t = 32)]
    samples: usize,
    /// Window of ranks for VIC-modules, as `lo..hi` or `lo,hi`.
    #[arg(long, global = true, value_parser = parse_window)]
    window: Option<(usize, usize)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LabelArgs {
    /// Parts of λ⁺, comma separated.
    #[arg(long, default_value = "")]
    plus: String,
    /// Parts of λ⁻, comma separated.
    #[arg(long, default_value = "")]
    minus: String,
    #[arg(long)]
    rank: Option<usize>,
    /// The label as JSON: {"plus":[...],"minus":[...],"rank":n}.
    #[arg(long, conflicts_with_all = ["plus", "minus", "rank"])]
    label: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Branch V_n(λ⁺, λ⁻) to GL_{n-1} (Pieri) or GL_m × GL_{n-m} (LR).
    Branch {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, conflicts_with = "lr")]
        pieri: bool,
        /// Block size m for Littlewood-Richardson restriction.
        #[arg(long)]
        lr: Option<usize>,
    },
    /// Dimension and dimension polynomial of V_n(λ⁺, λ⁻).
    Dim {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Depth of a representation of SL_n(Z) given by generator images.
    Depth {
        #[arg(long)]
        rep: PathBuf,
        /// Assert irreducibility, enabling the dim_alg field.
        #[arg(long)]
        irreducible: bool,
    },
    /// Dimension bounds in terms of depth.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with_all = ["ell", "p", "k"])]
        dim: Option<u64>,
        #[arg(long, conflicts_with_all = ["p", "k"])]
        ell: Option<u64>,
        #[arg(long, requires = "k")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        k: Option<u32>,
    },
    /// Character table summary of a congruence quotient.
    GroupTable {
        n: usize,
        ell: u64,
        /// sl, slpm, gl, u or kernel:<d>.
        #[arg(default_value = "sl")]
        variant: String,
    },
    /// Run operations on a VIC-module described by a JSON file.
    VicRun {
        #[arg(long)]
        module: PathBuf,
        /// Comma-separated: verify, filtration, phi<a>, growth, length,
        /// depth, triples, gl-extension, noetherian.
        #[arg(long, default_value = "verify,filtration,growth")]
        ops: String,
    },
}

fn parse_window(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once(','))
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    Ok((lo, hi))
}

fn label(args: &LabelArgs) -> Result<superrigid::weights::AlgebraicLabel> {
    match (&args.label, args.rank) {
        (Some(json), _) => cli::parse_label(json),
        (None, Some(rank)) => cli::label_from_parts(&args.plus, &args.minus, rank),
        (None, None) => Err(Error::Precondition("give --rank or --label".into())),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(report: &Report<T>, json: bool) {
    let text = if json {
        report.to_json() + "\n"
    } else {
        cli::render_table(&report.to_value())
    };
    // a closed pipe (`| head`) is not an error
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: &Cli) -> Result<()> {
    let config = Config {
        group_cap: cli.group_cap,
        cyclotomic_cap: cli.cyclotomic_cap,
        seed: cli.seed,
        samples: cli.samples,
        window: cli.window.unwrap_or(superrigid::vic::DEFAULT_WINDOW),
    };
    match &cli.command {
        Command::Branch { label: l, pieri, lr } => {
            let mode = match (pieri, lr) {
                (_, Some(m)) => BranchMode::Lr { m: *m },
                _ => BranchMode::Pieri,
            };
            emit(&cli::cmd_branch(&label(l)?, mode, &config)?, cli.json);
        }
        Command::Dim { label: l } => emit(&cli::cmd_dim(&label(l)?, &config)?, cli.json),
        Command::Depth { rep, irreducible } => {
            let file = cli::read_rep_file(&read(rep)?)?;
            emit(&cli::cmd_depth(&file, *irreducible, &config)?, cli.json);
        }
        Command::Bounds { n, dim, ell, p, k } => {
            let query = match (dim, ell, p, k) {
                (Some(dim), _, _, _) => BoundsQuery::Dim { dim: *dim },
                (_, Some(ell), _, _) => BoundsQuery::Ell { ell: *ell },
                (_, _, Some(p), Some(k)) => BoundsQuery::PrimePower { p: *p, k: *k },
                _ => return Err(Error::Precondition("give --dim, --ell, or --p with --k".into())),
            };
            emit(&cli::cmd_bounds(*n, query, &config)?, cli.json);
        }
        Command::GroupTable { n, ell, variant } => {
            emit(&cli::cmd_group_table(*n, *ell, variant, &config)?, cli.json);
        }
        Command::VicRun { module, ops } => {
            let file = ModuleFile::from_json(&read(module)?)?;
            emit(&cli::cmd_vic_run(&file, &cli::parse_ops(ops)?, &config)?, cli.json);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::VicRun { ops, .. } = &cli.command {
        // unknown operations are usage errors, like unknown flags
        if let Err(e) = cli::parse_ops(ops) {
            use clap::CommandFactory;
            Cli::command()
                .error(
                    clap::error::ErrorKind::InvalidValue,
                    format!("{e}; known: {}", cli::VicOp::NAMES),
                )
                .exit();
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
