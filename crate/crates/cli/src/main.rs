use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use lnn_core::exact::{build_macro_library, exact_synthesize, write_macro_library, ReversibleFunction};
use lnn_core::flow::{report, run_flow_with, sweep_best, FlowConfig, MAX_VERIFIED_LINES};
use lnn_core::ir::{parse_real_with_warnings, write_real, CircuitStats};
use lnn_core::sim::{equivalent, equivalent_up_to_phase, SimError};
use lnn_core::{Circuit, CostModel};

#[derive(Parser)]
#[command(name = "lnnsynth", version, about = "Lower reversible circuits to linear nearest-neighbor quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print size, cost and NNC of a circuit.
    Stats {
        file: PathBuf,
        #[command(flatten)]
        cost: CostArg,
    },
    /// Decompose a circuit and make every gate nearest-neighbor.
    Lower(LowerArgs),
    /// Try all sixteen pass combinations and report the cheapest.
    Sweep {
        file: PathBuf,
        #[command(flatten)]
        cost: CostArg,
    },
    /// Check two circuits for equivalence.
    Verify {
        a: PathBuf,
        b: PathBuf,
        /// Ignore a global phase difference.
        #[arg(long)]
        up_to_phase: bool,
    },
    /// Minimal adjacent-gate circuit for a permutation such as "7 1 4 3 0 2 6 5".
    Exact {
        truth_table: String,
        #[arg(long, default_value_t = 15)]
        max_cost: usize,
    },
    /// Regenerate the macro library by exact synthesis.
    Macros {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CostArg {
    /// Elementary gates charged per SWAP.
    #[arg(long, default_value_t = 3, value_parser = clap::builder::TypedValueParser::map(clap::builder::PossibleValuesParser::new(["1", "3"]), |s| s.parse::<u64>().unwrap()))]
    swap_cost: u64,
}

impl CostArg {
    fn model(&self) -> CostModel {
        CostModel::new(self.swap_cost).expect("validated by clap")
    }
}

#[derive(Args)]
struct LowerArgs {
    file: PathBuf,
    #[arg(long)]
    macros: bool,
    #[arg(long)]
    global_reorder: bool,
    #[arg(long)]
    local_reorder: bool,
    #[arg(long)]
    templates: bool,
    #[command(flatten)]
    cost: CostArg,
    /// Skip the equivalence check done on narrow circuits.
    #[arg(long)]
    no_verify: bool,
    /// List the template rules that fired.
    #[arg(long)]
    rules: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Verification(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Input(e)
    }
}

fn load(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_real_with_warnings(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.circuit)
}

fn lower(args: &LowerArgs) -> Result<(), Failure> {
    let c = load(&args.file)?;
    let cfg = FlowConfig {
        macros: args.macros,
        global_reorder: args.global_reorder,
        local_reorder: args.local_reorder,
        templates: args.templates,
        model: args.cost.model(),
    };
    let verify = !args.no_verify && c.n() <= MAX_VERIFIED_LINES;
    let result = run_flow_with(&c, cfg, verify).map_err(anyhow::Error::from)?;
    eprintln!("original {}", CircuitStats::of(&c, cfg.model));
    eprintln!("config={} {}", cfg, result.stats);
    if !result.input_ordering.is_identity() {
        eprintln!("input placement {:?}", result.input_ordering.placement());
    }
    if !result.output_ordering.is_identity() {
        eprintln!("output placement {:?}", result.output_ordering.placement());
    }
    if args.rules {
        if let Some(report) = &result.templates {
            for (rule, count) in &report.fired {
                eprintln!("rule {rule} fired {count}");
            }
        }
    }
    let text = write_real(&result.circuit);
    match &args.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    match result.verified {
        Some(false) => Err(Failure::Verification("lowered circuit is not equivalent to the input".into())),
        Some(true) => {
            eprintln!("verified");
            Ok(())
        }
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Stats { file, cost } => {
            let c = load(&file)?;
            println!("{}", CircuitStats::of(&c, cost.model()));
        }
        Command::Lower(args) => lower(&args)?,
        Command::Sweep { file, cost } => {
            let c = load(&file)?;
            let sweep = sweep_best(&c, cost.model()).map_err(anyhow::Error::from)?;
            print!("{}", report(&CircuitStats::of(&c, cost.model()), &sweep));
            if sweep.runs.iter().any(|r| r.verified == Some(false)) {
                return Err(Failure::Verification("a configuration produced a non-equivalent circuit".into()));
            }
        }
        Command::Verify { a, b, up_to_phase } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let same = if up_to_phase { equivalent_up_to_phase(&a, &b) } else { equivalent(&a, &b) };
            let same = match same {
                Err(SimError::WidthMismatch(..)) => false,
                other => other.map_err(anyhow::Error::from)?,
            };
            if !same {
                return Err(Failure::Verification("not equivalent".into()));
            }
            println!("equivalent");
        }
        Command::Exact { truth_table, max_cost } => {
            let f = ReversibleFunction::parse(&truth_table)
                .map_err(|e| anyhow::anyhow!("bad truth table: {e}"))?;
            match exact_synthesize(&f, max_cost) {
                Ok(c) => {
                    eprintln!("cost {}", c.len());
                    print!("{}", write_real(&c));
                }
                Err(e) => return Err(Failure::Verification(e.to_string())),
            }
        }
        Command::Macros { out } => {
            let library = build_macro_library().map_err(anyhow::Error::from)?;
            write_macro_library(&library, &out).context("writing macro library")?;
            for m in &library {
                println!("{} {}", m.name, m.cost());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
