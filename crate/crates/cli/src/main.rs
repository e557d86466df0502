use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bnsr_cli::{cmd_bb, cmd_fpn, cmd_poly, cmd_raag, cmd_selftest, cmd_wreath, error_report, Options, Scale, SelftestOptions};
use bnsr_core::variant::Variant;
use bnsr_core::Limits;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Decides membership in the Σ-invariants of right-angled Artin and
/// Bestvina-Brady groups. Prints one JSON document on stdout.
#[derive(Parser)]
#[command(name = "bnsr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Use the homotopical criterion (Σⁿ, F_n) instead of the homological one.
    #[arg(long, global = true)]
    homotopical: bool,
    /// Largest number of simplices one flag complex may contain.
    #[arg(long, global = true, default_value_t = Limits::default().max_simplices)]
    max_simplices: usize,
    /// Generator eliminations allowed when simplifying a presentation.
    #[arg(long, global = true, default_value_t = Limits::default().tietze_budget)]
    tietze_budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Whether the Bestvina-Brady group of the graph is of type FP_n (F_n).
    Fpn {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "n")]
        n: usize,
    },
    /// Whether a character of the right-angled Artin group lies in Σⁿ.
    Raag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "char")]
        character: PathBuf,
        #[arg(long = "n")]
        n: usize,
    },
    /// Whether a character of the Bestvina-Brady group lies in Σⁿ.
    Bb {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "char")]
        character: PathBuf,
        #[arg(long = "n")]
        n: usize,
    },
    /// The complement of Σ¹ of the Bestvina-Brady group as equality systems.
    Poly {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sufficient test for Σⁿ of a wreath product.
    Wreath {
        #[arg(long = "n")]
        n: usize,
        /// Number of base coordinates on which the character is nonzero.
        #[arg(long)]
        support_count: usize,
    },
    /// Runs the consistency suites.
    Selftest {
        #[arg(long, default_value_t = SelftestOptions::default().seed)]
        seed: u64,
        /// Reduced sample counts.
        #[arg(long)]
        quick: bool,
        /// Run only the named suite (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Test mode: corrupt an oracle so that the run must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Fpn { .. } => "fpn",
            Command::Raag { .. } => "raag",
            Command::Bb { .. } => "bb",
            Command::Poly { .. } => "poly",
            Command::Wreath { .. } => "wreath",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            let rendered = e.to_string();
            let message = rendered
                .split("Usage:")
                .next()
                .unwrap_or_default()
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ");
            let command = std::env::args()
                .nth(1)
                .filter(|a| ["fpn", "raag", "bb", "poly", "wreath", "selftest"].contains(&a.as_str()))
                .unwrap_or_default();
            emit(&error_report(&command, "usage", &message, 2));
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        variant: if cli.global.homotopical { Variant::Homotopical } else { Variant::Homological },
        limits: Limits {
            max_simplices: cli.global.max_simplices,
            tietze_budget: cli.global.tietze_budget,
            ..Limits::default()
        },
    };
    let name = cli.command.name();
    let started = Instant::now();
    let result = match cli.command {
        Command::Fpn { graph, n } => cmd_fpn(&graph, n, opts).map(|r| (r, true)),
        Command::Raag { graph, character, n } => cmd_raag(&graph, &character, n, opts).map(|r| (r, true)),
        Command::Bb { graph, character, n } => cmd_bb(&graph, &character, n, opts).map(|r| (r, true)),
        Command::Poly { graph } => cmd_poly(&graph, opts).map(|r| (r, true)),
        Command::Wreath { n, support_count } => cmd_wreath(n, support_count).map(|r| (r, true)),
        Command::Selftest {
            seed,
            quick,
            suites,
            inject_fault,
        } => cmd_selftest(&SelftestOptions {
            seed,
            scale: if quick { Scale::Quick } else { Scale::Default },
            inject_fault,
            suites,
            limits: opts.limits,
        }),
    };
    let elapsed = started.elapsed().as_millis();
    match result {
        Ok((report, ok)) => {
            emit(&report);
            eprintln!("bnsr {name}: {elapsed} ms");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("bnsr {name}: checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("bnsr {name}: {e}");
            emit(&error_report(name, e.kind(), &e.to_string(), code));
            ExitCode::from(code as u8)
        }
    }
}
