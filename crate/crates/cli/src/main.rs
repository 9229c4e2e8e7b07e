//! `polyflip`: flip distances, box paths, instance generators and oracle
//! checks from the command line.
//!
//! Exit codes: 0 success, 1 failed check, 2 malformed input, 3 capacity
//! limit reached.

mod commands;
mod error;
mod files;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::files::Strictness;
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "polyflip", version, about = "Shortest paths on polymatroid skeletons")]
struct Cli {
    /// Warn about unknown fields in instance files instead of rejecting them.
    #[arg(long, global = true)]
    lax: bool,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Flip distance between two acyclic orientations of a hypergraph.
    Dist {
        #[command(subcommand)]
        mode: DistMode,
    },
    /// Shortest path on a box polytope from `a` to `b`.
    Box(BoxArgs),
    /// Solve a pure constant fixed-charge transportation instance.
    Pcfct(BoxArgs),
    /// Write generated instances to a directory.
    Gen {
        #[command(subcommand)]
        generator: commands::gen::Generator,
    },
    /// Verify submodularity, acyclicity or the vertex/orientation correspondence.
    Check {
        #[command(subcommand)]
        check: CheckKind,
    },
    /// Base-exchange path for a matroid-test instance.
    Matroid {
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum DistMode {
    /// Exact distance by bidirectional breadth-first search.
    Exact {
        #[command(flatten)]
        pair: commands::dist::Pair,
        /// Disallow flips involving this vertex (name or index); repeatable.
        #[arg(long = "forbid-vertex")]
        forbid: Vec<String>,
        /// Search state cap.
        #[arg(long, env = "POLYFLIP_MAX_STATES", default_value_t = polyflip::flip::DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Codegree-bounded approximation.
    Approx {
        #[command(flatten)]
        pair: commands::dist::Pair,
    },
    /// Lower and upper bounds without search.
    Bounds {
        #[command(flatten)]
        pair: commands::dist::Pair,
    },
}

#[derive(Debug, Args)]
struct BoxArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Cross-check against breadth-first search on the skeleton.
    #[arg(long)]
    verify: bool,
    /// State cap for `--verify`.
    #[arg(long, env = "POLYFLIP_MAX_STATES", default_value_t = 1_000_000)]
    max_states: usize,
}

#[derive(Debug, Subcommand)]
enum CheckKind {
    /// Submodularity of the oracle described by an instance file.
    Submodular {
        #[arg(long)]
        instance: PathBuf,
        /// Oracle for graph files.
        #[arg(long, value_enum, default_value = "incidence")]
        oracle: commands::check::GraphOracle,
        /// Seed for sampled checks on ground sets too large to enumerate.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
    },
    /// Whether an orientation is acyclic; prints a cycle otherwise.
    Acyclic {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        orientation: PathBuf,
    },
    /// Greedy vertices against head-count vectors of acyclic orientations.
    Correspondence {
        /// A single hypergraph file.
        #[arg(long, conflicts_with = "all_up_to")]
        hypergraph: Option<PathBuf>,
        /// Every hypergraph on up to this many vertices.
        #[arg(long)]
        all_up_to: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    CheckFailed,
}

fn run(cli: Cli) -> error::CliResult<(Report, Status)> {
    let strictness = if cli.lax { Strictness::Lax } else { Strictness::Strict };
    match cli.command {
        Command::Dist { mode } => match mode {
            DistMode::Exact {
                pair,
                forbid,
                max_states,
            } => commands::dist::exact(&pair, &forbid, max_states, strictness),
            DistMode::Approx { pair } => commands::dist::approx(&pair, strictness),
            DistMode::Bounds { pair } => commands::dist::bounds(&pair, strictness),
        },
        Command::Box(args) => commands::boxes::run_box(&args.instance, args.verify, args.max_states, strictness),
        Command::Pcfct(args) => commands::boxes::run_pcfct(&args.instance, args.verify, args.max_states, strictness),
        Command::Gen { generator } => commands::gen::run(generator, strictness),
        Command::Check { check } => match check {
            CheckKind::Submodular {
                instance,
                oracle,
                seed,
                samples,
            } => commands::check::submodular(&instance, oracle, seed, samples, strictness),
            CheckKind::Acyclic {
                hypergraph,
                orientation,
            } => commands::check::acyclic(&hypergraph, &orientation, strictness),
            CheckKind::Correspondence {
                hypergraph,
                all_up_to,
                max_edges,
                max_size,
            } => commands::check::correspondence(hypergraph.as_deref(), all_up_to, max_edges, max_size, strictness),
        },
        Command::Matroid { instance } => commands::matroid::run(&instance, strictness),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok((report, status)) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(report.render(format).as_bytes());
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::CheckFailed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
