//! Command-line front end: JSON in, verdicts / JSON / CSV out.
//!
//! Exit status: 0 when every check passed, 1 when a verification or assertion
//! failed, 2 for bad input, parameter errors and guard violations.

mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bollobas::constructions::ConstructionKind;
use bollobas::{Error, Guard};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bollobas", version, about = "Bollobás-type set-system inequalities, covers and bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Draws allowed before a randomized cover gives up.
    #[arg(long, global = true, default_value_t = 1000)]
    max_attempts: u32,

    /// Lift the work limit on exhaustive enumerations.
    #[arg(long, global = true)]
    guard_override: bool,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Read from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family system and print its inequality sum.
    Verify {
        /// Override the `t` recorded in the file.
        #[arg(long)]
        t: Option<usize>,
        /// Surjection [k] → [t] as 1-based values, e.g. 1,2,2.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Print the inequality sum for one or every surjection.
    Sum {
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, conflicts_with = "all")]
        phi: Option<String>,
        /// Every surjection [k] → [t].
        #[arg(long)]
        all: bool,
        /// One line per index sequence with the block sizes.
        #[arg(long)]
        terms: bool,
    },
    /// Emit a construction as family-system JSON.
    Construct {
        #[arg(long)]
        kind: ConstructionKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Size of the first set (classical-pairs).
        #[arg(long, requires = "b")]
        a: Option<usize>,
        /// Size of the second set (classical-pairs).
        #[arg(long, requires = "a")]
        b: Option<usize>,
    },
    /// Covers of the partite hypergraph H_{k,t}(n).
    #[command(subcommand)]
    Cover(CoverCommand),
    /// CSV of s, S(k,s), min f(π,t) and a minimizing partition.
    Partitions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: Option<usize>,
        /// Also check that f(π,t) only grows under refinement.
        #[arg(long)]
        check: bool,
    },
    /// Permutation chain families of a (k,k)-tuple.
    #[command(subcommand)]
    Chains(ChainsCommand),
    /// Closed-form bounds on f_{k,t}(n) and log₂ β_{k,t}(n).
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        csv: bool,
        /// Solve f_{k,t}(n) exactly and fail on any violated bound.
        #[arg(long)]
        exact: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria (1-10).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Check a cover JSON.
    Verify,
    /// Randomized cover from independent colorings.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
        /// Colorings per t-subset (default from the sample-count formula).
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Minimum cover by exhaustive search.
    Exact {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
    /// Family-system JSON → cover JSON.
    FromTuple,
    /// Cover JSON → family-system JSON.
    ToTuple,
}

#[derive(Subcommand)]
enum ChainsCommand {
    /// Disjointness and per-σ counts.
    Verify,
}

/// A subcommand's outcome, used for the exit status.
enum Status {
    Ok,
    Failed,
}

struct Ctx {
    global: Global,
    out: Box<dyn Write>,
    /// Primary artifact written to disk, if any.
    artifact: Option<PathBuf>,
}

impl Ctx {
    fn guard(&self) -> Guard {
        if self.global.guard_override {
            Guard::unlimited()
        } else {
            Guard::default()
        }
    }

    fn read_input(&self) -> Result<String, Error> {
        let mut text = String::new();
        match &self.global.input {
            Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
            _ => {
                io::stdin().read_to_string(&mut text)?;
            }
        }
        Ok(text)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotBollobas { .. } | Error::InvalidCover(_) | Error::Invariant(_) | Error::AttemptsExhausted { .. } => 1,
        _ => 2,
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Sum { .. } => "sum",
        Command::Construct { .. } => "construct",
        Command::Cover(CoverCommand::Verify) => "cover verify",
        Command::Cover(CoverCommand::Random { .. }) => "cover random",
        Command::Cover(CoverCommand::Exact { .. }) => "cover exact",
        Command::Cover(CoverCommand::FromTuple) => "cover from-tuple",
        Command::Cover(CoverCommand::ToTuple) => "cover to-tuple",
        Command::Partitions { .. } => "partitions",
        Command::Chains(_) => "chains verify",
        Command::Bounds { .. } => "bounds",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = subcommand_name(&cli.command);
    let start = Instant::now();

    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("bollobas {name}: cannot start {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let out: Box<dyn Write> = match &cli.global.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("bollobas {name}: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let artifact = cli.global.output.clone();
    let mut ctx = Ctx { global: cli.global, out, artifact };

    let result = commands::dispatch(&mut ctx, cli.command).and_then(|s| {
        ctx.out.flush()?;
        Ok(s)
    });
    let elapsed = start.elapsed().as_secs_f64();
    let code = match result {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            eprintln!("bollobas {name}: error: {e}");
            exit_code(&e)
        }
    };
    match &ctx.artifact {
        Some(p) if code == 0 => eprintln!("bollobas {name}: done in {elapsed:.3}s, wrote {}", p.display()),
        _ => eprintln!("bollobas {name}: exit {code} after {elapsed:.3}s"),
    }
    ExitCode::from(code)
}
