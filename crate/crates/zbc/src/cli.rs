//! Argument parsing and exit codes: 0 success, 1 verification failure,
//! 2 usage or configuration error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, Common, Outcome};
use crate::config::ChannelConfig;
use crate::error::CliResult;
use crate::output::emit;
use crate::parallel::thread_pool;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "zbc",
    version,
    about = "Capacity region, optimal strategies and turbo coding for the two-user broadcast Z channel"
)]
pub struct Cli {
    /// Maximum worker threads; results do not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report rates in nats instead of bits
    #[arg(long, global = true)]
    pub nats: bool,
    /// Write the artifact here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ChannelArgs {
    /// Crossover of the better receiver
    #[arg(long, default_value_t = 0.15)]
    pub alpha1: f64,
    /// Crossover of the worse receiver
    #[arg(long, default_value_t = 0.6)]
    pub alpha2: f64,
}

impl From<ChannelArgs> for ChannelConfig {
    fn from(a: ChannelArgs) -> Self {
        ChannelConfig {
            alpha1: a.alpha1,
            alpha2: a.alpha2,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace the capacity region boundary as CSV
    Boundary {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Optimal strategy for the weighted sum rate R1 + lambda R2
    Optimize {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        lambda: f64,
    },
    /// Run an oracle check; exits 1 if it fails
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Monte Carlo rates of independently encoded users
    Simulate {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        mu1: f64,
        #[arg(long)]
        mu2: f64,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Bit error rates of the two-user turbo scheme
    Codec(CodecArgs),
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Brute-force strategy grid against the traced boundary
    Grid {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// Directional derivative signs and finite differences
    Derivatives {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        channels: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Grid argmax of the weighted sum rate against the closed form
    Theorem3 {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 20)]
        lambdas: usize,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Two-stage channel against the weaker arm
    Degradation {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 10_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.002)]
        tolerance: f64,
    },
    /// Positivity of g on a grid
    Gfunction {
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrellisArg {
    ShiftRegister,
    Recursive,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Label table of user 1 (default: the shipped table)
    #[arg(long)]
    pub labels1: Option<PathBuf>,
    /// Label table of user 2 (default: the shipped table)
    #[arg(long)]
    pub labels2: Option<PathBuf>,
    /// Interleaver length in pair symbols
    #[arg(long, default_value_t = 2048)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    #[arg(long, default_value_t = 10)]
    pub frames: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub interleaver_seed: u64,
    /// Zero probability of user 1's codeword assumed by the user-2 decoders
    #[arg(long, default_value_t = 0.804)]
    pub mu1: f64,
    /// Erase positions of the re-encoded user-2 codeword instead of using
    /// its bit probabilities
    #[arg(long)]
    pub hard: bool,
    /// Send both codewords without noise
    #[arg(long)]
    pub noiseless: bool,
    /// Next-state rule of both constituent encoders
    #[arg(long, value_enum, default_value_t = TrellisArg::ShiftRegister)]
    pub trellis: TrellisArg,
}

impl CodecArgs {
    fn options(&self) -> commands::CodecOptions {
        commands::CodecOptions {
            labels1: self.labels1.clone(),
            labels2: self.labels2.clone(),
            k: self.k,
            iters: self.iters,
            frames: self.frames,
            seed: self.seed,
            interleaver_seed: self.interleaver_seed,
            mu1: self.mu1,
            hard: self.hard,
            noiseless: self.noiseless,
            trellis: match self.trellis {
                TrellisArg::Recursive => commands::TrellisChoice::Recursive,
                TrellisArg::ShiftRegister => commands::TrellisChoice::ShiftRegister,
            },
        }
    }
}

/// Runs the parsed command without writing anything.
pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let c = Common {
        nats: cli.nats,
        out: cli.out.clone(),
    };
    let pool = thread_pool(cli.threads)?;
    pool.install(|| match &cli.command {
        Command::Boundary { channel, points } => commands::boundary(&c, (*channel).into(), *points),
        Command::Optimize { channel, lambda } => commands::optimize(&c, (*channel).into(), *lambda),
        Command::Simulate {
            channel,
            mu1,
            mu2,
            samples,
            seed,
        } => commands::simulate(
            &c,
            (*channel).into(),
            &commands::SimulateOptions {
                mu1: *mu1,
                mu2: *mu2,
                samples: *samples,
                seed: *seed,
            },
        ),
        Command::Codec(args) => commands::codec(&c, args.channel.into(), &args.options()),
        Command::Verify { suite } => match suite {
            Suite::Grid {
                channel,
                step,
                points,
                tolerance,
            } => commands::verify_grid(
                &c,
                (*channel).into(),
                &commands::GridOptions {
                    step: *step,
                    points: *points,
                    tolerance: *tolerance,
                    ..Default::default()
                },
            ),
            Suite::Derivatives {
                samples,
                channels,
                seed,
                tolerance,
            } => commands::verify_derivatives(
                &c,
                &commands::DerivativeOptions {
                    samples: *samples,
                    channels: *channels,
                    seed: *seed,
                    tolerance: *tolerance,
                    ..Default::default()
                },
            ),
            Suite::Theorem3 {
                channel,
                lambdas,
                step,
            } => commands::verify_theorem3(
                &c,
                (*channel).into(),
                &commands::Theorem3Options {
                    lambdas: *lambdas,
                    step: *step,
                    ..Default::default()
                },
            ),
            Suite::Degradation {
                channel,
                samples,
                seed,
                tolerance,
            } => commands::verify_degradation_suite(
                &c,
                (*channel).into(),
                &commands::DegradationOptions {
                    samples: *samples,
                    seed: *seed,
                    tolerance: *tolerance,
                },
            ),
            Suite::Gfunction { step } => commands::verify_gfunction(
                &c,
                &commands::GFunctionOptions {
                    step: *step,
                    ..Default::default()
                },
            ),
        },
    })
}

/// Parses `args`, runs the command, writes its artifact and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("zbc: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = emit(&outcome.text, cli.out.as_deref()) {
        eprintln!("zbc: {e}");
        return EXIT_USAGE;
    }
    match outcome.failure {
        None => EXIT_OK,
        Some(msg) => {
            eprintln!("zbc: verification failed: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}
