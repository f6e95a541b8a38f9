//! Thin command-line front end; all logic lives in the library.

use clap::{Parser, Subcommand};
use nearhol::cli::{self, JobConfig, OutputFormat};
use nearhol::Error;

#[derive(Parser)]
#[command(name = "nearhol", about = "Highest-weight spectra of homogeneous bundles on compact Hermitian symmetric spaces", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition table for a bundle on a space.
    Spectrum {
        /// Space selector: I:p,q | II:n | III:n | IV:n | EIII | EVII
        #[arg(long)]
        space: String,
        /// Bundle selector: line:k | cotangent | mu:c1,c2,...
        #[arg(long)]
        bundle: String,
        /// Enumeration bound on Σmᵢ.
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        /// Output format: json | csv | md
        #[arg(long, default_value = "json")]
        output: String,
    },
    /// Run the named invariant suite.
    Verify {
        #[arg(long)]
        space: String,
        /// rootdata | weights | decomp | jordan | integrals | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random samples per numeric check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Degree-criterion consistency ledger.
    Conjecture {
        #[arg(long)]
        space: String,
        #[arg(long)]
        bundle: String,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Monte-Carlo samples per probed vector.
        #[arg(long, default_value_t = 40000)]
        samples: usize,
        /// Skip the numerical probes.
        #[arg(long)]
        no_probe: bool,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) => 2,
        Error::Unsupported(_) => 3,
        _ => 1,
    }
}

fn run(args: Args) -> Result<i32, Error> {
    match args.command {
        Command::Spectrum { space, bundle, cutoff, output } => {
            let config = JobConfig {
                space: cli::parse_space(&space)?,
                bundle: cli::parse_bundle(&bundle)?,
                cutoff,
                output: cli::parse_output(&output)?,
                seed: 0,
                suite: String::new(),
                samples: 0,
                probe: false,
            };
            print!("{}", cli::cmd_spectrum(&config)?);
            Ok(0)
        }
        Command::Verify { space, suite, seed, samples } => {
            let config = JobConfig {
                space: cli::parse_space(&space)?,
                bundle: cli::parse_bundle("line:0")?,
                cutoff: 0,
                output: OutputFormat::Markdown,
                seed,
                suite,
                samples,
                probe: false,
            };
            let (report, ok) = cli::cmd_verify(&config)?;
            print!("{report}");
            Ok(if ok { 0 } else { 1 })
        }
        Command::Conjecture { space, bundle, cutoff, seed, samples, no_probe } => {
            let config = JobConfig {
                space: cli::parse_space(&space)?,
                bundle: cli::parse_bundle(&bundle)?,
                cutoff,
                output: OutputFormat::Markdown,
                seed,
                suite: String::new(),
                samples,
                probe: !no_probe,
            };
            print!("{}", cli::cmd_conjecture(&config)?);
            Ok(0)
        }
    }
}

fn main() {
    let args = Args::parse();
    match run(args) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}
