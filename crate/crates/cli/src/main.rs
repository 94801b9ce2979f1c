//! `hurwitz`: sequence files, transform pipelines, dynamics traces and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failures, 2 parse or I/O error,
//! 3 ring or precondition violation, 4 unknown suite.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hurwitz_core::br::{dynamics_converge, even_from_odd, is_in_br, odd_from_even};
use hurwitz_core::format;
use hurwitz_core::pipeline::PipelineSpec;
use hurwitz_core::transforms::{parity_check, zigzag_numbers};
use hurwitz_core::verify::{self, VerifyConfig};
use hurwitz_core::{DeltaValue, Error, Execution, HurwitzSeries, Ring, RingValue};

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Exact Hurwitz series transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a comma-separated pipeline such as `E,L:2,Bous`.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pipeline: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Iterate the autoconvolution towards its limit.
    Dynamics {
        #[arg(long)]
        input: PathBuf,
        /// Maximum number of iterations (default: the guaranteed bound).
        #[arg(long)]
        steps: Option<usize>,
        /// Print one line per iterate.
        #[arg(long)]
        trace: bool,
        /// Write the last iterate here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a seeded verification suite.
    Verify {
        /// ring, series, bell, transforms, br, dynamics or all.
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Distribute trials over threads. Reports are unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Report membership in the group of self-reciprocal series and parity.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Complete odd-index terms to a self-reciprocal series.
    CompleteOdds {
        #[arg(long)]
        ring: Ring,
        #[arg(long)]
        precision: usize,
        /// Comma-separated a_1, a_3, a_5, ...
        #[arg(long, allow_hyphen_values = true)]
        odds: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recover odd-index terms from even-index terms and a root of a_2.
    CompleteEvens {
        #[arg(long)]
        ring: Ring,
        #[arg(long)]
        precision: usize,
        /// Comma-separated a_2, a_4, a_6, ...
        #[arg(long, allow_hyphen_values = true)]
        evens: String,
        #[arg(long, allow_hyphen_values = true)]
        sqrt_a2: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a named series.
    Generate {
        kind: Kind,
        #[arg(long, default_value = "Z")]
        ring: Ring,
        #[arg(long)]
        precision: usize,
        /// Seed for `random`.
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Identity,
    Ones,
    Zigzag,
    /// Random unit series, coefficients in [-9, 9].
    Random,
}

enum Failure {
    Verify,
    Input(String),
    Violation(String),
    UnknownSuite(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Input(_) => 2,
            Failure::Violation(_) => 3,
            Failure::UnknownSuite(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn read_series(path: &Path) -> Result<HurwitzSeries, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_failure(path, e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))?
    };
    format::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_series(a: &HurwitzSeries, output: Option<&Path>) -> Result<(), Failure> {
    let text = format::emit(a);
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn parse_values(ring: Ring, list: &str) -> Result<Vec<RingValue>, Failure> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| ring.parse_value(s.trim()).map_err(Failure::from))
        .collect()
}

fn trace_line(n: usize, delta: DeltaValue) -> String {
    let k = delta.agreement();
    match delta {
        DeltaValue::EqualAtPrecision(_) => format!("n={n} k={k} delta=0"),
        DeltaValue::Differ(_) => format!("n={n} k={k} delta=2^-{k}"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Transform {
            input,
            pipeline,
            output,
        } => {
            let spec: PipelineSpec = pipeline.parse()?;
            let a = read_series(&input)?;
            let b = spec
                .apply(&a)
                .map_err(|e| Failure::from(e.source.clone()).with_message(e.to_string()))?;
            write_series(&b, output.as_deref())
        }
        Command::Dynamics {
            input,
            steps,
            trace,
            output,
        } => {
            let a = read_series(&input)?;
            let t = dynamics_converge(&a, steps)?;
            if trace {
                for s in &t.steps {
                    println!("{}", trace_line(s.n, s.delta));
                }
            }
            match t.converged_at {
                Some(n) => println!("converged_at={n}"),
                None => println!("converged_at=none"),
            }
            if let Some(path) = output {
                write_series(&t.last, Some(&path))?;
            }
            Ok(())
        }
        Command::Verify {
            suite,
            trials,
            seed,
            parallel,
        } => {
            let cfg = VerifyConfig {
                trials,
                seed,
                execution: if parallel {
                    Execution::Parallel
                } else {
                    Execution::Sequential
                },
            };
            let reports = verify::run_named(&suite, &cfg)
                .ok_or_else(|| Failure::UnknownSuite(format!("unknown suite {suite:?}")))?;
            let mut passed = true;
            for r in &reports {
                print!("{}", r.render());
                eprintln!("suite {}: {:.2}s", r.suite, r.elapsed.as_secs_f64());
                passed &= r.passed();
            }
            if passed {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Check { input } => {
            let a = read_series(&input)?;
            println!("in_br={}", is_in_br(&a));
            println!("parity={:?}", parity_check(&a));
            Ok(())
        }
        Command::CompleteOdds {
            ring,
            precision,
            odds,
            output,
        } => {
            let odds = parse_values(ring, &odds)?;
            write_series(&even_from_odd(ring, &odds, precision)?, output.as_deref())
        }
        Command::CompleteEvens {
            ring,
            precision,
            evens,
            sqrt_a2,
            output,
        } => {
            let evens = parse_values(ring, &evens)?;
            let root = ring.parse_value(&sqrt_a2)?;
            write_series(&odd_from_even(ring, &evens, &root, precision)?, output.as_deref())
        }
        Command::Generate {
            kind,
            ring,
            precision,
            seed,
            output,
        } => {
            let a = match kind {
                Kind::Identity => HurwitzSeries::identity(ring, precision)?,
                Kind::Ones => HurwitzSeries::ones(ring, precision)?,
                Kind::Zigzag => zigzag_numbers(ring, precision)?,
                Kind::Random => random_series(ring, precision, seed)?,
            };
            write_series(&a, output.as_deref())
        }
    }
}

impl Failure {
    fn with_message(self, message: String) -> Failure {
        match self {
            Failure::Input(_) => Failure::Input(message),
            Failure::Violation(_) => Failure::Violation(message),
            other => other,
        }
    }
}

/// Random unit series with coefficients drawn like the verification suites.
fn random_series(ring: Ring, n: usize, seed: u64) -> hurwitz_core::Result<HurwitzSeries> {
    if n == 0 {
        return HurwitzSeries::new(ring, Vec::new());
    }
    let mut rng = verify::trial_rng(seed, verify::Suite::Dynamics, 0, 0);
    Ok(verify::gen::unit_series(&mut rng, ring, n))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify => {}
                Failure::Input(m) | Failure::Violation(m) | Failure::UnknownSuite(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}
