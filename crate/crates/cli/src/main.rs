use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use derivlab::ParamRequest;
use derivlab_cli::run::{build_algebra, classify_outcome, reproduce, run_task, Outcome, RunError};
use derivlab_cli::task::{AlgebraSpec, InputError, TaskSpec, DEFAULT_DEPTH, DEFAULT_SAMPLES};

/// Bounded certification of local nilpotency for derivations and linear maps.
///
/// Exit status: 0 certified, 1 refuted, 2 inconclusive, 3 bad input,
/// 4 internal consistency failure.
#[derive(Debug, Parser)]
#[command(name = "derivlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the task described by a JSON file.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a named example and check its claims.
    Reproduce {
        example: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a finite-dimensional algebra given by structure constants.
    Classify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(InputError::new(path.display().to_string(), format!("cannot read: {e}"))))
}

fn nonzero(v: usize, field: &str) -> Result<usize, RunError> {
    if v == 0 {
        return Err(RunError::Input(InputError::new(field, "must be positive")));
    }
    Ok(v)
}

fn execute(cmd: &Command) -> Result<Outcome, RunError> {
    match cmd {
        Command::Check { input, .. } => {
            let spec = TaskSpec::parse(&read(input)?)?;
            run_task(&spec)
        }
        Command::Reproduce {
            example,
            n,
            characteristic,
            seed,
            depth,
            ..
        } => reproduce(
            example,
            ParamRequest {
                n: *n,
                characteristic: *characteristic,
                seed: *seed,
            },
            nonzero(*depth, "--depth")?,
        ),
        Command::Classify {
            algebra,
            samples,
            seed,
            depth,
            ..
        } => {
            let spec = AlgebraSpec::parse(&read(algebra)?)?;
            let alg = build_algebra(&spec, "")?;
            classify_outcome(&alg, &[], nonzero(*samples, "--samples")?, nonzero(*depth, "--depth")?, *seed)
        }
    }
}

/// Write through a sibling temp file so a reader never sees a partial report.
fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Check { out, .. } | Command::Reproduce { out, .. } | Command::Classify { out, .. } => out.clone(),
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = outcome.render();
            match &out {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                    println!("{}", outcome.summary);
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    let _ = stdout.write_all(text.as_bytes());
                    eprintln!("{}", outcome.summary);
                }
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
