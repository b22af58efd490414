//! Command-line front end.

mod commands;
pub mod envelope;
pub mod schema;
pub mod svg;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use envelope::ResultEnvelope;
pub use schema::SystemFile;
pub use svg::{emit_svg, BoundingBox, PlotSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl CliError {
    pub(crate) fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Computation(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Verification(_) | CliError::Computation(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "trop-ci", version, about = "Exact computations with tropical complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Include quantities of the closures in the toric variety.
    #[arg(long, global = true)]
    pub compact: bool,
    /// Seed of the perturbation oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Clipping box for plots, as x0,y0,x1,y1.
    #[arg(long, global = true)]
    pub bbox: Option<BoundingBox>,
    /// Run brute-force cross-checks and report their agreement.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct Input {
    /// System file; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual subdivisions and the mixed subdivision.
    Subdivide(Input),
    /// Nondegeneracy of the system.
    Nondegenerate(Input),
    /// Intersection cells with their multiplicities.
    Weights(Input),
    /// Weighted count of intersection points of a square system.
    Bernstein(Input),
    /// Patchworked cell counts and Euler characteristics.
    Patchwork(Input),
    /// Ehrhart data and mixed signatures.
    Signature(Input),
    /// Euler characteristic against mixed signature.
    Verify(Input),
    /// Coefficient identities.
    Identities {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// SVG picture of a plane system.
    Plot {
        #[command(flatten)]
        input: Input,
        /// Output file.
        #[arg(long, short)]
        output: PathBuf,
        /// Draw the dual subdivisions beside the curves.
        #[arg(long)]
        dual: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Subdivide(_) => "subdivide",
            Command::Nondegenerate(_) => "nondegenerate",
            Command::Weights(_) => "weights",
            Command::Bernstein(_) => "bernstein",
            Command::Patchwork(_) => "patchwork",
            Command::Signature(_) => "signature",
            Command::Verify(_) => "verify",
            Command::Identities { .. } => "identities",
            Command::Plot { .. } => "plot",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::Subdivide(i)
            | Command::Nondegenerate(i)
            | Command::Weights(i)
            | Command::Bernstein(i)
            | Command::Patchwork(i)
            | Command::Signature(i)
            | Command::Verify(i) => Some(i),
            Command::Plot { input, .. } => Some(input),
            Command::Identities { .. } => None,
        }
    }
}

fn read_input(input: &Input) -> Result<Vec<u8>, CliError> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(buf)
        }
    }
}

/// Result of one invocation: the exit code, the envelope when the command
/// ran, and the error otherwise.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub envelope: Option<ResultEnvelope>,
    pub error: Option<CliError>,
}

pub fn execute(cli: &Cli) -> Outcome {
    let run = || -> Result<ResultEnvelope, CliError> {
        let (raw, file) = match cli.command.input() {
            Some(i) => {
                let raw = read_input(i)?;
                let text = String::from_utf8(raw.clone()).map_err(|_| CliError::Validation("input is not UTF-8".into()))?;
                (Some(raw), Some(SystemFile::parse(&text)?))
            }
            None => (None, None),
        };
        let sys = file.as_ref().map(SystemFile::to_system).transpose()?;
        let (outputs, verdicts) = commands::dispatch(cli, sys.as_ref())?;
        Ok(ResultEnvelope {
            command: cli.command.name().to_string(),
            input_digest: raw.as_deref().map(envelope::digest),
            input: file.map(|f| serde_json::to_value(f).expect("serializable")),
            outputs,
            verdicts,
        })
    };
    Outcome::from_result(run())
}

impl Outcome {
    /// Exit code 1 when a verdict is false, the error's code on failure.
    pub fn from_result(res: Result<ResultEnvelope, CliError>) -> Self {
        match res {
            Ok(env) => Outcome { code: if env.passed() { 0 } else { 1 }, envelope: Some(env), error: None },
            Err(e) => Outcome { code: e.exit_code(), envelope: None, error: Some(e) },
        }
    }
}

/// Parses `argv`, runs the command, prints the envelope to standard output
/// and returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cli);
    if let Some(env) = &out.envelope {
        use std::io::Write;
        let text = serde_json::to_string_pretty(env).expect("serializable");
        // a closed pipe is not an error of the command
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    out.code
}
