//! The `catmap` command line. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

mod commands;
pub mod payload;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "catmap", version, about = "Exact discrete cat maps in any dimension")]
pub struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the primary result (text mode) and no progress notes.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the n-dimensional cat map matrix.
    Matrix { n: usize },
    /// Restoration period for an N×N grid (or N^dim lattice).
    Period {
        n: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Give up after this many matrix powers (dim > 2 only).
        #[arg(long, default_value_t = catmap::DEFAULT_CAP)]
        cap: u64,
    },
    /// Periods, classes and bound checks for a range of N.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Scramble a square PPM or PNG image.
    Scramble {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        iters: u64,
        /// Also write every intermediate step next to the output.
        #[arg(long)]
        emit_frames: bool,
        /// Output file; defaults to `<stem>_t<iters>.<ext>` beside the input.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit of one lattice point, e.g. `orbit 1,1 3`.
    Orbit { point: String, n: u64 },
    /// The i-th Fibonacci number, or its residue.
    Fib {
        i: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Characteristic polynomial of the n-dimensional map.
    Charpoly { n: usize },
    /// Eigenvalues and the chaos conditions.
    Eigen {
        n: usize,
        #[arg(long, default_value_t = catmap::spectral::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Dominant eigenvalue for dimensions 2..=n_max.
    Trend {
        #[arg(default_value_t = catmap::spectral::DEFAULT_TREND_MAX)]
        n_max: usize,
    },
    /// Cycle structure of the map on the whole lattice.
    Density {
        n: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

/// A failed command, classified for the exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<catmap::CatMapError> for CliError {
    fn from(e: catmap::CatMapError) -> Self {
        use catmap::CatMapError::*;
        match e {
            CapExceeded { .. } | PigeonholeViolation { .. } | RootEstimation { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// What a command produced: full text, the quiet form, and JSON.
pub(crate) struct Rendered {
    text: String,
    brief: String,
    json: String,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(r) => {
            let body = if cli.json {
                r.json
            } else if cli.quiet {
                r.brief
            } else {
                r.text
            };
            if body.is_empty() {
                return EXIT_OK;
            }
            match writeln!(out, "{body}") {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: writing output: {e}");
                    EXIT_COMPUTE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
