//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration error, 2 identity-suite failure,
//! 3 reproduction failure.

mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::CrError;

pub use commands::{execute, Command, Outcome};
pub use config::{Fault, Format, RunConfig, Settings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_IDENTITY: i32 = 2;
pub const EXIT_REPRODUCTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cr-spectra",
    version,
    about = "Exact Kohn Laplacian and CR Paneitz spectra on S^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Check the structure equations and operator identities exactly.
    Verify(Opts),
    /// Negative Paneitz eigenvalues on the invariant subspaces V_k.
    Paneitz(Opts),
    /// Eigenvalue laws on the standard sphere.
    Sphere(Opts),
    /// Smallest positive Kohn Laplacian eigenvalue by degree cutoff.
    Kohn(Opts),
    /// Harmonic bases.
    Basis {
        #[command(subcommand)]
        action: BasisAction,
    },
}

#[derive(Debug, Subcommand)]
enum BasisAction {
    /// Print the basis of H(p,q), or of every H(p,q) with p + q <= max-degree.
    Dump(DumpOpts),
}

#[derive(Debug, Args)]
struct DumpOpts {
    #[arg(long, requires = "q")]
    p: Option<u32>,
    #[arg(long, requires = "p")]
    q: Option<u32>,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Args)]
struct Opts {
    /// Flat key = value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated exact rationals p/q.
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    kmax: Option<String>,
    #[arg(long = "max-degree")]
    max_degree: Option<String>,
    /// Working precision of the eigensolver in bits.
    #[arg(long)]
    precision: Option<String>,
    /// default | random:<seed> | file:<path>
    #[arg(long = "seed-choice")]
    seed_choice: Option<String>,
    /// json | csv
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long)]
    jobs: Option<String>,
    /// Accept decimal t; output is labelled numeric-only.
    #[arg(long = "float-t")]
    float_t: bool,
    /// Random sample polynomials per t (verify).
    #[arg(long)]
    samples: Option<String>,
    /// Seed of the sample generator (verify).
    #[arg(long = "sample-seed")]
    sample_seed: Option<String>,
    #[arg(long = "inject-fault", hide = true)]
    inject_fault: Option<String>,
}

impl Opts {
    fn settings(&self) -> Result<Settings, CrError> {
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let mut cli = Settings::default();
        let pairs = [
            ("t", &self.t),
            ("kmax", &self.kmax),
            ("max-degree", &self.max_degree),
            ("precision", &self.precision),
            ("seed-choice", &self.seed_choice),
            ("format", &self.format),
            ("jobs", &self.jobs),
            ("samples", &self.samples),
            ("sample-seed", &self.sample_seed),
            ("inject-fault", &self.inject_fault),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cli.set(key, v.as_str())?;
            }
        }
        if let Some(out) = &self.out {
            cli.set("out", out.to_string_lossy())?;
        }
        if self.float_t {
            cli.set("float-t", "true")?;
        }
        Ok(file.overlay(cli))
    }
}

/// Exit code for an error raised while running a command.
pub fn exit_code(err: &CrError) -> i32 {
    match err {
        CrError::Parse(_)
        | CrError::NotPseudoconvex(_)
        | CrError::InvalidParameter(_)
        | CrError::SeedRejected(_)
        | CrError::Io(_) => EXIT_CONFIG,
        CrError::IdentityFailure { .. } => EXIT_IDENTITY,
        CrError::NonReal(_)
        | CrError::Inconsistency(_)
        | CrError::InvarianceViolation { .. }
        | CrError::NotPositiveDefinite(_) => EXIT_REPRODUCTION,
    }
}

fn parse_command(cli: Cli) -> Result<(Command, RunConfig), CrError> {
    let (command, opts, default_t, default_degree) = match &cli.command {
        Sub::Verify(o) => (Command::Verify, o, "0,1/2,-1/3", 6),
        Sub::Paneitz(o) => (Command::Paneitz, o, "1/2", 8),
        Sub::Sphere(o) => (Command::Sphere, o, "0", 8),
        Sub::Kohn(o) => (Command::Kohn, o, "1/2", 8),
        Sub::Basis {
            action: BasisAction::Dump(d),
        } => (Command::BasisDump { pq: d.p.zip(d.q) }, &d.opts, "0", 3),
    };
    let config = RunConfig::from_settings(&opts.settings()?, default_t, default_degree)?;
    Ok((command, config))
}

/// Runs the program on `args` (including the program name), writing the
/// report to `stdout` or the configured output file.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (command, config) = match parse_command(cli) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let outcome = match execute(&command, &config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => stdout.write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_CONFIG;
    }
    if let Some(msg) = &outcome.message {
        let _ = writeln!(stderr, "{msg}");
    }
    outcome.code
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
