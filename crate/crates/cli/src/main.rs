//! Batch front end: every command prints one JSON document on stdout.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 domain error, 3 two
//! computation paths disagree, 4 configuration error.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use padic_circle::Error;
use serde_json::json;

use config::{Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "padic-circle", version, about = "Exact p-adic Eisenstein measures, circle action and Kummer torsion")]
struct Cli {
    /// Odd prime.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// p-adic precision: work modulo p^N.
    #[arg(long = "N", global = true)]
    n: Option<u32>,
    /// q-adic precision: keep coefficients up to q^M.
    #[arg(long = "M", global = true)]
    m: Option<usize>,
    /// The unit a of the Eisenstein measure.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Level cap for locally constant refinement.
    #[arg(long, global = true)]
    mmax: Option<u32>,
    /// Worker threads for coefficient loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat key=value file with any of p, N, M, a, mmax, threads.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The series 2G_k, optionally twisted by a locally constant function.
    Eisenstein {
        #[arg(long)]
        k: u32,
        /// Function descriptor, e.g. '{"kind":"indicator","level":1,"class":1}'.
        #[arg(long)]
        twist: Option<String>,
    },
    /// mu^(a)(z^{k-1}) and its constant term.
    Moment {
        #[arg(long)]
        k: u32,
    },
    /// nu(x^s y^t) by convolution and by the closed form.
    Nu {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
    },
    /// The two-variable L-series for a pair of characters of Z_p^x.
    Lvalue {
        /// "trivial" or '{"level":1,"values":[0,1,-1,-1,1]}'.
        #[arg(long, default_value = "trivial")]
        chi1: String,
        #[arg(long, default_value = "trivial")]
        chi2: String,
    },
    /// Run an invariant suite.
    Verify {
        /// One of moments, congruences, action, amice, kummer, nu, all.
        #[arg(default_value = "all")]
        suite: String,
        /// Torsion level for the kummer suite.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Seed for the random inputs.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Cayley table, pairing matrix and Serre-Tate check of G_q[p^k].
    Kummer {
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Evaluate a measure on a function.
    Eval {
        /// Measure descriptor, e.g. '{"kind":"dirac","c":1}'.
        #[arg(long)]
        measure: String,
        /// Function descriptor, e.g. '{"kind":"monomial","degree":3}'.
        #[arg(long)]
        f: String,
    },
}

/// Why a command did not succeed.
pub enum Failure {
    Verification,
    Disagreement,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidContext(_) | Error::InvalidDescriptor(_) | Error::InvalidArgument(_) => 4,
        _ => 2,
    }
}

fn report_error(e: &Error) -> ExitCode {
    let body = json!({ "code": e.code(), "message": e.to_string() });
    eprintln!("{body}");
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let overrides = Overrides { p: cli.p, n: cli.n, m: cli.m, a: cli.a, m_max: cli.mmax, threads: cli.threads };
    let cfg = match RunConfig::resolve(&overrides, cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => return report_error(&e),
    };
    if let Some(threads) = cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            return report_error(&Error::InvalidContext(e.to_string()));
        }
    }
    let (output, failure) = match commands::run(&cli.command, &cfg) {
        Ok(out) => (Some(out), None),
        Err(commands::Outcome { output, failure }) => (output, Some(failure)),
    };
    if let Some(doc) = output {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{doc}");
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Verification) => ExitCode::from(1),
        Some(Failure::Disagreement) => ExitCode::from(3),
        Some(Failure::Error(e)) => report_error(&e),
    }
}
