//! `ggmorse`: exact Morse-inequality bounds and verification suites.
//!
//! Exit status is 0 when every verdict passes, 1 when a verification fails
//! and 2 on a usage error.

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ggmorse_core::Error;
use rayon::prelude::*;

use args::{Cli, Command, OutputArgs, Suite};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Order-preserving parallel map that stops at the first error.
pub(crate) fn par_map<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, Error> + Sync + Send,
) -> Result<Vec<U>, Error> {
    items.par_iter().map(f).collect()
}

fn out_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Bound(a) => &a.out,
        Command::Morse(a) => &a.out,
        Command::Coeffs(a) => &a.out,
        Command::Verify(a) | Command::VerifyLemmas(a) | Command::VerifyWhitney(a) => &a.out,
        Command::Annex(a) => &a.out,
    }
}

fn dispatch(cmd: &Command) -> Result<run::Rendered, Error> {
    match cmd {
        Command::Bound(a) => run::bound(a),
        Command::Morse(a) => run::morse(a),
        Command::Coeffs(a) => run::coeffs(a),
        Command::Verify(a) => run::verify(a, a.suite.unwrap_or(Suite::All)),
        Command::VerifyLemmas(a) => run::verify(a, Suite::Lemmas),
        Command::VerifyWhitney(a) => run::verify(a, Suite::Whitney),
        Command::Annex(a) => run::annex(a),
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_)
            | Error::ParseRational(_)
            | Error::JetOrderNotDimension { .. }
            | Error::ZeroDenominator
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = out_args(&cli.command);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = out.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_FAILED);
        }
    };
    let rendered = match pool.install(|| dispatch(&cli.command)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            });
        }
    };
    let written = match &out.output {
        Some(path) => std::fs::write(path, &rendered.body),
        None => std::io::stdout().lock().write_all(rendered.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_FAILED);
    }
    if rendered.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
