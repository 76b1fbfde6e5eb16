//! `padic-bm`: closed forms and Monte-Carlo experiments for Brownian motion
//! on `Q_p^d`.
//!
//! Exit status is 0 when every verdict passes, 1 when a statistical check
//! fails and 2 for usage or configuration errors.

use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod output;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Density(a) => commands::density(&cli.common, a),
        Command::Exit(a) => commands::exit(&cli.common, a),
        Command::Conditional(a) => commands::conditional(&cli.common, a),
        Command::Marginals(a) => commands::marginals(&cli.common, a),
        Command::Limits(a) => commands::limits(&cli.common, a),
    };
    let report = match result {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for v in &report.verdicts {
        eprintln!("{v}");
    }
    if let Err(e) = output::emit(&cli.common, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.verdicts.iter().all(|v| v.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
