//! `chbound`: genus bounds, Hilbert function tables, surface invariants and
//! grid audits from the command line.
//!
//! Exit status: 0 on success, 1 when an audit or identity check finds a
//! violation, 2 on usage and validation errors.

mod commands;
mod envelope;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{BoundArgs, ExtremalArgs, HilbertArgs, SurfaceArgs, TableArgs, VerifyArgs};

#[derive(Debug, Parser)]
#[command(
    name = "chbound",
    version,
    about = "Exact genus bounds for space curves on low-degree surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Refined genus bound for (r, d, s, pi, p).
    Bound(BoundArgs),
    /// Model or profile-driven Hilbert function of the general plane section.
    Hilbert(HilbertArgs),
    /// Arithmetic genus of a surface from its h1 profile.
    Surface(SurfaceArgs),
    /// Genus assembly of the cone construction.
    Extremal(ExtremalArgs),
    /// Bound as a function of d over a range.
    Table(TableArgs),
    /// Run the identity audits over a parameter grid.
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bound(a) => commands::bound(a),
        Command::Hilbert(a) => commands::hilbert(a),
        Command::Surface(a) => commands::surface(a),
        Command::Extremal(a) => commands::extremal(a),
        Command::Table(a) => commands::table(a),
        Command::Verify(a) => commands::verify(a),
    };
    match outcome {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
