use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyshape_cli::commands::{
    run_design, run_iterate, run_region, run_spectrum, run_verify, DesignArgs, IterateArgs,
    RegionArgs, SpectrumArgs, VerifyArgs,
};
use polyshape_cli::exit;

/// Polygon transformations with complex edge weights.
#[derive(Debug, Parser)]
#[command(name = "polyshape", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the weights repeatedly and write the normalized frames.
    Iterate(IterateArgs),
    /// Eigenvalues of the transition matrix.
    Spectrum(SpectrumArgs),
    /// Weights whose limit shape is the target.
    Design(DesignArgs),
    /// Admissible scalings for competing eigenvalues.
    Region(RegionArgs),
    /// Check that weights drive a random start to the target.
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() {
                exit::PARSE
            } else {
                exit::SUCCESS
            });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Iterate(args) => run_iterate(args, &mut out),
        Command::Spectrum(args) => run_spectrum(args, &mut out),
        Command::Design(args) => run_design(args, &mut out),
        Command::Region(args) => run_region(args, &mut out),
        Command::Verify(args) => run_verify(args, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}
