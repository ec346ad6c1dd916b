mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{ConstructArgs, MolsArgs, PlotDataArgs, SfdArgs, VerifyArgs};

/// Doubly orthogonal quasi-Sudoku squares, quasi-sliced orthogonal arrays and
/// sliced space-filling designs.
#[derive(Debug, Parser)]
#[command(name = "qsudoku", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a set of mutually orthogonal Latin squares.
    Mols(MolsArgs),
    /// Build product squares, overlay, orthogonal array and slices.
    Construct(ConstructArgs),
    /// Build a sliced space-filling design.
    Sfd(SfdArgs),
    /// Re-run a verifier on a file or an embedded fixture.
    Verify(VerifyArgs),
    /// Emit the 2D projection of a design as CSV.
    PlotData(PlotDataArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Mols(args) => commands::mols(&args),
        Command::Construct(args) => commands::construct(&args),
        Command::Sfd(args) => commands::sfd(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::PlotData(args) => commands::plot_data(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
