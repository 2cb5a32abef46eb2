//! `ohwalk` — walk simulation and verification on depth-2 ordered Hamming
//! graphs and their triangular lattice projections.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or resource errors (bad flags, malformed ratios, enumeration guard).

mod parse;
mod scan;
mod simulate;
mod verify;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ohwalk", version, about = "Quantum walks on depth-2 ordered Hamming graphs: verify, simulate, scan")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites (scheme relations, projection, polynomials, dynamics)
    Verify(verify::VerifyArgs),
    /// Evolve a source state and export amplitude snapshots
    Simulate(simulate::SimulateArgs),
    /// Grid-scan the evolution for transfer and revival events
    Scan(scan::ScanArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Scan(args) => scan::run(&args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
