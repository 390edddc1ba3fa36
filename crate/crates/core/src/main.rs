use clap::{Parser, Subcommand};

use decolab::cli::{
    run_basis_defect, run_cat, run_composite, run_decohere, run_maxent, run_planck,
    BasisDefectArgs, CatArgs, CompositeArgs, DecohereArgs, MaxentArgs, PlanckArgs,
};

/// Numerical laboratory for thermal density matrices, blackbody
/// radiation laws, and basis-dependent dephasing channels.
#[derive(Parser)]
#[command(name = "decolab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate Planck, Rayleigh-Jeans, Bose-Einstein, and mode-density
    /// curves over a frequency grid (CSV).
    Planck(PlanckArgs),
    /// Maximize entropy on a discrete spectrum under a mean-energy
    /// constraint (JSON report).
    Maxent(MaxentArgs),
    /// Run a repeated-scattering dephasing channel and log the
    /// off-diagonal decay curve (CSV).
    Decohere(DecohereArgs),
    /// Measure how far dephasing is from commuting with a change of
    /// basis (JSON report).
    BasisDefect(BasisDefectArgs),
    /// The equal-superposition two-level scenario in both bases
    /// (JSON report).
    Cat(CatArgs),
    /// Exact system-environment entanglement run with pointer overlaps
    /// (JSON report + CSV curves).
    Composite(CompositeArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Planck(args) => run_planck(args),
        Command::Maxent(args) => run_maxent(args),
        Command::Decohere(args) => run_decohere(args),
        Command::BasisDefect(args) => run_basis_defect(args),
        Command::Cat(args) => run_cat(args),
        Command::Composite(args) => run_composite(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
