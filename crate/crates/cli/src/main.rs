//! `g2het`: command line front end for the heterotic G₂ toolkit.
//!
//! Exit codes are `0` when the requested check passes, `1` when it fails and
//! `2` on usage, parse or precondition errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Output style shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Readable report with headings.
    Human,
    /// Deterministic machine-readable lines.
    Lines,
}

#[derive(Debug, Parser)]
#[command(name = "g2het", version, about = "Exact checks of invariant heterotic G2-systems on 2-step nilpotent Lie algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the 7-dimensional 2-step nilpotent Lie algebras.
    Catalog {
        /// Also print the invariants that separate the entries.
        #[arg(long)]
        fingerprints: bool,
    },
    /// Torsion forms of the standard G2-structure on an algebra.
    Torsion {
        /// A structure tuple such as "(0,0,0,0,0,0,e12+e34+e56)", dz-lines, or a catalog name.
        algebra: String,
    },
    /// Heterotic system checks.
    Het {
        #[command(subcommand)]
        command: HetCommand,
    },
    /// Principal bundle checks.
    Bundle {
        #[command(subcommand)]
        command: BundleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum HetCommand {
    /// Verify the system for the algebra and gauge field of a problem file.
    Verify {
        /// Problem file with [algebra] and [gauge] sections.
        file: PathBuf,
    },
    /// Run a bounded search described by the [options] of a spec file.
    Search {
        /// Spec file.
        file: PathBuf,
        /// Write every solution as a problem file into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum BundleCommand {
    /// Integrality of the cocycle on the factor-6 lattice for every curvature form.
    Check {
        /// Problem file with [algebra] and [gauge] sections.
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { fingerprints } => commands::catalog(fingerprints, cli.format),
        Command::Torsion { algebra } => commands::torsion(&algebra, cli.format),
        Command::Het {
            command: HetCommand::Verify { file },
        } => commands::het_verify(&file, cli.format),
        Command::Het {
            command: HetCommand::Search { file, out },
        } => commands::het_search(&file, out.as_deref(), cli.format),
        Command::Bundle {
            command: BundleCommand::Check { file },
        } => commands::bundle_check(&file, cli.format),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
