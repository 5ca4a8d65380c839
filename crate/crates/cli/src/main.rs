//! `corkatlas`: invariants and atlases for the shadow-built Mazur families.

mod atlas;
mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::atlas::{AtlasFamily, Range};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "corkatlas", version, about = "Invariants of shadow-built Mazur manifolds and corks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Casson invariant, Mazur verdict and cork status of one instance.
    Invariants {
        /// Instance notation such as A(2,0), At(-1,-3/2), B(0,-1,-1), W+(1,2).
        instance: String,
    },
    /// CSV table over a parameter box.
    Atlas {
        /// Family: A, At, B, W+ or W-.
        family: AtlasFamily,
        #[arg(short = 'l', allow_hyphen_values = true)]
        l: Option<Range>,
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: Option<Range>,
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: Option<Range>,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: Option<Range>,
        /// Output file; standard output when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Alexander polynomial of a PD file with closed-form comparison.
    Oracle {
        pd: PathBuf,
        /// Largest factor degree tried by the Fox-Milnor search.
        #[arg(long, default_value_t = 6)]
        fox_degree: usize,
    },
    /// Framing coefficients realising target gleams.
    GleamSolve {
        /// Family: A, At or B.
        family: String,
        #[arg(short = 'l', allow_hyphen_values = true)]
        l: Option<i64>,
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: Option<i64>,
        /// For At the second gleam is n-1/2.
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Thurston-Bennequin number and the Stein criterion for a front file.
    SteinCheck { front: PathBuf },
    /// Kirby diagram tools.
    Kirby {
        #[command(subcommand)]
        action: KirbyAction,
    },
    /// Euler characteristic, homology and gleam checks of a polyhedron.
    ShadowInfo {
        /// A .poly file or a builtin name (abalone, a_tilde, bings_house).
        polyhedron: String,
        /// Gleam assignment region=value; repeat for every internal region.
        #[arg(short = 'g', long = "gleam", allow_hyphen_values = true)]
        gleams: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum KirbyAction {
    /// Replays a move script, monitoring the homology presentation.
    Replay { script: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Invariants { instance } => commands::invariants(&instance),
        Command::Atlas {
            family,
            l,
            m,
            n,
            k,
            output,
        } => {
            let csv = atlas::atlas(family, atlas::Ranges { l, m, n, k })?;
            match output {
                Some(path) => {
                    std::fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
        Command::Oracle { pd, fox_degree } => commands::oracle(&pd, fox_degree),
        Command::GleamSolve { family, l, m, n } => commands::gleam_solve(&family, l, m, n),
        Command::SteinCheck { front } => commands::stein_check(&front),
        Command::Kirby {
            action: KirbyAction::Replay { script },
        } => commands::kirby_replay(&script),
        Command::ShadowInfo { polyhedron, gleams } => commands::shadow_info(&polyhedron, &gleams),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
