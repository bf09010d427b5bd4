mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use commands::{Failure, Outcome};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// First prolongation to the cotangent coordinates; with --ideal, check invariance.
    Prolong,
    /// Lie bracket of two fields.
    Bracket,
    /// Singular locus summary, or a membership check with --point.
    Singular,
    /// Linear part at --point.
    Linpart,
    /// Resonance check of the linear part at --point.
    Resonance,
    /// Darboux polynomials of degree at most --max-degree.
    Darboux,
    /// Invariance of the ideal given by --ideal.
    Invariant,
    /// Invariance of the one-form given by --oneform.
    Codim1,
    /// Projective extension of an affine field.
    Homogenize,
    /// Affine field from a homogeneous field with vanishing first component.
    Dehomogenize,
    /// Derivation on affine chart --chart.
    Chart,
    /// Pole order along the hyperplane --hyperplane.
    PoleOrder,
    /// Differential equation satisfied by --observable up to --order.
    JetOde,
    /// Bounded-evidence certificate at --point.
    Certify,
    /// Singular locus and degenerate-case notes.
    Structure,
}

#[derive(Debug, Parser)]
#[command(name = "vfcert", version, about = "Exact toolkit for polynomial vector fields")]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Input files: one field, or two for `bracket`.
    pub files: Vec<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Degree bound D for Darboux searches (degree of the embedding for `homogenize`).
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
    /// Height bound K for resonance relations.
    #[arg(long = "max-height")]
    pub max_height: Option<u32>,
    /// Reduction-step budget for Gröbner computations.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Comma-separated rational coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Observable expression for `jet-ode`.
    #[arg(long, allow_hyphen_values = true)]
    pub observable: Option<String>,
    /// Jet order for `jet-ode`.
    #[arg(long)]
    pub order: Option<usize>,
    /// Chart index for `chart`.
    #[arg(long)]
    pub chart: Option<usize>,
    /// Coordinate hyperplane variable for `pole-order`.
    #[arg(long)]
    pub hyperplane: Option<String>,
    /// Ideal file for `invariant` and `prolong`.
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    /// One-form file for `codim1`.
    #[arg(long)]
    pub oneform: Option<PathBuf>,
    /// Worker-count hint.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(Outcome { code, json, text }) => {
            if cli.json {
                println!("{json}");
            } else {
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("vfcert: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Budget(_) => EXIT_INCONCLUSIVE,
            Failure::Negative(_) => EXIT_NEGATIVE,
        }
    }
}
