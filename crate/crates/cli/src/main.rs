//! `qtree`: command-line front end for the quadtree crate.
//!
//! Exit status is 0 on success, 2 for invalid input, 3 when a computation
//! fails; failures also print one JSON object on stderr.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quadtree::oracle::DEFAULT_CHAIN_DEPTH;
use quadtree::position::DEFAULT_DEPTH_CAP;

#[derive(Parser, Debug)]
#[command(
    name = "qtree",
    version,
    about = "Exact computations in the tree of quadratic transforms of k[x,y] at the origin"
)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero, pole, unit or undetermined: the position of f (or f/g) at a point.
    Position {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        /// Optional denominator.
        #[arg(long = "g", value_name = "EXPR")]
        g: Option<String>,
        #[arg(long, value_name = "PATH")]
        point: String,
    },
    /// Distinguished zeros and poles of f (or f/g).
    Resolve {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        #[arg(long = "g", value_name = "EXPR")]
        g: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        max_depth: usize,
    },
    /// Points proximate to a point, or whether one point is proximate to another.
    Prox {
        #[arg(long, value_name = "PATH")]
        point: String,
        /// Decide whether --point is proximate to this point instead of listing.
        #[arg(long, value_name = "PATH")]
        anchor: Option<String>,
        /// Level bound for the listing (default: level of the point + 3).
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long, value_name = "CSV", default_value = "-1,0,1")]
        steps: String,
    },
    /// The points a point is proximate to.
    Ancestors {
        #[arg(long, value_name = "PATH")]
        point: String,
    },
    /// Strict transforms of a curve along the path to a point.
    Strict {
        #[arg(long = "f", value_name = "POLY")]
        f: String,
        #[arg(long, value_name = "PATH")]
        point: String,
    },
    /// Patch limit points of a family set.
    Limits {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
    },
    /// Zariski closure of a family set, listed up to a level.
    Closure {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, value_name = "CSV", default_value = "-1,0,1")]
        steps: String,
    },
    /// Whether a family set is Noetherian, with its covering valuations.
    Noetherian {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
    },
    /// Irreducible components of the Zariski closure of a family set.
    Components {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
    },
    /// Whether an element lies in a point's ring or in every ring of a family set.
    Member {
        #[arg(long, value_name = "EXPR")]
        elt: String,
        #[arg(
            long,
            value_name = "PATH",
            conflicts_with = "family",
            required_unless_present = "family"
        )]
        point: Option<String>,
        #[arg(long, value_name = "FILE")]
        family: Option<PathBuf>,
        /// Levels walked for sibling families.
        #[arg(long, default_value_t = DEFAULT_CHAIN_DEPTH)]
        max_depth: usize,
    },
    /// A curve whose valuation contains one member of a family set and no other.
    Irredundant {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
        #[arg(long, value_name = "PATH")]
        point: String,
        /// Candidate curve; repeat to try several in order.
        #[arg(long = "f", value_name = "POLY", required = true)]
        candidates: Vec<String>,
        /// Random competitors at which the certificate is re-checked.
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Whether a monomial lies in the semigroup generated by monomials.
    Semigroup {
        #[arg(long, value_name = "MONOMIAL")]
        elt: String,
        /// Generator; repeat for each.
        #[arg(long = "gen", value_name = "MONOMIAL", required = true)]
        generators: Vec<String>,
    },
    /// Run a worked construction (or `all`); lists the names when none is given.
    Demo { name: Option<String> },
    /// Graphviz text for the tree fragment spanned by a family set.
    Dot {
        #[arg(long, value_name = "FILE")]
        family: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, value_name = "CSV", default_value = "-1,0,1")]
        steps: String,
        /// Write here instead of stdout.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = quadtree::dot::DEFAULT_NODE_CAP)]
        node_cap: usize,
    },
}

/// Why a command did not produce a result.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(quadtree::Error),
    /// A computation that ran but whose self-check failed.
    Check(String),
}

impl From<quadtree::Error> for Failure {
    fn from(e: quadtree::Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) | Failure::Check(_) => 3,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Usage(m) => json!({"error": "usage", "message": m}),
            Failure::Compute(e) => json!({"error": e.kind(), "message": e.to_string()}),
            Failure::Check(m) => json!({"error": "check-failed", "message": m}),
        }
    }
}

/// A result in both renderings.
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            if !usage {
                return ExitCode::SUCCESS;
            }
            let fail = Failure::Usage(e.kind().to_string());
            eprintln!("{}", fail.to_json());
            return ExitCode::from(fail.code());
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json values serialize")
                );
            } else if !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
            ExitCode::SUCCESS
        }
        Err(fail) => {
            if !cli.json {
                match &fail {
                    Failure::Usage(m) | Failure::Check(m) => eprintln!("error: {m}"),
                    Failure::Compute(e) => eprintln!("error: {e}"),
                }
            }
            eprintln!("{}", fail.to_json());
            ExitCode::from(fail.code())
        }
    }
}
