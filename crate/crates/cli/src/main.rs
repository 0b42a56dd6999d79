//! `torsion-lab`: command-line front end for discrete-torsion twisted orbifold
//! computations on global quotients.

mod commands;
mod corpus;
mod error;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::Outcome;
use crate::error::{CliError, EXIT_VALIDATION};

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "torsion-lab",
    version,
    about = "Discrete-torsion twisted orbifold cohomology and degree-zero invariants"
)]
struct Cli {
    /// Bound on enumerated tuple candidates.
    #[arg(long, global = true, env = "TORSION_LAB_CAP", default_value_t = torsion_lab_core::DEFAULT_ENUMERATION_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Verb {
    /// Builtin or file-defined finite groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// 2-cocycles, Schur multipliers and cyclic trivializations.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Inertia, multisectors and ages of a global quotient.
    #[command(subcommand)]
    Sectors(SectorsCmd),
    /// Twisted cohomology, class algebra and local-system checks.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// Surface-group homomorphisms, partition sums and gluing.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Run the invariant suite over a corpus and emit a pass/fail matrix.
    Corpus {
        /// Extra group (repeatable); disables the default corpus.
        #[arg(long)]
        group: Vec<String>,
        /// JSON array of group specifiers or group objects; disables the default corpus.
        #[arg(long)]
        corpus: Option<String>,
        /// Cocycle file checked as its own row (repeatable).
        #[arg(long = "cocycle-file")]
        cocycle_file: Vec<String>,
        /// Cohomology classes per group, in canonical order.
        #[arg(long, default_value_t = 4)]
        max_classes: usize,
        /// Random cohomologous cocycles per group.
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupCmd {
    /// Order, exponent and conjugacy classes.
    Info {
        #[arg(long)]
        group: String,
    },
    /// The multiplication table in the group file schema.
    Table {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CocycleCmd {
    /// Validate a cocycle and report its canonical class.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        cocycle: String,
    },
    /// Invariant factors of H^2(G, U(1)).
    Schur {
        #[arg(long)]
        group: String,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Canonical representatives of every cohomology class.
    Classes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// The standard torsion cocycle on Z/n x Z/n in the cocycle file schema.
    StandardTorsion {
        #[arg(long)]
        n: usize,
    },
    /// Flat trivializations on the cyclic subgroup of an element.
    Trivialize {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        modulus: Option<u64>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectorsCmd {
    Inertia {
        #[arg(long)]
        group: String,
        /// `point`, `linear:c1,c2,...` or a presentation file.
        #[arg(long, default_value = "point")]
        presentation: String,
    },
    Multi {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "point")]
        presentation: String,
        #[arg(long)]
        k: usize,
        /// Keep only tuples with product 1.
        #[arg(long)]
        moduli: bool,
    },
    Ages {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "point")]
        presentation: String,
    },
    /// Virtual dimension of degree-zero maps with the given sector classes.
    Vdim {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "point")]
        presentation: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value = "")]
        classes: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistCmd {
    Cohomology {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long, default_value = "point")]
        presentation: String,
    },
    Algebra {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
    },
    /// Check the four inner-local-system conditions.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long, default_value = "point")]
        presentation: String,
        /// Replace the multiplication by the constant 1.
        #[arg(long)]
        constant_theta: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlueKind {
    Pants,
    SelfGluing,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceCmd {
    /// Homomorphisms from the surface group; `*` leaves a boundary class free.
    Homs {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value = "")]
        classes: String,
    },
    Partition {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long)]
        genus: u32,
    },
    /// One invariant (`--classes`) or the whole table for `--k` boundary circles.
    Gw {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, conflicts_with = "k")]
        classes: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    Glue {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long, value_enum, default_value_t = GlueKind::Pants)]
        gluing: GlueKind,
        /// Genus of the surface being self-glued.
        #[arg(long, default_value_t = 0)]
        genus: u32,
    },
    /// Least common multiple of the orbifold multiplicities.
    Lcm {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        multiplicities: Vec<u64>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.verb {
        Verb::Group(cmd) => commands::group(cmd),
        Verb::Cocycle(cmd) => commands::cocycle(cmd),
        Verb::Sectors(cmd) => commands::sectors(cmd, cli.cap),
        Verb::Twist(cmd) => commands::twist(cmd),
        Verb::Surface(cmd) => commands::surface(cmd, cli.cap),
        Verb::Corpus { group, corpus, cocycle_file, max_classes, samples, seed } => {
            corpus::corpus(&corpus::CorpusOptions {
                groups: group,
                corpus_file: corpus.as_deref(),
                cocycle_files: cocycle_file,
                max_classes: *max_classes,
                samples: *samples,
                seed: *seed,
                cap: cli.cap,
            })
        }
    }
}

fn report(cli: &Cli, result: Value) -> Value {
    json!({
        "tool": "torsion-lab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(cli).expect("serializable"),
        "result": result,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let text = serde_json::to_string_pretty(&e.to_json()).expect("serializable");
    eprintln!("{text}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let text = match cli.format {
        Format::Json => output::render(&report(&cli, outcome.result), Format::Json),
        Format::Text => output::render(&outcome.result, Format::Text),
    };
    if let Err(e) = emit(&cli, &text) {
        return fail(&e);
    }
    match outcome.failure {
        Some(witness) => {
            let e = CliError::validation("validation failed", witness);
            eprintln!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
            ExitCode::from(EXIT_VALIDATION as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
