use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use demorgan_cli::commands::{self, CorpusCheck};
use demorgan_cli::report::Report;
use demorgan_cli::{exit_code, EXIT_INPUT};
use demorgan_core::error::Error;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "demorgan", version, about = "De Morgan and Boolean checks for finite sites")]
struct Cli {
    /// Write the full JSON report, timings included, to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Accepted and ignored: every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category and report its shape.
    CheckCategory { file: PathBuf },
    /// Validate a site and print its minimal covers.
    CheckSite { file: PathBuf },
    /// Stone, Boolean, Lee and frame predicates of a lattice.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        lee: Vec<usize>,
    },
    /// Fibres of the subobject classifier.
    Omega {
        file: PathBuf,
        #[arg(long)]
        lee: Vec<usize>,
    },
    /// Whether 1⊔1 → Ω¬¬ is an isomorphism.
    Demorgan { file: PathBuf },
    /// Whether 1⊔1 → Ω is an isomorphism.
    Boolean { file: PathBuf },
    /// The right Ore condition.
    Ore { file: PathBuf },
    /// The amalgamation property.
    Amalg { file: PathBuf },
    /// Build the Gleason cover and run its checks.
    Gleason {
        file: PathBuf,
        #[arg(long)]
        atoms: bool,
    },
    /// Localic predicates and the direct Gleason cover of a frame or space.
    Locale { file: PathBuf },
    /// Compare the fibred and pointwise ideal completions of an internal locale.
    LocIdeal {
        file: PathBuf,
        /// For a site document: omega or notnot.
        #[arg(long)]
        of: Option<String>,
    },
    /// Bounded amalgamation in the Ind-completion.
    IndAmalg {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        span: Vec<String>,
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// Run a check over every category within the bounds.
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long)]
        max_morphisms: usize,
        #[arg(long, value_enum, default_value_t = Check::Count)]
        check: Check,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Count,
    OreVsDemorgan,
    Amalgamation,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn run(cmd: &Command) -> (&'static str, Option<String>, Result<Value, Error>) {
    let with = |name, file: &PathBuf, f: &dyn Fn(&str) -> Result<Value, Error>| match read(file) {
        Ok(text) => {
            let r = f(&text);
            (name, Some(text), r)
        }
        Err(e) => (name, None, Err(e)),
    };
    match cmd {
        Command::CheckCategory { file } => with("check-category", file, &commands::check_category),
        Command::CheckSite { file } => with("check-site", file, &commands::check_site),
        Command::Lattice { file, lee } => with("lattice", file, &|t| commands::lattice(t, lee)),
        Command::Omega { file, lee } => with("omega", file, &|t| commands::omega(t, lee)),
        Command::Demorgan { file } => with("demorgan", file, &commands::de_morgan),
        Command::Boolean { file } => with("boolean", file, &commands::boolean),
        Command::Ore { file } => with("ore", file, &commands::ore),
        Command::Amalg { file } => with("amalg", file, &commands::amalg),
        Command::Gleason { file, atoms } => with("gleason", file, &|t| commands::gleason(t, *atoms)),
        Command::Locale { file } => with("locale", file, &commands::locale),
        Command::LocIdeal { file, of } => with("loc-ideal", file, &|t| commands::loc_ideal(t, of.as_deref())),
        Command::IndAmalg { file, span, bound } => {
            with("ind-amalg", file, &|t| commands::ind_amalg(t, &span[0], &span[1], *bound))
        }
        Command::Corpus {
            max_objects,
            max_morphisms,
            check,
            bound,
        } => {
            let check = match check {
                Check::Count => CorpusCheck::Count,
                Check::OreVsDemorgan => CorpusCheck::OreVsDeMorgan,
                Check::Amalgamation => CorpusCheck::Amalgamation,
            };
            ("corpus", None, commands::corpus(*max_objects, *max_morphisms, check, *bound))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, input, result) = run(&cli.command);
    let code = match result {
        Ok(value) => {
            let rep = Report::new(name, input.as_deref().map(str::as_bytes), value, start.elapsed().as_secs_f64() * 1e3);
            println!("{}", rep.body_json());
            eprintln!("{name}: {:.1} ms", rep.timings.total_ms);
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, rep.to_json()) {
                    eprintln!("error: cannot write report to {}: {e}", path.display());
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
