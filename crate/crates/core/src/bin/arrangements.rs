use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use arrangements::arrangement::{localization, restriction};
use arrangements::report::{self, Options, Part};
use arrangements::verify::{verify, VerifyOptions};
use arrangements::{catalog, Arrangement, Error, HypSet};

#[derive(Parser)]
#[command(
    name = "arrangements",
    version,
    about = "Exact analysis of central hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, formality, lc-basis, factorization and chamber report.
    Analyze {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        json: bool,
        /// Largest k reported in the k-formality profile.
        #[arg(long)]
        max_k: Option<usize>,
        /// Sections to leave out: lc, factor, chambers.
        #[arg(long, value_delimiter = ',')]
        skip: Vec<Part>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = report::DEFAULT_FLAT_CAP)]
        flat_cap: usize,
        /// Largest rank for which chambers are enumerated.
        #[arg(long, default_value_t = report::DEFAULT_CHAMBER_CAP)]
        chamber_cap: usize,
        /// Include per-section wall-clock times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Print the restriction to the intersection of the given hyperplanes.
    Restrict {
        #[command(flatten)]
        src: Source,
        /// 1-based hyperplane indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        flat: Vec<usize>,
    },
    /// Print the localization at the intersection of the given hyperplanes.
    Localize {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_delimiter = ',', required = true)]
        flat: Vec<usize>,
    },
    /// Run the theorem checks; exits 3 if any fails.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = report::DEFAULT_FLAT_CAP)]
        flat_cap: usize,
        #[arg(long, default_value_t = report::DEFAULT_CHAMBER_CAP)]
        chamber_cap: usize,
    },
}

#[derive(Args)]
struct Source {
    /// A file path or `builtin:<name>[:<n>]`.
    src: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(src: &str) -> Result<Arrangement, Failure> {
    match src.strip_prefix("builtin:") {
        Some(spec) => Ok(catalog::parse_spec(spec)?),
        None => {
            let text = std::fs::read_to_string(src)
                .map_err(|e| Failure::Usage(format!("cannot read {src}: {e}")))?;
            Ok(Arrangement::parse(&text)?)
        }
    }
}

fn flat_set(a: &Arrangement, flat: &[usize]) -> Result<HypSet, Failure> {
    if let Some(&bad) = flat.iter().find(|&&i| i == 0 || i > a.len()) {
        return Err(Failure::Usage(format!(
            "hyperplane {bad} out of range 1..={}",
            a.len()
        )));
    }
    Ok(HypSet::from_one_based(flat))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            src,
            json,
            max_k,
            skip,
            out,
            flat_cap,
            chamber_cap,
            timings,
        } => {
            let a = load(&src.src)?;
            let opts = Options {
                max_k,
                skip,
                flat_cap,
                chamber_cap,
                timings,
            };
            let r = report::analyze(&src.src, &a, &opts)?;
            let text = if json {
                r.to_json() + "\n"
            } else {
                r.to_text()
            };
            emit(&text, out.as_ref())
        }
        Command::Restrict { src, flat } => {
            let a = load(&src.src)?;
            let res = restriction(&a, &flat_set(&a, &flat)?)?;
            emit(&res.restricted.to_string(), None)
        }
        Command::Localize { src, flat } => {
            let a = load(&src.src)?;
            let loc = localization(&a, &flat_set(&a, &flat)?)?;
            emit(&loc.arrangement.to_string(), None)
        }
        Command::Verify {
            src,
            flat_cap,
            chamber_cap,
        } => {
            let a = load(&src.src)?;
            let rep = verify(
                &a,
                &VerifyOptions {
                    flat_cap,
                    chamber_cap,
                },
            )?;
            print!("{rep}");
            if rep.passed() {
                Ok(())
            } else {
                Err(Failure::Lib(Error::Invariant(
                    "a theorem check failed".into(),
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
