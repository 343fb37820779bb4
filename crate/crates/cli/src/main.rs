use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sortable_cli::corpus::save_flagged;
use sortable_cli::{corpus_run, fixtures, run_analysis, CorpusParams, Instance, Mode, Selector};

const PARSE: u8 = 2;
const PRECONDITION: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "sortable", version, about = "Sortable complexes, their toric rings and vertex decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an instance file, or a fixture given as `fixture:<name>`.
    Analyze {
        file: String,
        /// Comma-separated: recognize, sortable, cone, divisor, conjecture, groebner, vd, cm, all.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        select: Vec<String>,
    },
    /// Seeded batch of interval specs.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "partition")]
        mode: Mode,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..=9))]
        nmax: u64,
        /// Where flagged instances are written.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bundled fixtures.
    Fixtures,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { file, select } => match Selector::parse_list(&select.join(",")) {
            Ok(select) => analyze(&file, &select),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(PARSE)
            }
        },
        Command::Corpus { seed, count, mode, nmax, out } => corpus(CorpusParams::new(seed, count, mode, nmax as usize), out),
        Command::Fixtures => {
            for (name, text) in fixtures::ALL {
                println!("## {name}\n{text}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn analyze(file: &str, select: &[Selector]) -> ExitCode {
    let instance = match file.strip_prefix("fixture:") {
        Some(name) => match fixtures::fixture(name) {
            Some(i) => i,
            None => {
                eprintln!("error: no fixture named `{name}`");
                return ExitCode::from(PARSE);
            }
        },
        None => {
            let text = match std::fs::read(file).map(String::from_utf8) {
                Ok(Ok(t)) => t,
                Ok(Err(_)) => {
                    eprintln!("error: {file} is not UTF-8");
                    return ExitCode::from(PARSE);
                }
                Err(e) => {
                    eprintln!("error: {file}: {e}");
                    return ExitCode::from(PARSE);
                }
            };
            match Instance::parse(file, &text) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {file}:{e}");
                    return ExitCode::from(PARSE);
                }
            }
        }
    };
    // with every selector on, inapplicable sections are expected
    let explicit = select.len() < Selector::ALL.len();
    match run_analysis(&instance, select) {
        Ok(a) => {
            print!("{}", a.report);
            if explicit && !a.skipped.is_empty() {
                for (s, e) in &a.skipped {
                    eprintln!("error: {s}: {e}");
                }
                return ExitCode::from(PRECONDITION);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            ExitCode::from(INTERNAL)
        }
    }
}

fn corpus(params: CorpusParams, out: Option<PathBuf>) -> ExitCode {
    let run = match corpus_run(&params) {
        Ok(r) => r,
        Err(e) if e.is_internal() => {
            eprintln!("internal error: {e}");
            return ExitCode::from(INTERNAL);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(PRECONDITION);
        }
    };
    print!("{}", run.report);
    if let Some(dir) = out {
        match save_flagged(&run, &dir) {
            Ok(paths) => {
                for p in paths {
                    println!("saved = {}", p.display());
                }
            }
            Err(e) => {
                eprintln!("error: writing {}: {e}", dir.display());
                return ExitCode::from(PRECONDITION);
            }
        }
    }
    ExitCode::SUCCESS
}
