use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rfsa::bench::{self, CSV_HEADER};
use rfsa::corpus::{self, CorpusParams};
use rfsa::learners::Algorithm;
use rfsa::residuals::canonical_rfsa;
use rfsa::teacher::TeacherSession;
use rfsa::Automaton;

#[derive(Parser)]
#[command(name = "rfsa", version, about = "Learn residual finite-state automata from observation tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical RFSA of the language of an automaton file.
    Canonical {
        input: PathBuf,
    },
    /// Learn a target automaton with one algorithm.
    Learn {
        #[command(flatten)]
        run: RunArgs,
        /// Where to write the hypothesis (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write a one-row CSV of query counts.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Write a seeded corpus of random minimal DFAs.
    GenCorpus {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_states: usize,
        /// Alphabet size (symbols a, b, c, ...).
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run algorithms over every `.aut` file of a corpus directory.
    Bench {
        corpus: PathBuf,
        /// Algorithms to run (repeatable or comma-separated; all by default).
        #[arg(long, value_delimiter = ',')]
        alg: Vec<Algorithm>,
        /// CSV output (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parallel runs (0 = one per CPU).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Show the final observation table of a learning run.
    Table {
        #[command(flatten)]
        run: RunArgs,
        /// Print the whole table instead of its dimensions.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// lstar, nlstar, rev2step or prime2step.
    #[arg(long)]
    alg: Algorithm,
    #[arg(long)]
    target: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: rfsa::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Algorithm(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Algorithm(_) => 4,
        }
    }
}

impl From<rfsa::Error> for CliError {
    fn from(e: rfsa::Error) -> Self {
        CliError::Algorithm(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_automaton(path: &Path) -> Result<Automaton, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Automaton::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn language_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rfsa: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Canonical { input } => {
            let a = read_automaton(&input)?;
            print!("{}", canonical_rfsa(&a.minimal_dfa())?);
            Ok(0)
        }
        Command::Learn { run, out, stats } => {
            let target = read_automaton(&run.target)?;
            let (record, result) = bench::run_learner(&language_name(&run.target), &target, run.alg)?;
            if let Some(p) = &stats {
                let csv = format!("{CSV_HEADER}\n{}\n", record.csv_row());
                fs::write(p, csv).map_err(io_err(p))?;
            }
            let Some(result) = result else {
                return Err(CliError::Algorithm(record.diagnostic.unwrap_or_default()));
            };
            write_or_print(out.as_deref(), &result.hypothesis.to_string())?;
            if record.correct {
                Ok(0)
            } else {
                eprintln!("rfsa: {}: hypothesis differs from the target", run.alg);
                Ok(4)
            }
        }
        Command::GenCorpus { n, max_states, alphabet, seed, out } => {
            if n == 0 || max_states == 0 || alphabet == 0 {
                return Err(CliError::Usage("--n, --max-states and --alphabet must be positive".into()));
            }
            let langs = corpus::generate(&CorpusParams { n, max_states, alphabet_size: alphabet, seed });
            corpus::write_corpus(&out, &langs).map_err(io_err(&out))?;
            Ok(0)
        }
        Command::Bench { corpus: dir, alg, out, jobs } => {
            let algs = if alg.is_empty() { Algorithm::ALL.to_vec() } else { alg };
            let files = corpus::corpus_files(&dir).map_err(io_err(&dir))?;
            let langs = files
                .iter()
                .map(|p| Ok((language_name(p), read_automaton(p)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let records = bench::run_bench(&langs, &algs, jobs)?;
            write_or_print(out.as_deref(), &bench::to_csv(&records))?;
            let failed: Vec<_> = records.iter().filter(|r| !r.correct).collect();
            for r in &failed {
                eprintln!(
                    "rfsa: {} {}: {}",
                    r.language,
                    r.alg,
                    r.diagnostic.as_deref().unwrap_or("incorrect")
                );
            }
            Ok(if failed.is_empty() { 0 } else { 4 })
        }
        Command::Table { run, dump } => {
            let target = read_automaton(&run.target)?;
            let mut session = TeacherSession::new(target);
            let result = run.alg.run(&mut session)?;
            let t = result.final_table.table();
            if dump {
                print!("{}", t.dump());
            } else {
                println!(
                    "red: {}\nblue: {}\ncontexts: {}",
                    t.red().len(),
                    t.blue().len(),
                    t.contexts().len()
                );
            }
            Ok(0)
        }
    }
}
