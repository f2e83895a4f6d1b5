use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coordlogic::implicature::Mode;
use coordlogic::law::ConnectiveMap;
use coordlogic::probability::{self, SearchResult};
use coordlogic::report::{self, resolve, JudgeTable, LawRow, PairRow, ReportRecord};
use coordlogic::{judge, project, Corpus, Formula, ImplicatureReport, Judgment};

mod render;

#[derive(Parser, Debug)]
#[command(
    name = "coordlogic",
    version,
    about = "Boolean, prospect and implicature semantics for coordinated sentences"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Also write the JSON output to FILE.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Connectives {
    Classical,
    Xor,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Gazdar,
    Soames,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Frege,
    FregeWithoutUncertainty,
    Corollary,
    Explosion,
    Ordering,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the distributive, absorption and idempotent laws.
    Laws {
        #[arg(long, value_enum, default_value_t = Connectives::Classical)]
        connectives: Connectives,
    },
    /// Option set of a corpus label or formula.
    Denote { item: String },
    /// Judgments for each item, equivalences for each pair.
    Judge {
        #[arg(required = true)]
        items: Vec<String>,
    },
    /// Boolean and option-level equivalence of two items.
    Equiv { left: String, right: String },
    /// Project assertions and implicatures.
    Implicatures {
        item: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Gazdar)]
        mode: ModeArg,
        /// Coefficient ids of `or` nodes the speaker is opinionated about
        /// (soames mode).
        #[arg(long, value_delimiter = ',')]
        opinionated: Vec<usize>,
    },
    /// Grid searches over exact rational distributions.
    Prob {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, default_value_t = 6)]
        denominator: u32,
    },
    /// Evaluate every claim and report match/mismatch.
    Reproduce,
}

#[derive(Serialize)]
struct DenoteOutput {
    item: String,
    formula: Formula,
    judgment: Judgment,
}

#[derive(Serialize)]
struct ExplosionOutput {
    denominator: u32,
    checked: usize,
    holds: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ProbOutput {
    Search(SearchResult),
    Explosion(ExplosionOutput),
}

#[derive(Serialize)]
struct ReproduceOutput {
    records: Vec<ReportRecord>,
    matched: usize,
    mismatched: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Output {
    Laws(Vec<LawRow>),
    Denote(DenoteOutput),
    Judge(JudgeTable),
    Equiv(PairRow),
    Implicatures(ImplicatureReport),
    Prob(ProbOutput),
    Reproduce(ReproduceOutput),
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run_prob(check: Check, denominator: u32) -> Result<ProbOutput, Failure> {
    Ok(match check {
        Check::Frege => ProbOutput::Search(probability::check_frege_theorem(denominator)?),
        Check::FregeWithoutUncertainty => {
            ProbOutput::Search(probability::check_frege_without_uncertainty(denominator)?)
        }
        Check::Corollary => {
            ProbOutput::Search(probability::check_disjunction_corollary(denominator)?)
        }
        Check::Ordering => ProbOutput::Search(probability::check_relevance_ordering(denominator)?),
        Check::Explosion => {
            let targets: Vec<Formula> = [
                "B",
                "A",
                "A or B",
                "A and not B",
                "not (A and B)",
                "A xor B",
            ]
            .iter()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()?;
            let mut checked = 0;
            let mut holds = true;
            for d in probability::grid(&["A", "B"], denominator)? {
                for b in &targets {
                    checked += 1;
                    holds &= probability::check_explosion_irrelevance(&d, b)?;
                }
            }
            ProbOutput::Explosion(ExplosionOutput {
                denominator,
                checked,
                holds,
            })
        }
    })
}

fn run(command: Command) -> Result<Output, Failure> {
    let corpus = Corpus::standard();
    Ok(match command {
        Command::Laws { connectives } => {
            let map = match connectives {
                Connectives::Classical => ConnectiveMap::CLASSICAL,
                Connectives::Xor => ConnectiveMap::XOR_JOIN,
            };
            Output::Laws(report::law_table(map))
        }
        Command::Denote { item } => {
            let (item, formula) = resolve(&item, &corpus)?;
            Output::Denote(DenoteOutput {
                judgment: judge(&formula)?,
                item,
                formula,
            })
        }
        Command::Judge { items } => Output::Judge(report::judge_table(&items, &corpus)?),
        Command::Equiv { left, right } => {
            let mut table = report::judge_table(&[left, right], &corpus)?;
            Output::Equiv(table.pairs.remove(0))
        }
        Command::Implicatures {
            item,
            mode,
            opinionated,
        } => {
            let (_, formula) = resolve(&item, &corpus)?;
            let mode = match mode {
                ModeArg::Gazdar => Mode::GazdarDefault,
                ModeArg::Soames => Mode::SoamesConditional {
                    opinionated: opinionated.into_iter().collect::<BTreeSet<_>>(),
                },
            };
            Output::Implicatures(project(&formula, &mode)?)
        }
        Command::Prob { check, denominator } => Output::Prob(run_prob(check, denominator)?),
        Command::Reproduce => {
            let records = report::reproduce(&corpus);
            let matched = records.iter().filter(|r| r.matched()).count();
            Output::Reproduce(ReproduceOutput {
                mismatched: records.len() - matched,
                matched,
                records,
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(cli.command) {
        Ok(output) => output,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let json = serde_json::to_string_pretty(&output).expect("output serializes");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let rendered = match cli.format {
        Format::Json => format!("{json}\n"),
        Format::Text => render::text(&output),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = io::stdout().lock().write_all(rendered.as_bytes());
    match &output {
        Output::Reproduce(r) if r.mismatched > 0 => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
