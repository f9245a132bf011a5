use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosimplex_core::corpus::multi_corpus;
use cosimplex_core::cosimplicial::{zero_skeleton_degreewise, MultiCosimplicial};
use cosimplex_core::report::{RunConfig, VerificationReport};
use cosimplex_core::serial::{multi_from_json, multi_to_json, sset_from_json, Document, NamedMultiJson, Payload};
use cosimplex_core::suites::{run_suite, SUITES};

#[derive(Parser)]
#[command(name = "cosimplex", version, about = "Exact checks on truncated multicosimplicial simplicial sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite, or `all`.
    Run {
        suite: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Shortcut for `run counterexample`.
    Counterexample {
        #[command(flatten)]
        opts: Opts,
    },
    /// Write an object or the corpus as JSON.
    Export {
        #[arg(value_enum)]
        what: Export,
        #[command(flatten)]
        opts: Opts,
    },
    /// Parse and check a JSON document.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Standard,
    ZeroSkeleton,
    Corpus,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Opts {
    #[arg(long, default_value_t = 2)]
    arity: usize,
    #[arg(long, default_value_t = 2)]
    trunc: usize,
    #[arg(long, default_value_t = 3)]
    cap: usize,
    #[arg(long = "check-dim", default_value_t = 2)]
    check_dim: usize,
    #[arg(long, default_value_t = cosimplex_core::corpus::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Include per-instance timings in JSON output.
    #[arg(long)]
    timing: bool,
}

impl Opts {
    fn config(&self) -> RunConfig {
        RunConfig {
            arity: self.arity,
            trunc: self.trunc,
            cap: self.cap,
            check_dim: self.check_dim,
            seed: self.seed,
            corpus: self.corpus.as_ref().map(|p| p.display().to_string()),
            cache: std::env::var("COSIMPLEX_CACHE").ok().filter(|s| !s.is_empty()),
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(suite: &str, opts: &Opts) -> Result<ExitCode, String> {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(format!("unknown suite `{suite}`; expected one of: {}, all", SUITES.join(", ")));
    }
    let reports: Vec<VerificationReport> = run_suite(suite, &opts.config()).map_err(|e| e.to_string())?;
    let text: String = reports
        .iter()
        .map(|r| if opts.format == Format::Json { r.to_json_lines(opts.timing) } else { r.to_table() })
        .collect();
    emit(&text, &opts.out)?;
    Ok(if reports.iter().all(VerificationReport::passed) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn export(what: Export, opts: &Opts) -> Result<ExitCode, String> {
    let c = opts.config();
    let err = |e: cosimplex_core::Error| e.to_string();
    let payload = match what {
        Export::Standard => Payload::MultiCosimplicial(multi_to_json(&MultiCosimplicial::standard(c.arity, c.trunc, c.cap).map_err(err)?)),
        Export::ZeroSkeleton => {
            let x = MultiCosimplicial::standard(c.arity, c.trunc, c.cap).map_err(err)?;
            Payload::MultiCosimplicial(multi_to_json(&zero_skeleton_degreewise(&x).map_err(err)?))
        }
        Export::Corpus => Payload::Corpus {
            objects: multi_corpus(c.arity, c.trunc, c.cap, c.seed)
                .map_err(err)?
                .iter()
                .map(|o| NamedMultiJson { name: o.name.clone(), object: multi_to_json(&o.value) })
                .collect(),
        },
    };
    emit(&Document::new(payload).to_json(), &opts.out)?;
    Ok(ExitCode::SUCCESS)
}

fn validate(file: &PathBuf) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let doc = Document::parse(&text).map_err(|e| e.to_string())?;
    let summary = match &doc.payload {
        Payload::SimplicialSet(s) => {
            let x = sset_from_json(s).map_err(|e| e.to_string())?;
            format!("simplicial set with simplex counts {:?}", x.counts())
        }
        Payload::MultiCosimplicial(j) => {
            let x = multi_from_json(j).map_err(|e| e.to_string())?;
            format!("multicosimplicial object, arity {}, truncation {}, cap {}", x.arity(), x.trunc(), x.cap())
        }
        Payload::Corpus { objects } => {
            for o in objects {
                multi_from_json(&o.object).map_err(|e| format!("{}: {e}", o.name))?;
            }
            format!("corpus of {} objects", objects.len())
        }
    };
    println!("ok: {summary}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { suite, opts } => run(suite, opts),
        Command::Counterexample { opts } => run("counterexample", opts),
        Command::Export { what, opts } => export(*what, opts),
        Command::Validate { file } => validate(file),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
