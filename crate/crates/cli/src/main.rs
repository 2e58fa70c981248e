use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use mentor_core::dialogue::{parse_script, UBER_SCRIPT};
use mentor_core::hypothesis::render_all;
use mentor_core::nlu::{evaluate, Corpus};
use mentor_core::{DialogueSession, Engine, EngineConfig};
use mentor_service::{ExportFormat, SessionStore};

#[derive(Parser)]
#[command(name = "mentor", version, about = "Interview a founder and turn the answers into testable hypotheses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct EngineArgs {
    /// Refinement generations allowed per original link
    #[arg(long, default_value_t = 5)]
    max_refinement_rounds: u32,
    /// Answers parsed below this confidence get a clarification
    #[arg(long, default_value_t = 0.5)]
    clarification_threshold: f64,
}

impl From<EngineArgs> for EngineConfig {
    fn from(a: EngineArgs) -> Self {
        EngineConfig {
            max_refinement_rounds: a.max_refinement_rounds,
            clarification_threshold: a.clarification_threshold,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Serve the HTTP API (and the UI bundle, if given)
    Serve {
        #[arg(long, env = "PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "DATA_DIR", default_value = "mentor-data")]
        data: PathBuf,
        /// Directory with the built UI, served at /
        #[arg(long, env = "UI_DIR")]
        ui: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Chat with the mentor in the terminal
    Repl {
        /// Write the final map as JSON to this file
        #[arg(long)]
        dump_map: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Cross-validate the parser on a labeled corpus
    Eval {
        /// JSON Lines corpus; the bundled seed corpus when omitted
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        folds: usize,
        /// Minimum intent accuracy for a zero exit code
        #[arg(long, default_value_t = 0.9)]
        threshold: f64,
        /// Print the metrics as JSON
        #[arg(long)]
        json: bool,
    },
    /// Replay a script of founder answers and print the map and hypotheses
    Demo {
        /// JSON Lines of {"text": ...}; the bundled Uber interview when omitted
        #[arg(long)]
        script: Option<PathBuf>,
        /// How to print the map: json, dot or markdown
        #[arg(long, default_value = "dot")]
        format: ExportFormat,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Print a stored session's map or hypothesis report
    Export {
        /// Session id, as returned when the session was created
        #[arg(long)]
        session: String,
        /// json, dot or markdown
        #[arg(long, default_value = "json")]
        format: ExportFormat,
        #[arg(long, env = "DATA_DIR", default_value = "mentor-data")]
        data: PathBuf,
    },
}

type Failure = Box<dyn std::error::Error>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn serve(port: u16, data: PathBuf, ui: Option<PathBuf>, config: EngineConfig) -> Result<ExitCode, Failure> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let store = Arc::new(SessionStore::new(data, Engine::seeded(), config));
        let (listener, addr) = mentor_service::bind(port).await?;
        println!("listening on http://{addr}");
        io::stdout().flush()?;
        mentor_service::serve(listener, mentor_service::app(store, ui)).await?;
        Ok(ExitCode::SUCCESS)
    })
}

fn repl(dump_map: Option<PathBuf>, config: EngineConfig) -> Result<ExitCode, Failure> {
    let engine = Engine::seeded();
    let mut session = engine.new_session(config);
    let mut out = io::stdout().lock();
    for line in session.opening_replies() {
        writeln!(out, "mentor> {line}")?;
    }
    for line in io::stdin().lock().lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let turn = engine.handle(&mut session, &line)?;
        for reply in &turn.replies {
            writeln!(out, "mentor> {reply}")?;
        }
        if turn.done {
            break;
        }
    }
    if let Some(path) = dump_map {
        std::fs::write(&path, session.map().to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn eval(corpus: Option<PathBuf>, folds: usize, threshold: f64, json: bool) -> Result<ExitCode, Failure> {
    let corpus = match corpus {
        Some(path) => Corpus::from_jsonl(&read(&path)?)?,
        None => Corpus::seed(),
    };
    let metrics = evaluate(&corpus, folds)?;
    if json {
        println!("{}", metrics.to_json());
    } else {
        println!("utterances: {}", metrics.total);
        println!("folds: {}", metrics.folds);
        println!("accuracy: {:.4}", metrics.accuracy);
        println!("macro-F1: {:.4}", metrics.macro_f1);
        println!(
            "clause exact-match: {:.4} ({}/{})",
            metrics.clause_exact_match, metrics.clause_exact, metrics.clause_total
        );
        println!();
        print!("{}", metrics.confusion_table());
    }
    if metrics.accuracy < threshold {
        eprintln!("accuracy {:.4} is below the threshold {threshold}", metrics.accuracy);
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn demo(script: Option<PathBuf>, format: ExportFormat, config: EngineConfig) -> Result<ExitCode, Failure> {
    let text = match script {
        Some(path) => read(&path)?,
        None => UBER_SCRIPT.to_owned(),
    };
    let engine = Engine::seeded();
    let mut session = DialogueSession::new("demo", config, 0);
    for line in session.opening_replies() {
        println!("mentor> {line}");
    }
    for (i, turn) in parse_script(&text)?.iter().enumerate() {
        println!("founder> {turn}");
        let result = engine.handle_at(&mut session, turn, i as u64 + 1)?;
        for reply in &result.replies {
            println!("mentor> {reply}");
        }
    }
    println!();
    println!("Map ({format}):");
    println!("{}", format.render(session.map()).trim_end());
    println!();
    println!("Hypotheses:");
    for h in render_all(session.map()) {
        println!("- [{}] {}", h.kind, h.statement);
    }
    Ok(ExitCode::SUCCESS)
}

fn export(session: &str, format: ExportFormat, data: PathBuf) -> Result<ExitCode, Failure> {
    let store = SessionStore::new(data, Engine::seeded(), EngineConfig::default());
    let session = store.load(session)?;
    print!("{}", format.render(session.map()));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Serve { port, data, ui, engine } => serve(port, data, ui, engine.into()),
        Command::Repl { dump_map, engine } => repl(dump_map, engine.into()),
        Command::Eval { corpus, folds, threshold, json } => eval(corpus, folds, threshold, json),
        Command::Demo { script, format, engine } => demo(script, format, engine.into()),
        Command::Export { session, format, data } => export(&session, format, data),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
