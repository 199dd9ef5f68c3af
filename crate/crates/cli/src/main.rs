mod commands;
mod verify;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nid::document::{Document, TheoryTextDoc};
use nid::{Error, Limits, DEFAULT_MAX_UNIVERSE};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Enumerate closed sets of finite rule systems and of the structures encoded
/// by them. Input is a JSON document, or a theory in the plain-text sequent
/// grammar, read from a file or standard input; output is a JSON object on
/// standard output.
///
/// Exit status: 0 on success, 1 on a domain error (search cap exceeded,
/// unmet precondition, failed verification), 2 on a usage or input error.
///
/// The environment variable NID_MAX_UNIVERSE sets the default of
/// --max-universe.
#[derive(Parser, Debug)]
#[command(name = "nid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every closed set of the document's rule system
    Closed(Common),
    /// Inclusion-minimal closed sets
    Minimal(Common),
    /// Least generating family of closed sets
    Generators(Common),
    /// A family every closed set lies below
    Full {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FullMode::Full)]
        mode: FullMode,
    },
    /// Least closed superset of the seed
    Lfp {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = LfpMode::Least)]
        mode: LfpMode,
    },
    /// Shape of the rules: elementary, deterministic, premise and conclusion sizes
    Classify(Common),
    /// Prime ideals of a finite commutative ring
    PrimeIdeals(Common),
    /// Bisimulations between two graphs
    Bisim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = BisimMode::Greatest)]
        mode: BisimMode,
    },
    /// Total relations every total relation contains one of
    Fullness(Common),
    /// Models of a set-generated clause system and their generators
    Sga(Common),
    /// Models of a propositional game theory
    Game {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = GameMode::Models)]
        mode: GameMode,
    },
    /// Linear extensions of a finite poset
    Linext(Common),
    /// Points of a finite formal space
    Points(Common),
    /// Whether all points of a formal space are minimal
    Flat(Common),
    /// Continuous morphisms between two formal spaces
    Morphisms {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = MorphismMode::Source)]
        mode: MorphismMode,
    },
    /// Unfolded trees and well-founded states of a coalgebra
    Mtype(Common),
    /// Cross-check every engine result for the document against its oracle
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true)]
        perturb: bool,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Input file; standard input when absent or `-`
    input: Option<PathBuf>,
    /// Largest universe searched exhaustively
    #[arg(long, env = "NID_MAX_UNIVERSE", default_value_t = DEFAULT_MAX_UNIVERSE)]
    max_universe: usize,
    /// Depth of unfolded trees
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Indent the JSON output
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FullMode {
    /// Star-extension family
    Full,
    /// Members of the star-extension generators containing the fresh element
    Refining,
    /// Inclusion-maximal closed sets
    Maximal,
    /// Largest closed set of an elementary system
    Greatest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LfpMode {
    /// Least closed superset; deterministic rules only
    Least,
    /// Inclusion-minimal closed supersets
    Supersets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BisimMode {
    Greatest,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GameMode {
    Models,
    Minimal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MorphismMode {
    /// Cover closure stated over the source space
    Source,
    /// Cover closure stated over the target space
    Target,
}

/// Why a run failed, and with which exit status.
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. }
            | Error::NotDeterministic
            | Error::NotElementary
            | Error::NotClosed(_)
            | Error::InvalidPathSet(_)
            | Error::Signature(_)
            | Error::NameClash(_)
            | Error::UnboundVariable(_) => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

pub struct Input {
    pub doc: Document,
    pub limits: Limits,
    pub depth: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((report, ok)) => {
            let _ = io::stdout().write_all(report.as_bytes());
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Closed(c)
        | Command::Minimal(c)
        | Command::Generators(c)
        | Command::Classify(c)
        | Command::PrimeIdeals(c)
        | Command::Fullness(c)
        | Command::Sga(c)
        | Command::Linext(c)
        | Command::Points(c)
        | Command::Flat(c)
        | Command::Mtype(c) => c,
        Command::Full { common, .. }
        | Command::Lfp { common, .. }
        | Command::Bisim { common, .. }
        | Command::Game { common, .. }
        | Command::Morphisms { common, .. }
        | Command::Verify { common, .. } => common,
    }
}

fn run(cli: Cli) -> Outcome<(String, bool)> {
    let c = common(&cli.command);
    let text = read_input(c.input.as_ref())?;
    let doc = if !text.trim_start().starts_with('{') {
        Document::TheoryText(TheoryTextDoc { text: text.clone() })
    } else {
        Document::parse(&text)?
    };
    let input = Input {
        doc,
        limits: Limits::with_max_universe(c.max_universe),
        depth: c.depth,
    };
    let mut ok = true;
    let body = match &cli.command {
        Command::Closed(_) => commands::closed(&input)?,
        Command::Minimal(_) => commands::minimal(&input)?,
        Command::Generators(_) => commands::generators(&input)?,
        Command::Full { mode, .. } => commands::full(&input, *mode)?,
        Command::Lfp { mode, .. } => commands::lfp(&input, *mode)?,
        Command::Classify(_) => commands::classify(&input)?,
        Command::PrimeIdeals(_) => commands::prime_ideals(&input)?,
        Command::Bisim { mode, .. } => commands::bisim(&input, *mode)?,
        Command::Fullness(_) => commands::fullness(&input)?,
        Command::Sga(_) => commands::sga(&input)?,
        Command::Game { mode, .. } => commands::game(&input, *mode)?,
        Command::Linext(_) => commands::linext(&input)?,
        Command::Points(_) => commands::points(&input)?,
        Command::Flat(_) => commands::flat(&input)?,
        Command::Morphisms { mode, .. } => commands::morphisms(&input, *mode)?,
        Command::Mtype(_) => commands::mtype(&input)?,
        Command::Verify { perturb, .. } => {
            let (body, passed) = verify::verify(&input, *perturb)?;
            ok = passed;
            body
        }
    };
    let mut out = Map::new();
    out.insert("kind".into(), Value::from(input.doc.kind()));
    out.insert("input-digest".into(), Value::from(hex::encode(Sha256::digest(text.as_bytes()))));
    out.extend(body);
    let value = Value::Object(out);
    let mut rendered = if c.pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("JSON values always serialize");
    rendered.push('\n');
    Ok((rendered, ok))
}

fn read_input(path: Option<&PathBuf>) -> Outcome<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}
