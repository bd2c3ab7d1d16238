//! Command-line front end. [`run`] takes the argument list and output sinks so
//! it can be driven from tests; `main` only forwards the process streams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 syntax or input error,
//! 3 non-associative table, 4 coloring failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::coloring::Coloring;
use crate::presentation::{Family, Presentation, PresentationError};
use crate::rewrite::{check_local_confluence, embedding_failures, Rewriter};
use crate::semigroup::CayleyTable;
use crate::witness::{collapse, verify_trace, WitnessTrace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_ASSOC: i32 = 3;
pub const EXIT_COLORING: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "cfmonoid",
    about = "Congruence-free monoid presentations for finite semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TableSource {
    /// Cayley table file
    #[arg(long)]
    cayley: Option<PathBuf>,
    /// Builtin semigroup name
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ColoringSource {
    /// Coloring file in slice format
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Check the constructed coloring of this order
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the rewriting system and write it as JSON
    Build {
        #[command(flatten)]
        source: TableSource,
        /// Use this coloring instead of the constructed one
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the normal form of a word
    Nf {
        #[arg(long)]
        pres: PathBuf,
        word: String,
    },
    /// Check that every critical pair is joinable
    CheckComplete {
        #[arg(long)]
        pres: PathBuf,
        /// List every critical pair, not only failures
        #[arg(long)]
        verbose: bool,
    },
    /// Check the six coloring conditions
    CheckF {
        #[command(flatten)]
        source: ColoringSource,
    },
    /// Check that the semigroup embeds via s_i
    CheckEmbed {
        #[arg(long)]
        pres: PathBuf,
    },
    /// Build a collapse trace for two distinct normal forms
    Collapse {
        #[arg(long)]
        pres: PathBuf,
        u: String,
        v: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a collapse trace
    VerifyTrace {
        #[arg(long)]
        pres: PathBuf,
        trace: PathBuf,
    },
    /// List nonzero normal forms up to a length
    Enumerate {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
}

struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn syntax(msg: impl ToString) -> Failure {
    Failure(EXIT_SYNTAX, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| syntax(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| syntax(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    Presentation::from_json(&read(path)?).map_err(|e| syntax(format!("{}: {e}", path.display())))
}

/// Runs one CLI invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SYNTAX } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Build {
            source,
            coloring,
            out: path,
        } => build(source, coloring, &path, out),
        Command::Nf { pres, word } => {
            let p = load_presentation(&pres)?;
            let w = p.parse_word(&word).map_err(syntax)?;
            emit(out, &Rewriter::new(&p).normal_form(&w).to_string());
            Ok(EXIT_OK)
        }
        Command::CheckComplete { pres, verbose } => check_complete(&pres, verbose, out),
        Command::CheckF { source } => {
            let c = match (source.coloring, source.n) {
                (Some(path), _) => Coloring::parse(&read(&path)?).map_err(syntax)?,
                (None, Some(0)) => return Err(syntax("n must be positive")),
                (None, Some(n)) => Coloring::build(n),
                (None, None) => unreachable!("clap requires a source"),
            };
            let report = c.check_conditions();
            emit(out, &format!("n = {}", c.order()));
            let _ = write!(out, "{report}");
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_COLORING
            })
        }
        Command::CheckEmbed { pres } => {
            let p = load_presentation(&pres)?;
            let failures = embedding_failures(&p);
            for f in &failures {
                emit(out, f);
            }
            if failures.is_empty() {
                emit(out, &format!("embedding ok: {} elements", p.order()));
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_VERIFY)
            }
        }
        Command::Collapse {
            pres,
            u,
            v,
            out: path,
        } => {
            let p = load_presentation(&pres)?;
            let u = p.parse_word(&u).map_err(syntax)?;
            let v = p.parse_word(&v).map_err(syntax)?;
            let trace = collapse(&u, &v, &p).map_err(syntax)?;
            let text = trace.to_string();
            match path {
                Some(path) => {
                    write_file(&path, &text)?;
                    emit(out, &format!("{} steps", trace.len()));
                }
                None => {
                    let _ = write!(out, "{text}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::VerifyTrace { pres, trace } => {
            let p = load_presentation(&pres)?;
            let t = WitnessTrace::parse(&read(&trace)?, p.order()).map_err(syntax)?;
            let verdict = verify_trace(&t, &p);
            emit(out, &verdict.to_string());
            Ok(if verdict.accepted() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
        Command::Enumerate { pres, maxlen } => {
            let p = load_presentation(&pres)?;
            for w in Rewriter::new(&p).enumerate_normal_forms(maxlen) {
                emit(out, &w.to_string());
            }
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, line: &str) {
    let _ = writeln!(out, "{line}");
}

fn build(
    source: TableSource,
    coloring: Option<PathBuf>,
    path: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    let table = match (source.cayley, source.builtin) {
        (Some(file), _) => CayleyTable::parse(&read(&file)?)
            .map_err(|e| syntax(format!("{}: {e}", file.display())))?,
        (None, Some(name)) => CayleyTable::builtin(&name).map_err(syntax)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let coloring = match coloring {
        Some(file) => Coloring::parse(&read(&file)?).map_err(syntax)?,
        None => Coloring::build(table.order()),
    };
    let p = Presentation::generate(&table, &coloring).map_err(|e| match e {
        PresentationError::NonAssociative(_) => Failure(EXIT_ASSOC, e.to_string()),
        PresentationError::Coloring { .. } => Failure(EXIT_COLORING, e.to_string()),
        other => syntax(other),
    })?;
    write_file(path, &p.to_json())?;
    emit(out, &format!("rules: {}", p.rule_counts()));
    Ok(EXIT_OK)
}

fn check_complete(pres: &Path, verbose: bool, out: &mut dyn Write) -> CmdResult {
    let p = load_presentation(pres)?;
    let report = check_local_confluence(&p);
    let rules = p.rules();
    let aa = report
        .pairs
        .iter()
        .filter(|c| rules[c.rules.0].family == Family::A && rules[c.rules.1].family == Family::A)
        .count();
    let failures = report.failures().count();
    emit(
        out,
        &format!(
            "critical pairs: {} (A-A overlaps: {aa}, other: {})",
            report.pairs.len(),
            report.pairs.len() - aa
        ),
    );
    for c in &report.pairs {
        if verbose || !c.joinable {
            emit(
                out,
                &format!("{c} [{} / {}]", rules[c.rules.0], rules[c.rules.1]),
            );
        }
    }
    if failures == 0 {
        emit(out, "all critical pairs joinable: system is complete");
        Ok(EXIT_OK)
    } else {
        emit(out, &format!("non-joinable pairs: {failures}"));
        Ok(EXIT_VERIFY)
    }
}
