//! `albanese`: validate hyperelliptic data and compute their Albanese
//! variety, Albanese fiber and invariants from JSON input documents.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use albanese_core::analysis::analyze;
use albanese_core::catalog;
use albanese_core::document::parse_document;
use albanese_core::oracle::{run_oracle, OracleVerdict, DEFAULT_POINT_CAP};
use albanese_core::report::{to_json, AlbaneseDoc, CatalogRunDoc, InvariantsDoc, ValidationDoc};
use albanese_core::{action::HyperellipticDatum, Error, ErrorClass};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "albanese",
    version,
    about = "Albanese varieties of hyperelliptic varieties, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a datum defines a hyperelliptic variety.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Albanese variety, subgroup H and Albanese fiber.
    Albanese {
        path: PathBuf,
        /// Also analyze a hyperelliptic fiber, recursively.
        #[arg(long)]
        recurse: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hodge numbers, irregularity and canonical order.
    Invariants {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the exact results with enumeration of torsion points.
    Oracle {
        path: PathBuf,
        /// Torsion level for the fiber count (default: translation denominators).
        #[arg(long)]
        level: Option<u64>,
        /// Largest number of points enumerated at once.
        #[arg(long, default_value_t = DEFAULT_POINT_CAP as u64)]
        cap: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Run one entry and report differences from its recorded values.
    Run {
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print an entry as an input document.
    Export {
        name: String,
    },
}

enum Failure {
    Error(Error),
    Io(String),
    /// A completed check with a negative answer; the report is already printed.
    Rejected(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Parse => 1,
        ErrorClass::Validation => 2,
        ErrorClass::Internal => 3,
    }
}

fn load(path: &PathBuf) -> Result<HyperellipticDatum, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_document(&text)?.to_datum()?)
}

fn emit(format: Format, json: String, text: String) {
    match format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{text}"),
    }
}

fn oracle_text(v: &OracleVerdict) -> String {
    let mut s = String::new();
    for e in &v.elements {
        let _ = writeln!(
            s,
            "{:<14} level {:>3} {:<11} fixed points {:>6}  exact: {:<5} {}",
            e.element,
            e.level,
            format!("({})", format!("{:?}", e.mode).to_lowercase()),
            e.fixed_points,
            e.has_fixed_point,
            if e.agree { "agree" } else { "DISAGREE" }
        );
    }
    let f = &v.fiber;
    let _ = writeln!(
        s,
        "fiber check at level {}: {} points, {} orbits, {} fibers",
        f.level, f.points, f.orbits, f.fibers
    );
    let _ = writeln!(s, "  {}", f.message);
    if let Some(w) = &f.witness {
        let _ = writeln!(s, "  witness {w:?}");
    }
    let _ = writeln!(s, "{}", if v.passed { "pass" } else { "FAIL" });
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { path, format } => {
            let mut d = load(&path)?;
            let v = d.validate();
            let doc = ValidationDoc::new(&d, &v);
            emit(format, to_json(&doc), doc.to_text());
            if !v.passed {
                return Err(Failure::Rejected(2));
            }
        }
        Command::Albanese { path, recurse, format } => {
            let a = analyze(&load(&path)?, recurse)?;
            let doc = AlbaneseDoc::new(&a.datum, &a.albanese);
            emit(format, to_json(&doc), doc.to_text());
        }
        Command::Invariants { path, format } => {
            let a = analyze(&load(&path)?, false)?;
            let doc = InvariantsDoc::new(&a.invariants, Some(&a.canonical));
            emit(format, to_json(&doc), doc.to_text());
        }
        Command::Oracle {
            path,
            level,
            cap,
            format,
        } => {
            let a = analyze(&load(&path)?, false)?;
            let v = run_oracle(&a.datum, &a.albanese, level, cap as u128)?;
            emit(format, to_json(&v), oracle_text(&v));
            if !v.passed {
                return Err(Failure::Rejected(3));
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for e in catalog::entries() {
                    println!("{:<28} {}", e.name, e.description);
                }
            }
            CatalogAction::Run { name, format } => {
                let doc = CatalogRunDoc::new(&catalog::run_entry(&name)?);
                emit(format, to_json(&doc), doc.to_text());
                if !doc.passed {
                    return Err(Failure::Rejected(3));
                }
            }
            CatalogAction::Export { name } => println!("{}", catalog::export_entry(&name)?.to_json()),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(code)) => ExitCode::from(code),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}
