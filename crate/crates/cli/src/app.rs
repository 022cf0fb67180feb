//! Subcommand dispatch and the exit-code contract:
//! 0 success, 1 rejection (reason name on stderr), 2 parse/format error,
//! 3 I/O error.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use tamedec_core::jung::{decompose, invert, word_to_pair, verify, Reject};
use tamedec_core::newton::{directions, hull, st_en, NewtonError};
use tamedec_core::poly::BiPoly;
use tamedec_core::witness::random_tame_word;

use crate::docs::{DocError, PairDocument, WordDocument};
use crate::parse::{parse_poly, ParseError};
use crate::svg::polygon_svg;

#[derive(Parser)]
#[command(
    name = "tamedec",
    about = "Decompose plane polynomial automorphisms over Q into elementary and linear moves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a pair document into a word of tame moves
    Decompose {
        /// Pair document (JSON file, or "-" for stdin)
        #[arg(long)]
        pair: String,
        /// Where to write the word document (default: stdout)
        #[arg(long)]
        word_out: Option<PathBuf>,
    },
    /// Check that a word recomposes exactly to a pair
    Verify {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        word: String,
    },
    /// Compute the inverse automorphism of a pair
    Invert {
        #[arg(long)]
        pair: String,
    },
    /// Compose a word document into its pair of coordinate images
    Compose {
        #[arg(long)]
        word: String,
    },
    /// Inspect the Newton polygon of a polynomial
    Polygon {
        /// Polynomial text, e.g. "(y+x^2)^2 + x"
        #[arg(long)]
        poly: String,
        /// Emit the JSON report (the default when --svg is absent)
        #[arg(long)]
        json: bool,
        /// Write an SVG drawing of the lattice hull to this file
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate a seeded random word of tame moves
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        moves: usize,
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        coeff_bound: i64,
    },
    /// Print the Jacobian bracket [P, Q] of a pair
    Bracket {
        #[arg(long)]
        pair: String,
    },
}

#[derive(Debug)]
enum CliError {
    Reject(Reject),
    Mismatch,
    Format(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Reject(r) => write!(f, "reject: {r}"),
            CliError::Mismatch => write!(f, "mismatch: the word does not recompose to the pair"),
            CliError::Format(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Reject(_) | CliError::Mismatch => 1,
            CliError::Format(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<Reject> for CliError {
    fn from(r: Reject) -> Self {
        CliError::Reject(r)
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<NewtonError> for CliError {
    fn from(e: NewtonError) -> Self {
        CliError::Format(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))
    }
}

fn write_output(target: Option<&Path>, content: &str) -> Result<(), CliError> {
    match target {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) if path.as_os_str() == "-" => {
            println!("{content}");
            Ok(())
        }
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("invalid JSON in {path}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[derive(Serialize)]
struct PolygonReport {
    vertices: Vec<[i64; 2]>,
    directions: Vec<[i64; 2]>,
    st_en: Vec<CornerReport>,
}

#[derive(Serialize)]
struct CornerReport {
    direction: [i64; 2],
    st: [i64; 2],
    en: [i64; 2],
}

fn polygon_report(p: &BiPoly) -> Result<PolygonReport, CliError> {
    let h = hull(p)?;
    let dirs = directions(p)?;
    let mut st_en_entries = Vec::with_capacity(dirs.len());
    for d in &dirs {
        let (st, en) = st_en(*d, p)?;
        st_en_entries.push(CornerReport {
            direction: [d.rho, d.sigma],
            st: [st.i as i64, st.j as i64],
            en: [en.i as i64, en.j as i64],
        });
    }
    Ok(PolygonReport {
        vertices: h
            .vertices
            .iter()
            .map(|v| [v.i as i64, v.j as i64])
            .collect(),
        directions: dirs.iter().map(|d| [d.rho, d.sigma]).collect(),
        st_en: st_en_entries,
    })
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Decompose { pair, word_out } => {
            let doc: PairDocument = read_json(&pair)?;
            let word = decompose(&doc.to_pair()?)?;
            write_output(word_out.as_deref(), &to_json(&WordDocument::from_word(&word)))
        }
        Command::Verify { pair, word } => {
            let pair_doc: PairDocument = read_json(&pair)?;
            let word_doc: WordDocument = read_json(&word)?;
            if verify(&word_doc.to_word()?, &pair_doc.to_pair()?) {
                println!("ok");
                Ok(())
            } else {
                Err(CliError::Mismatch)
            }
        }
        Command::Invert { pair } => {
            let doc: PairDocument = read_json(&pair)?;
            let inverse = invert(&doc.to_pair()?)?;
            write_output(None, &to_json(&PairDocument::from_pair(&inverse)))
        }
        Command::Compose { word } => {
            let doc: WordDocument = read_json(&word)?;
            let pair = word_to_pair(&doc.to_word()?)
                .map_err(|e| CliError::Format(e.to_string()))?;
            write_output(None, &to_json(&PairDocument::from_pair(&pair)))
        }
        Command::Polygon { poly, json, svg } => {
            let p = parse_poly(&poly)?;
            if let Some(path) = &svg {
                let drawing = polygon_svg(&p)?;
                write_output(Some(path), &drawing)?;
            }
            if json || svg.is_none() {
                write_output(None, &to_json(&polygon_report(&p)?))?;
            }
            Ok(())
        }
        Command::Random {
            seed,
            moves,
            max_deg,
            coeff_bound,
        } => {
            if max_deg < 1 || coeff_bound < 1 {
                return Err(CliError::Format(
                    "--max-deg and --coeff-bound must be at least 1".to_string(),
                ));
            }
            let word = random_tame_word(seed, moves, max_deg, coeff_bound);
            write_output(None, &to_json(&WordDocument::from_word(&word)))
        }
        Command::Bracket { pair } => {
            let doc: PairDocument = read_json(&pair)?;
            let pair = doc.to_pair()?;
            println!("{}", pair.p.bracket(&pair.q));
            Ok(())
        }
    }
}

/// Parses the command line, runs the command, and returns the process exit
/// code. Clap itself exits with code 2 on usage errors, matching the
/// parse/format family.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
