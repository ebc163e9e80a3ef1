//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input error, 3 certification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::{Genus, TriVector};
use crate::error::{Error, Result};
use crate::growth::{
    certify_bound, compute_constants, nu_family, sample_growth, write_csv, CsvRow,
};
use crate::morita::{accumulate_fast, Splitting};
use crate::words::{tau_of_word, GeneratorTable, Word, NU_TABLE_JSON};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CERTIFICATION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "casson",
    version,
    about = "Casson invariant growth on Torelli words"
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate λ, τ and ℓ(τ) on a word.
    Eval {
        /// Generator table (JSON); defaults to the bundled ν table at genus 3.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Word expression: `name`, `name^k`, `name^-1`, space separated.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Certify |λ| ≤ C·n² on a word.
    Bound {
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// CSV of the νⁿ family for n = 1..=n_max.
    NuFamily {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lambda_nu: i64,
        #[arg(long, default_value_t = 3)]
        genus: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of certified records for seeded random words.
    Sample {
        #[arg(long)]
        table: Option<PathBuf>,
        /// Comma-separated word lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bound constants C1, C2, C3, C of a table.
    Constants {
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check a table, or a tri-vector in record form, and report the first
    /// violated invariant.
    Validate {
        #[arg(long)]
        table: Option<PathBuf>,
        /// Tri-vector records, e.g. `[[1,2,3,1],[4,5,6,1]]`.
        #[arg(long, conflicts_with = "table", requires = "genus")]
        tau: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
    },
}

fn load_table(path: Option<&PathBuf>) -> Result<GeneratorTable> {
    match path {
        Some(p) => GeneratorTable::load(p),
        None => GeneratorTable::from_json(NU_TABLE_JSON),
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Option<BufWriter<File>>> {
    path.map(|p| {
        File::create(p)
            .map(BufWriter::new)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))
    })
    .transpose()
}

fn emit_csv(rows: Vec<CsvRow>, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match open_output(path)? {
        Some(mut file) => {
            write_csv(rows, &mut file)?;
            file.flush().map_err(|e| Error::Io(e.to_string()))
        }
        None => write_csv(rows, out),
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    let io_err = |e: io::Error| Error::Io(e.to_string());
    match cmd {
        Command::Eval { table, word } => {
            let t = load_table(table.as_ref())?;
            let w = Word::parse(word, &t)?;
            let s = Splitting::standard(t.genus());
            let lambda = accumulate_fast(&w, &t, &s)?;
            let tau = tau_of_word(&w, &t)?;
            writeln!(out, "lambda: {lambda}").map_err(io_err)?;
            writeln!(out, "tau: {}", tau.to_text()).map_err(io_err)?;
            writeln!(out, "ell: {}", tau.ell_norm()).map_err(io_err)?;
            writeln!(out, "length: {}", w.len()).map_err(io_err)?;
        }
        Command::Bound { table, word } => {
            let t = load_table(table.as_ref())?;
            let w = Word::parse(word, &t)?;
            let s = Splitting::standard(t.genus());
            let r = certify_bound(&w, &t, &s)?;
            writeln!(out, "length: {}", r.n).map_err(io_err)?;
            writeln!(out, "lambda: {}", r.lambda).map_err(io_err)?;
            writeln!(out, "term_sum: {}", r.term_sum).map_err(io_err)?;
            writeln!(out, "per_step_bound: {}", r.per_step_bound).map_err(io_err)?;
            writeln!(out, "quadratic_bound: {}", r.quadratic_bound).map_err(io_err)?;
            writeln!(out, "ratio: {}/{}", r.ratio.num, r.ratio.den).map_err(io_err)?;
            writeln!(
                out,
                "PASS: {} <= {}",
                r.lambda.unsigned_abs(),
                r.quadratic_bound
            )
            .map_err(io_err)?;
        }
        Command::NuFamily {
            n_max,
            lambda_nu,
            genus,
            out: path,
        } => {
            let genus = Genus::torelli(*genus)?;
            let records = nu_family(*n_max, *lambda_nu, genus)?;
            let rows = records.iter().map(|r| CsvRow::new(0, r)).collect();
            emit_csv(rows, path.as_ref(), out)?;
        }
        Command::Sample {
            table,
            lengths,
            trials,
            seed,
            out: path,
        } => {
            let t = load_table(table.as_ref())?;
            let s = Splitting::standard(t.genus());
            let records = sample_growth(&t, &s, lengths, *trials, *seed)?;
            let rows = records.iter().map(CsvRow::from).collect();
            emit_csv(rows, path.as_ref(), out)?;
        }
        Command::Constants { table } => {
            let t = load_table(table.as_ref())?;
            let c = compute_constants(&t)?;
            writeln!(out, "genus: {}", t.genus()).map_err(io_err)?;
            writeln!(out, "C1: {}", c.c1).map_err(io_err)?;
            writeln!(out, "C2: {}", c.c2).map_err(io_err)?;
            writeln!(out, "C3: {}", c.c3).map_err(io_err)?;
            writeln!(out, "C: {}", c.c).map_err(io_err)?;
        }
        Command::Validate { table, tau, genus } => match (tau, genus) {
            (Some(text), Some(g)) => {
                let v = TriVector::from_text(Genus::new(*g)?, text)?;
                v.validate()?;
                writeln!(
                    out,
                    "OK: {} term(s), canonical form {}",
                    v.len(),
                    v.to_text()
                )
                .map_err(io_err)?;
            }
            _ => {
                let t = load_table(table.as_ref())?;
                writeln!(out, "OK: genus {}, {} generator(s)", t.genus(), t.len())
                    .map_err(io_err)?;
            }
        },
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs one subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let invocation = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&invocation.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) if e.is_certification_failure() => {
            let _ = writeln!(out, "FAIL: {e}");
            EXIT_CERTIFICATION
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
