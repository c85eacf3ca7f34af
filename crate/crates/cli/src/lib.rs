//! Experiment drivers behind the `lgsim` command.

pub mod args;
pub mod experiments;
pub mod selftest;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use args::{Cli, Experiment, Format};
pub use experiments::{run, Check, Outcome, Params};

/// Writes the outcome table to `--out` or stdout.
pub fn emit(outcome: &Outcome, cli: &Cli) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match cli.format {
        Format::Csv => outcome.table.write_csv(&mut sink)?,
        Format::Json => outcome.table.write_json(&mut sink)?,
    }
    sink.flush()
}
