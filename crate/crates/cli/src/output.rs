use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Serialize, Serializer};
use udr_core::experiments::report::write_csv;
use udr_core::ExtendedReal;

use crate::args::Format;
use crate::CliError;

/// Non-finite numbers as `inf` / `-inf` / `nan` strings so CSV and JSON agree.
pub fn number<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

pub fn extended(v: ExtendedReal<f64>) -> f64 {
    v.to_real()
}

/// Semicolon-joined vector, e.g. `0.5;0.5`.
pub fn joined(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub fn emit<R: Serialize>(rows: &[R], format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::input(format!("--output {}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    write_rows(sink, rows, format)
}

fn write_rows<R: Serialize>(mut sink: Box<dyn Write>, rows: &[R], format: Format) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(&mut sink, rows).map_err(|e| CliError::input(e.to_string()))?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, rows).map_err(|e| CliError::input(format!("json: {e}")))?;
            writeln!(sink).map_err(|e| CliError::input(format!("write: {e}")))?;
        }
    }
    sink.flush().map_err(|e| CliError::input(format!("write: {e}")))
}

pub fn opt_number<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => number(x, s),
        None => s.serialize_none(),
    }
}
