//! CSV and JSON emission.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Value column entry; `None` becomes an empty cell.
pub fn fmt_cell(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub struct Csv {
    out: Box<dyn Write>,
}

impl Csv {
    pub fn new(out: Box<dyn Write>, header: &[String]) -> io::Result<Self> {
        let mut csv = Csv { out };
        csv.row(header)?;
        Ok(csv)
    }

    pub fn row(&mut self, fields: &[String]) -> io::Result<()> {
        self.out.write_all(fields.join(",").as_bytes())?;
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// Buffered writer to `path`, or to stdout when no path is given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::input(format!("cannot create {}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Serializes `value` with a trailing newline. Non-finite numbers, which JSON
/// cannot represent, must be encoded by the caller.
pub fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    // Serializing a `Value` can only fail on I/O.
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::input(format!("I/O: {e}")))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// JSON number, or the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn json_f64(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::json!(fmt_f64(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for &x in &[0.0, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_cell(None), "");
    }
}
