use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, Result};
use crate::row::{fmt_float, ReportRow};

pub const CSV_HEADER: [&str; 14] = [
    "task",
    "p",
    "r",
    "n",
    "beta",
    "computed_mantissa",
    "log10_scale",
    "main_mantissa",
    "remainder_mantissa",
    "gap",
    "normalized_gap",
    "regime",
    "formula_id",
    "quad_err",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

fn record(row: &ReportRow) -> [String; 14] {
    [
        row.task.clone(),
        fmt_float(row.p),
        fmt_float(row.r),
        row.n.to_string(),
        row.beta.clone(),
        fmt_float(row.computed_mantissa),
        fmt_float(row.log10_scale),
        fmt_float(row.main_mantissa),
        fmt_float(row.remainder_mantissa),
        fmt_float(row.gap),
        fmt_float(row.normalized_gap),
        row.regime.clone(),
        row.formula_id.clone(),
        fmt_float(row.quad_err),
    ]
}

pub fn write_csv<W: Write>(rows: &[ReportRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for row in rows {
        out.write_record(record(row))?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w).map_err(|e| CliError::Json(serde_json::Error::io(e)))?;
    Ok(())
}

pub fn to_csv_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn read_json(text: &str) -> Result<Vec<ReportRow>> {
    Ok(serde_json::from_str(text)?)
}

/// Writes the rows to `dest`, or to stdout when there is none.
pub fn emit(rows: &[ReportRow], format: Format, dest: Option<&Path>) -> Result<()> {
    if rows.is_empty() {
        return Err(CliError::Empty);
    }
    let write = |w: Box<dyn Write>| match format {
        Format::Csv => write_csv(rows, w),
        Format::Json => write_json(rows, w),
    };
    match dest {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::io(path, e))?;
            write(Box::new(io::BufWriter::new(f))).map_err(|e| match e {
                CliError::Csv(c) if c.is_io_error() => CliError::io(path, io::Error::other(c.to_string())),
                other => other,
            })
        }
        None => write(Box::new(io::stdout().lock())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ReportRow {
        let mut r = ReportRow::failed("thm1", f64::INFINITY, 5.0, 16, "0".into(), "x".into());
        r.regime = "band1".into();
        r.formula_id = "thm1".into();
        r.computed_mantissa = 0.1;
        r
    }

    #[test]
    fn one_row_two_lines() {
        let s = to_csv_string(&[row()]).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("thm1,inf,5.0000000000000000e0,16,0,1.0000000000000001e-1,"));
    }

    #[test]
    fn json_round_trip() {
        let rows = vec![row(), ReportRow::failed("lemma1", 2.0, 1.5, 3, "seq:1".into(), "bad, point".into())];
        let mut buf = Vec::new();
        write_json(&rows, &mut buf).unwrap();
        let back = read_json(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.len(), 2);
        assert!(rows.iter().zip(&back).all(|(a, b)| a.same_as(b)));
        assert!(String::from_utf8(buf).unwrap().contains("\"p\": \"inf\""));
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(emit(&[], Format::Csv, None), Err(CliError::Empty)));
    }
}
