//! Reading and writing point files.
//!
//! `xy` files hold two whitespace-separated numbers per line, with `#`
//! comment lines. CSV files have columns `x,y` and an optional header.
//! Coordinates are written with 17 significant digits so a reload is exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{HullError, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    XyWhitespace,
    Csv,
}

impl Format {
    /// `.csv` means CSV, anything else whitespace pairs.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::XyWhitespace,
        }
    }
}

impl FromStr for Format {
    type Err = HullError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xy" | "xy_whitespace" => Ok(Format::XyWhitespace),
            "csv" => Ok(Format::Csv),
            _ => Err(HullError::Config(format!("unknown point format {s:?}"))),
        }
    }
}

pub fn load_points(path: &Path, format: Format) -> Result<Vec<Point>> {
    let text = fs::read_to_string(path).map_err(|e| HullError::io(path, e))?;
    parse_points(&text, format)
}

pub fn parse_points(text: &str, format: Format) -> Result<Vec<Point>> {
    let coords = match format {
        Format::XyWhitespace => parse_xy(text)?,
        Format::Csv => parse_csv(text)?,
    };
    if coords.is_empty() {
        return Err(HullError::EmptyInput);
    }
    Ok(Point::from_coords(&coords))
}

fn coordinate(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field.trim().parse().map_err(|_| HullError::Parse {
        line,
        message: format!("not a number: {field:?}"),
    })?;
    if !v.is_finite() {
        return Err(HullError::Parse {
            line,
            message: format!("non-finite coordinate {field:?}"),
        });
    }
    Ok(v)
}

fn parse_xy(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(HullError::Parse {
                line,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        out.push((coordinate(fields[0], line)?, coordinate(fields[1], line)?));
    }
    Ok(out)
}

fn parse_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut columns = (0, 1);
    let mut out = Vec::new();
    for (ordinal, record) in reader.records().enumerate() {
        let line_of = |pos: Option<&csv::Position>| pos.map_or(ordinal + 1, |p| p.line() as usize);
        let record = record.map_err(|e| HullError::Parse {
            line: line_of(e.position()),
            message: e.to_string(),
        })?;
        let line = line_of(record.position());
        // a first row whose fields are not numbers is a header
        if ordinal == 0 && record.iter().any(|f| f.parse::<f64>().is_err()) {
            let find = |name: &str| record.iter().position(|f| f.eq_ignore_ascii_case(name));
            columns = match (find("x"), find("y")) {
                (Some(x), Some(y)) => (x, y),
                _ => (0, 1),
            };
            continue;
        }
        let field = |c: usize| {
            record.get(c).ok_or_else(|| HullError::Parse {
                line,
                message: format!("missing column {}", c + 1),
            })
        };
        out.push((coordinate(field(columns.0)?, line)?, coordinate(field(columns.1)?, line)?));
    }
    Ok(out)
}

pub fn format_points(points: &[Point], format: Format) -> String {
    let mut out = String::with_capacity(points.len() * 48);
    let sep = match format {
        Format::XyWhitespace => ' ',
        Format::Csv => {
            out.push_str("x,y\n");
            ','
        }
    };
    for p in points {
        let _ = writeln!(out, "{:.16e}{sep}{:.16e}", p.x, p.y);
    }
    out
}

pub fn save_points(path: &Path, points: &[Point], format: Format) -> Result<()> {
    fs::write(path, format_points(points, format)).map_err(|e| HullError::io(path, e))
}
