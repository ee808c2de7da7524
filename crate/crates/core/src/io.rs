//! Point cloud file formats.
//!
//! * CSV: `x,y,z` per record, optional header row.
//! * XYZ: whitespace-separated triples, `#` starts a comment.
//! * JSON: `{"points": [[x, y, z], ...]}`.
//!
//! Writers emit shortest round-trip decimals, so every format reproduces the
//! written cloud bit-exactly.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Xyz,
    Json,
}

impl Format {
    /// Guess from the file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        ext.parse().ok()
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "xyz" | "txt" => Ok(Format::Xyz),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParams(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Xyz => "xyz",
            Format::Json => "json",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct JsonCloud {
    points: Vec<[f64; 3]>,
}

fn parse_coord(field: &str, line: u64) -> Result<f64> {
    let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{}` is not a number", field.trim()),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite coordinate `{}`", field.trim()),
        });
    }
    Ok(v)
}

fn parse_triple<'a>(fields: impl ExactSizeIterator<Item = &'a str>, line: u64) -> Result<Point3> {
    if fields.len() != 3 {
        return Err(Error::Parse {
            line,
            message: format!("expected 3 coordinates, found {}", fields.len()),
        });
    }
    let mut xyz = [0.0; 3];
    for (slot, f) in xyz.iter_mut().zip(fields) {
        *slot = parse_coord(f, line)?;
    }
    Ok(Point3::from(xyz))
}

fn parse_csv(text: &str) -> Result<Vec<Point3>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        match parse_triple(record.iter().collect::<Vec<_>>().into_iter(), line) {
            Ok(p) => points.push(p),
            // A non-numeric first row is a header.
            Err(_) if n == 0 && record.iter().any(|f| f.parse::<f64>().is_err()) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(points)
}

fn parse_xyz(text: &str) -> Result<Vec<Point3>> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        points.push(parse_triple(fields.into_iter(), i as u64 + 1)?);
    }
    Ok(points)
}

fn parse_json(text: &str) -> Result<Vec<Point3>> {
    let cloud: JsonCloud = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    cloud
        .points
        .into_iter()
        .enumerate()
        .map(|(i, xyz)| {
            let p = Point3::from(xyz);
            if p.is_finite() {
                Ok(p)
            } else {
                Err(Error::NonFinite { index: i })
            }
        })
        .collect()
}

/// Parses a whole document. Parse errors carry a 1-based line number.
pub fn parse_points(text: &str, format: Format) -> Result<Vec<Point3>> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Xyz => parse_xyz(text),
        Format::Json => parse_json(text),
    }
}

/// Reads a cloud, taking the format from `format` or else the extension
/// (CSV when neither says otherwise).
pub fn read_points(path: &Path, format: Option<Format>) -> Result<Vec<Point3>> {
    let format = format
        .or_else(|| Format::from_path(path))
        .unwrap_or(Format::Csv);
    let text = fs::read_to_string(path)?;
    parse_points(&text, format)
}

pub fn write_points<W: Write>(mut w: W, points: &[Point3], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "x,y,z")?;
            for p in points {
                writeln!(w, "{:?},{:?},{:?}", p.x, p.y, p.z)?;
            }
        }
        Format::Xyz => {
            for p in points {
                writeln!(w, "{:?} {:?} {:?}", p.x, p.y, p.z)?;
            }
        }
        Format::Json => {
            let cloud = JsonCloud {
                points: points.iter().map(|p| p.to_array()).collect(),
            };
            serde_json::to_writer(&mut w, &cloud)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
