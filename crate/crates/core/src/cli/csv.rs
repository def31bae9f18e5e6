//! Two-column profile files: a `coord,value` header, then one record per
//! grid node. Values are written in the shortest form that parses back to
//! the same `f64`, so output is bit-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::CliError;
use crate::numerics::{Grid1D, SampledFunction};

pub const HEADER: &str = "coord,value";

/// Relative tolerance on node positions when checking that the coordinate
/// column is a uniform grid.
const SPACING_TOL: f64 = 1e-9;

pub fn parse_profile(text: &str, source: &str) -> Result<SampledFunction, CliError> {
    let parse_err = |line: usize, message: String| CliError::Parse {
        file: source.to_owned(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => {
            return Err(parse_err(
                n,
                format!("expected header `{HEADER}`, found `{other}`"),
            ))
        }
        None => return Err(parse_err(1, "empty file".into())),
    }

    let mut coords = Vec::new();
    let mut values = Vec::new();
    let mut line_numbers = Vec::new();
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (a, b) = line.split_once(',').ok_or_else(|| {
            parse_err(
                n,
                format!("expected two comma-separated fields, found `{line}`"),
            )
        })?;
        let field = |s: &str| -> Result<f64, CliError> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| parse_err(n, format!("`{}` is not a number", s.trim())))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(n, format!("non-finite value `{}`", s.trim())))
            }
        };
        coords.push(field(a)?);
        values.push(field(b)?);
        line_numbers.push(n);
    }

    if coords.len() < 2 {
        return Err(parse_err(
            line_numbers.last().copied().unwrap_or(1),
            "need at least two records".into(),
        ));
    }
    let (x0, x1) = (coords[0], coords[coords.len() - 1]);
    let dx = (x1 - x0) / (coords.len() - 1) as f64;
    if !(dx > 0.0) {
        return Err(parse_err(
            line_numbers[1],
            "coordinates must increase".into(),
        ));
    }
    for (i, (&x, &n)) in coords.iter().zip(&line_numbers).enumerate() {
        let expected = x0 + i as f64 * dx;
        if (x - expected).abs() > SPACING_TOL * dx.max(expected.abs()) {
            return Err(parse_err(
                n,
                format!("coordinate {x} is off the uniform grid (expected {expected})"),
            ));
        }
    }
    let grid = Grid1D::new(x0, dx, coords.len())?;
    Ok(SampledFunction::new(grid, values)?)
}

pub fn read_profile(path: &Path) -> Result<SampledFunction, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_profile(&text, &path.display().to_string())
}

pub fn format_profile(f: &SampledFunction) -> String {
    let mut out = String::with_capacity(32 * f.values().len() + 16);
    out.push_str(HEADER);
    out.push('\n');
    for (x, v) in f.grid().points().zip(f.values()) {
        writeln!(out, "{x:?},{v:?}").expect("writing to a String cannot fail");
    }
    out
}

pub fn write_profile(path: &Path, f: &SampledFunction) -> Result<(), CliError> {
    fs::write(path, format_profile(f)).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
