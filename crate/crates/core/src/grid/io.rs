//! Delimited-text grid files and JSON report files.
//!
//! Grid format: the first line is `<n> <h>` (1D) or `<n0> <n1> <h>` (2D);
//! the remaining lines carry samples row-major — 2D files have one line per
//! row, 1D files may wrap freely. Lines whose first non-blank character is
//! `#` are comments (tools embed their run configuration there) and are
//! ignored anywhere in the file. Values are written in shortest
//! round-tripping decimal form, so `load(save(f))` reproduces samples
//! bit-exactly. Parse errors carry 1-based line numbers.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use std::fmt::Write as _;
use std::path::Path;

/// Parse the delimited-text format. Dimension is inferred from the header
/// token count (two tokens 1D, three tokens 2D).
pub fn parse_grid(text: &str) -> Result<GridFunction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected header line"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (dim, shape, h) = match tokens.len() {
        2 => {
            let n = parse_extent(tokens[0], 1)?;
            ([1usize, 1][0], [n, 1], parse_value(tokens[1], 1)?)
        }
        3 => {
            let n0 = parse_extent(tokens[0], 1)?;
            let n1 = parse_extent(tokens[1], 1)?;
            (2usize, [n0, n1], parse_value(tokens[2], 1)?)
        }
        n => {
            return Err(Error::parse(
                1,
                format!("malformed header: expected '<n> <h>' or '<n0> <n1> <h>', found {n} tokens"),
            ))
        }
    };

    let expected = shape[0] * shape[1];
    let mut samples = Vec::with_capacity(expected);
    let mut last_line = 1;
    let mut rows_seen = 0usize;
    for (line_no, line) in lines {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.is_empty() {
            continue;
        }
        last_line = line_no;
        rows_seen += 1;
        if dim == 2 && row.len() != shape[1] {
            return Err(Error::parse(
                line_no,
                format!("ragged row: expected {} values, found {}", shape[1], row.len()),
            ));
        }
        if dim == 2 && rows_seen > shape[0] {
            return Err(Error::parse(
                line_no,
                format!("too many rows: header promised {}", shape[0]),
            ));
        }
        for tok in row {
            if samples.len() == expected {
                return Err(Error::parse(
                    line_no,
                    format!("too many samples: header promised {expected}"),
                ));
            }
            samples.push(parse_value(tok, line_no)?);
        }
    }
    if samples.len() != expected {
        return Err(Error::parse(
            last_line,
            format!("expected {expected} samples, found {}", samples.len()),
        ));
    }
    GridFunction::new(dim, shape, h, [0.0, 0.0], samples)
}

fn parse_extent(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("non-numeric extent '{tok}'")))
}

fn parse_value(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| Error::parse(line, format!("non-numeric token '{tok}'")))
}

/// Render a grid in the delimited-text format (see module docs). The origin
/// is not persisted; loading yields origin zero.
pub fn format_grid(f: &GridFunction) -> String {
    let mut out = String::new();
    let [n0, n1] = f.shape2();
    match f.dim() {
        1 => {
            let _ = writeln!(out, "{} {}", n0, f.h());
            push_row(&mut out, f.samples());
        }
        _ => {
            let _ = writeln!(out, "{} {} {}", n0, n1, f.h());
            for row in f.samples().chunks(n1) {
                push_row(&mut out, row);
            }
        }
    }
    out
}

fn push_row(out: &mut String, row: &[f64]) {
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

pub fn load_grid(path: impl AsRef<Path>) -> Result<GridFunction> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_grid(&text)
}

pub fn save_grid(f: &GridFunction, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_grid(f)).map_err(|e| Error::io(path, e))
}

/// Serialize any report structure as pretty JSON with a trailing newline.
/// Serialization order is the struct/map order, so byte-identical output is
/// the caller's responsibility (use sorted maps and stable field order).
pub fn save_report<T: serde::Serialize>(report: &T, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::validation(format!("report serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
