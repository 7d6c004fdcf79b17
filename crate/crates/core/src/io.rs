//! Text formats for curves, laws and feature batches.
//!
//! | Input | Format |
//! |-------|--------|
//! | curve | CSV, one vertex per row, `#` comments and blank lines skipped |
//! | 1D law | JSON `{"atoms": [...], "weights": [...]}` or one sample per line |
//! | feature batch | CSV, one sample per row, optional non-numeric header row |
//! | law in `R^d` | JSON `{"support": [[...], ...], "weights": [...]}` |
//!
//! Every parser returns [`Error::Parse`] with a 1-based line number for
//! malformed text and the constructor's own error for well-formed text that
//! violates a law or curve invariant. None of them panic.

use serde::Deserialize;

use crate::curve::Polyline;
use crate::divergence::DiscreteLawD;
use crate::gaussian::SampleBatch;
use crate::law::Law1D;
use crate::{Error, Result};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_row(line: usize, row: &str) -> Result<Vec<f64>> {
    row.split(',')
        .map(|field| {
            let field = field.trim();
            field
                .parse::<f64>()
                .map_err(|_| parse_error(line, format!("not a number: {field:?}")))
        })
        .collect()
}

fn parse_table<'a>(rows: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (line, row) in rows {
        let values = parse_row(line, row)?;
        if let Some(first) = out.first() {
            if values.len() != first.len() {
                return Err(parse_error(
                    line,
                    format!("expected {} columns, found {}", first.len(), values.len()),
                ));
            }
        }
        out.push(values);
    }
    Ok(out)
}

/// Reads a polyline; the dimension is the column count.
pub fn parse_curve_csv(text: &str) -> Result<Polyline> {
    let rows = parse_table(data_lines(text))?;
    if rows.is_empty() {
        return Err(Error::Empty("curve file"));
    }
    Polyline::from_rows(rows)
}

/// Reads one number per line.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    data_lines(text)
        .map(|(line, row)| match parse_row(line, row)?.as_slice() {
            [v] => Ok(*v),
            other => Err(parse_error(line, format!("expected 1 value, found {}", other.len()))),
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LawJson {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteLawJson {
    support: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
}

/// Reads `{"atoms": [...], "weights": [...]}`; atoms may come in any order and
/// repeated atoms are merged.
pub fn parse_law_json(text: &str) -> Result<Law1D> {
    let raw: LawJson = from_json(text)?;
    if raw.atoms.len() != raw.weights.len() {
        return Err(Error::LengthMismatch {
            left: raw.atoms.len(),
            right: raw.weights.len(),
        });
    }
    Law1D::from_weighted(raw.atoms.into_iter().zip(raw.weights))
}

/// Reads a sample list and returns its empirical law.
pub fn parse_law_csv(text: &str) -> Result<Law1D> {
    let values = parse_values(text)?;
    Law1D::from_samples(&values)
}

/// JSON when the first non-blank character is `{`, a sample list otherwise.
pub fn parse_law(text: &str) -> Result<Law1D> {
    if text.trim_start().starts_with('{') {
        parse_law_json(text)
    } else {
        parse_law_csv(text)
    }
}

/// Reads a feature batch. A first row that does not parse as numbers is
/// taken as a header and skipped.
pub fn parse_batch_csv(text: &str) -> Result<SampleBatch> {
    let mut lines = data_lines(text).peekable();
    if let Some(&(line, first)) = lines.peek() {
        if parse_row(line, first).is_err() {
            lines.next();
        }
    }
    let rows = parse_table(lines)?;
    SampleBatch::from_rows(&rows)
}

/// Reads `{"support": [[...], ...], "weights": [...]}`.
pub fn parse_discrete_law_json(text: &str) -> Result<DiscreteLawD> {
    let raw: DiscreteLawJson = from_json(text)?;
    DiscreteLawD::new(raw.support, raw.weights)
}
