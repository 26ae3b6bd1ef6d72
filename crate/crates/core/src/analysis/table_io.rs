//! Table CSV format.
//!
//! ```text
//! # kind=ranks
//! # external: Rao (2006)
//! # failed VIKOR: reason
//! label,a1,a2,a3
//! TOPSIS,2,3,1
//! Rao (2006),1,3,2
//! ```
//!
//! `kind` is `ranks`, `weights` or `scores`; a `scores` file holds raw
//! higher-is-better scores and is converted to a ranks table on load.
//! Other comment lines are ignored.

use std::path::Path;

use crate::error::{McdaError, Result};
use crate::rank::scores_to_ranks;

use super::correlation::{Coefficient, CorrelationMatrix};
use super::{ComparisonTable, Diagnostic, LabeledRow, TableKind};

fn split_comments(text: &str) -> (Vec<&str>, String) {
    let mut comments = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.trim());
        } else if !t.is_empty() {
            body.push_str(line);
            body.push('\n');
        }
    }
    (comments, body)
}

fn records(body: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(|e| McdaError::Parse(e.to_string()))
        })
        .collect()
}

fn number(row: usize, column: usize, s: &str) -> Result<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| McdaError::NonNumeric {
        row,
        column,
        value: s.to_string(),
    })
}

pub fn parse_table(text: &str) -> Result<ComparisonTable> {
    let (comments, body) = split_comments(text);
    let mut kind = None;
    let mut external = Vec::new();
    let mut diagnostics = Vec::new();
    for c in comments {
        if let Some(k) = c.strip_prefix("kind=") {
            kind = Some(k.trim().to_ascii_lowercase());
        } else if let Some(l) = c.strip_prefix("external:") {
            external.push(l.trim().to_string());
        } else if let Some(rest) = c.strip_prefix("failed ") {
            if let Some((label, message)) = rest.split_once(':') {
                diagnostics.push(Diagnostic {
                    label: label.trim().to_string(),
                    message: message.trim().to_string(),
                });
            }
        }
    }
    let kind = kind.ok_or_else(|| McdaError::Parse("missing `# kind=ranks|weights|scores` line".into()))?;
    let (table_kind, scores) = match kind.as_str() {
        "ranks" => (TableKind::Ranks, false),
        "weights" => (TableKind::Weights, false),
        "scores" => (TableKind::Ranks, true),
        other => return Err(McdaError::Parse(format!("unknown table kind {other:?}"))),
    };
    let recs = records(&body)?;
    let header = recs.first().ok_or_else(|| McdaError::Parse("table has no header line".into()))?;
    if header.first().map(|h| h.to_ascii_lowercase()) != Some("label".into()) {
        return Err(McdaError::Parse("first header cell must be `label`".into()));
    }
    let mut table = ComparisonTable::new(table_kind, header[1..].to_vec());
    table.diagnostics = diagnostics;
    for (i, rec) in recs.iter().enumerate().skip(1) {
        if rec.len() != header.len() {
            return Err(McdaError::Dimension(format!(
                "table line {} has {} cells, expected {}",
                i + 1,
                rec.len(),
                header.len()
            )));
        }
        let mut values = rec[1..]
            .iter()
            .enumerate()
            .map(|(j, s)| number(i + 1, j + 2, s))
            .collect::<Result<Vec<f64>>>()?;
        if scores {
            values = scores_to_ranks(&values, true).to_f64();
        }
        let row = LabeledRow::new(rec[0].clone(), values);
        if external.contains(&row.label) {
            table.push_external(row)?;
        } else {
            table.push_row(row)?;
        }
    }
    Ok(table)
}

pub fn read_table(path: impl AsRef<Path>) -> Result<ComparisonTable> {
    let path = path.as_ref();
    parse_table(&std::fs::read_to_string(path).map_err(|e| McdaError::io(path, e))?)
}

fn csv_line(cells: impl IntoIterator<Item = String>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(vec![]);
    w.write_record(cells.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn format_value(kind: TableKind, v: f64) -> String {
    match kind {
        TableKind::Ranks => format!("{}", v as i64),
        TableKind::Weights => format!("{v}"),
    }
}

pub(crate) fn write_table(t: &ComparisonTable) -> String {
    let mut out = format!("# kind={}\n", t.kind.token());
    for r in &t.external_rows {
        out.push_str(&format!("# external: {}\n", r.label));
    }
    for d in &t.diagnostics {
        out.push_str(&format!("# failed {}: {}\n", d.label, d.message.replace('\n', " ")));
    }
    out.push_str(&csv_line(std::iter::once("label".to_string()).chain(t.columns.iter().cloned())));
    for r in t.all_rows() {
        out.push_str(&csv_line(
            std::iter::once(r.label.clone()).chain(r.values.iter().map(|&v| format_value(t.kind, v))),
        ));
    }
    out
}

pub(crate) fn write_correlation(m: &CorrelationMatrix) -> String {
    let mut out = format!("# coefficient={}\n# kind={}\n", m.coefficient.token(), m.kind.token());
    out.push_str(&csv_line(std::iter::once("label".to_string()).chain(m.labels.iter().cloned())));
    for (label, row) in m.labels.iter().zip(&m.values) {
        out.push_str(&csv_line(std::iter::once(label.clone()).chain(
            row.iter().map(|v| v.map_or_else(|| "NA".to_string(), |x| format!("{x}"))),
        )));
    }
    out
}

/// Reads a correlation matrix written by [`CorrelationMatrix::to_csv`].
pub fn parse_correlation_csv(text: &str) -> Result<CorrelationMatrix> {
    let (comments, body) = split_comments(text);
    let coefficient = comments
        .iter()
        .find_map(|c| c.strip_prefix("coefficient="))
        .map(|c| c.trim().parse::<Coefficient>())
        .transpose()?
        .ok_or_else(|| McdaError::Parse("missing `# coefficient=` line".into()))?;
    let kind = match comments.iter().find_map(|c| c.strip_prefix("kind=")).map(str::trim) {
        Some("ranks") => TableKind::Ranks,
        Some("weights") => TableKind::Weights,
        Some(other) => return Err(McdaError::Parse(format!("unknown table kind {other:?}"))),
        None => match coefficient {
            Coefficient::KendallTauB => TableKind::Ranks,
            Coefficient::Pearson => TableKind::Weights,
        },
    };
    let recs = records(&body)?;
    let header = recs.first().ok_or_else(|| McdaError::Parse("matrix has no header line".into()))?;
    let labels: Vec<String> = header[1..].to_vec();
    if recs.len() != labels.len() + 1 {
        return Err(McdaError::Dimension(format!("expected {} matrix rows, found {}", labels.len(), recs.len() - 1)));
    }
    let mut values = Vec::with_capacity(labels.len());
    for (i, rec) in recs.iter().enumerate().skip(1) {
        if rec.len() != header.len() || rec[0] != labels[i - 1] {
            return Err(McdaError::Parse(format!("matrix line {} does not match the header", i + 1)));
        }
        values.push(
            rec[1..]
                .iter()
                .enumerate()
                .map(|(j, s)| if s.eq_ignore_ascii_case("na") { Ok(None) } else { number(i + 1, j + 2, s).map(Some) })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    CorrelationMatrix::from_parts(labels, values, coefficient, kind)
}
