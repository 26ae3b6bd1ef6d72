//! Cross-method comparison tables, rank and weight correlation, heatmaps.

mod correlation;
mod heatmap;
mod table_io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregation::RankTable;
use crate::error::{McdaError, Result};
use crate::method::{MethodOutput, MethodSpec};
use crate::problem::DecisionProblem;
use crate::rank::RankVector;

pub use correlation::{correlation_matrix, kendall_tau, kendall_tau_b, pearson, Coefficient, CorrelationMatrix};
pub use heatmap::{export_heatmap, heatmap_svg};
pub use table_io::{parse_correlation_csv, parse_table, read_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Ranks,
    Weights,
}

impl TableKind {
    pub fn token(self) -> &'static str {
        match self {
            TableKind::Ranks => "ranks",
            TableKind::Weights => "weights",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledRow {
    pub label: String,
    pub values: Vec<f64>,
}

impl LabeledRow {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Self {
        LabeledRow {
            label: label.into(),
            values,
        }
    }
}

/// A method whose row is absent because it failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub label: String,
    pub message: String,
}

/// Labeled rank or weight rows, computed rows first and literature rows
/// (`external_rows`) after.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub kind: TableKind,
    /// Alternative names (ranks) or criterion names (weights).
    pub columns: Vec<String>,
    pub rows: Vec<LabeledRow>,
    pub external_rows: Vec<LabeledRow>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ComparisonTable {
    pub fn new(kind: TableKind, columns: Vec<String>) -> Self {
        ComparisonTable {
            kind,
            columns,
            rows: vec![],
            external_rows: vec![],
            diagnostics: vec![],
        }
    }

    /// All rows, computed then external.
    pub fn all_rows(&self) -> impl Iterator<Item = &LabeledRow> {
        self.rows.iter().chain(&self.external_rows)
    }

    pub fn len(&self) -> usize {
        self.rows.len() + self.external_rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> Vec<String> {
        self.all_rows().map(|r| r.label.clone()).collect()
    }

    pub fn row(&self, label: &str) -> Option<&LabeledRow> {
        self.all_rows().find(|r| r.label == label)
    }

    fn check_row(&self, row: &LabeledRow) -> Result<()> {
        if row.values.len() != self.columns.len() {
            return Err(McdaError::Dimension(format!(
                "row {:?} has {} values, expected {}",
                row.label,
                row.values.len(),
                self.columns.len()
            )));
        }
        if self.row(&row.label).is_some() || self.diagnostics.iter().any(|d| d.label == row.label) {
            return Err(McdaError::Data(format!("duplicate row label {:?}", row.label)));
        }
        if row.values.iter().any(|v| !v.is_finite()) {
            return Err(McdaError::Data(format!("row {:?} has non-finite values", row.label)));
        }
        if self.kind == TableKind::Ranks {
            let ranks = row.values.iter().map(|&v| v as usize).collect();
            if row.values.iter().any(|&v| v.fract() != 0.0 || v < 1.0) {
                return Err(McdaError::Data(format!("row {:?}: ranks must be positive integers", row.label)));
            }
            RankVector::new(ranks).map_err(|e| McdaError::Data(format!("row {:?}: {e}", row.label)))?;
        }
        Ok(())
    }

    pub fn push_row(&mut self, row: LabeledRow) -> Result<()> {
        self.check_row(&row)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn push_external(&mut self, row: LabeledRow) -> Result<()> {
        self.check_row(&row)?;
        self.external_rows.push(row);
        Ok(())
    }

    /// Appends every row of `other` (computed and external) as external rows.
    pub fn append_external(&mut self, other: &ComparisonTable) -> Result<()> {
        if other.kind != self.kind {
            return Err(McdaError::Data(format!(
                "cannot mix {} rows into a {} table",
                other.kind.token(),
                self.kind.token()
            )));
        }
        if other.columns.len() != self.columns.len() {
            return Err(McdaError::Dimension(format!(
                "external table has {} columns, expected {}",
                other.columns.len(),
                self.columns.len()
            )));
        }
        for r in other.all_rows() {
            self.push_external(r.clone())?;
        }
        Ok(())
    }

    /// The rank rows as a [`RankTable`] (ranks tables only).
    pub fn rank_table(&self) -> Result<RankTable> {
        if self.kind != TableKind::Ranks {
            return Err(McdaError::Data("aggregation needs a ranks table".into()));
        }
        let rows = self
            .all_rows()
            .map(|r| RankVector::new(r.values.iter().map(|&v| v as usize).collect()))
            .collect::<Result<Vec<_>>>()?;
        RankTable::new(self.labels(), rows)
    }

    /// Only the named rows, in the given order.
    pub fn select(&self, labels: &[&str]) -> Result<ComparisonTable> {
        let mut out = ComparisonTable::new(self.kind, self.columns.clone());
        for l in labels {
            let row = self.row(l).ok_or_else(|| McdaError::Data(format!("no row labeled {l:?}")))?;
            if self.external_rows.iter().any(|r| r.label == *l) {
                out.push_external(row.clone())?;
            } else {
                out.push_row(row.clone())?;
            }
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        table_io::write_table(self)
    }
}

/// Runs every spec against `problem` (concurrently) and collects one row per
/// successful method in spec order, followed by the `external` rows. A
/// failing method leaves a diagnostic instead of a row.
pub fn build_comparison(
    problem: &DecisionProblem,
    specs: &[MethodSpec],
    external: &[ComparisonTable],
) -> Result<ComparisonTable> {
    if specs.is_empty() {
        return Err(McdaError::Data("no methods to compare".into()));
    }
    let weights = specs[0].produces_weights();
    if specs.iter().any(|s| s.produces_weights() != weights) {
        return Err(McdaError::Data("cannot mix ranking and weighting methods in one table".into()));
    }
    let (kind, columns) = if weights {
        (TableKind::Weights, problem.criteria().iter().map(|c| c.name.clone()).collect())
    } else {
        (TableKind::Ranks, problem.alternatives().to_vec())
    };
    let outputs: Vec<Result<MethodOutput>> = specs.par_iter().map(|s| s.run(problem)).collect();
    let mut table = ComparisonTable::new(kind, columns);
    for (spec, out) in specs.iter().zip(outputs) {
        match out {
            Ok(MethodOutput::Ranking(r)) => table.push_row(LabeledRow::new(spec.label(), r.ranks.to_f64()))?,
            Ok(MethodOutput::Weights(w)) => table.push_row(LabeledRow::new(spec.label(), w.weights))?,
            Err(e) => table.diagnostics.push(Diagnostic {
                label: spec.label().to_string(),
                message: e.to_string(),
            }),
        }
    }
    for ext in external {
        table.append_external(ext)?;
    }
    Ok(table)
}
