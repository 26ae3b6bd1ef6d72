//! Decision problems: alternatives × criteria with directions and optional weights.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    pub fn is_max(self) -> bool {
        self == Direction::Max
    }
}

impl FromStr for Direction {
    type Err = McdaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" => Ok(Direction::Max),
            "min" => Ok(Direction::Min),
            _ => Err(McdaError::UnknownDirection(s.trim().to_string())),
        }
    }
}

impl TryFrom<String> for Direction {
    type Error = McdaError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Direction> for String {
    fn from(d: Direction) -> String {
        d.to_string()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Max => "max",
            Direction::Min => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl Criterion {
    pub fn new(name: impl Into<String>, direction: Direction, weight: Option<f64>) -> Self {
        Criterion {
            name: name.into(),
            direction,
            weight,
        }
    }
}

/// A validated decision matrix. Construct through [`DecisionProblem::new`] or
/// [`load_problem`]; fields are read-only afterwards.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionProblem {
    alternatives: Vec<String>,
    criteria: Vec<Criterion>,
    matrix: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawProblem {
    alternatives: Vec<String>,
    criteria: Vec<Criterion>,
    matrix: Vec<Vec<f64>>,
}

impl DecisionProblem {
    /// Validates dimensions and finiteness; weights, when every criterion
    /// carries one, are renormalized to sum to 1.
    pub fn new(
        alternatives: Vec<String>,
        mut criteria: Vec<Criterion>,
        matrix: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(McdaError::Dimension("at least one alternative is required".into()));
        }
        if criteria.is_empty() {
            return Err(McdaError::Dimension("at least one criterion is required".into()));
        }
        if matrix.len() != alternatives.len() {
            return Err(McdaError::Dimension(format!(
                "{} alternatives but {} matrix rows",
                alternatives.len(),
                matrix.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(McdaError::Dimension(format!(
                    "row {} ({}) has {} values, expected {}",
                    i + 1,
                    alternatives[i],
                    row.len(),
                    criteria.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(McdaError::Data(format!(
                    "non-finite value at {} / {}",
                    alternatives[i], criteria[j].name
                )));
            }
        }
        for c in &criteria {
            if let Some(w) = c.weight {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(McdaError::BadWeight {
                        criterion: c.name.clone(),
                        weight: w,
                    });
                }
            }
        }
        let given = criteria.iter().filter(|c| c.weight.is_some()).count();
        if given != 0 && given != criteria.len() {
            return Err(McdaError::Data(
                "weights must be given for every criterion or for none".into(),
            ));
        }
        if given == criteria.len() {
            let total: f64 = criteria.iter().map(|c| c.weight.unwrap()).sum();
            if total <= 0.0 {
                return Err(McdaError::Data("criterion weights sum to zero".into()));
            }
            for c in criteria.iter_mut() {
                c.weight = c.weight.map(|w| w / total);
            }
        }
        Ok(DecisionProblem {
            alternatives,
            criteria,
            matrix,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.criteria.iter().map(|c| c.direction).collect()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.matrix.iter().map(|r| r[j]).collect()
    }

    /// Weights if every criterion has one.
    pub fn weights(&self) -> Option<Vec<f64>> {
        self.criteria.iter().map(|c| c.weight).collect()
    }

    pub fn require_weights(&self) -> Result<Vec<f64>> {
        self.weights().ok_or(McdaError::MissingWeights)
    }

    /// Same matrix with a replacement weight vector.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.n_criteria() {
            return Err(McdaError::Dimension(format!(
                "{} weights for {} criteria",
                weights.len(),
                self.n_criteria()
            )));
        }
        let criteria = self
            .criteria
            .iter()
            .zip(weights)
            .map(|(c, &w)| Criterion::new(c.name.clone(), c.direction, Some(w)))
            .collect();
        DecisionProblem::new(self.alternatives.clone(), criteria, self.matrix.clone())
    }

    /// Reorders alternatives so that new row `i` is old row `perm[i]`.
    pub fn permute_alternatives(&self, perm: &[usize]) -> Self {
        DecisionProblem {
            alternatives: perm.iter().map(|&i| self.alternatives[i].clone()).collect(),
            criteria: self.criteria.clone(),
            matrix: perm.iter().map(|&i| self.matrix[i].clone()).collect(),
        }
    }

    /// Reorders criteria so that new column `j` is old column `perm[j]`.
    pub fn permute_criteria(&self, perm: &[usize]) -> Self {
        DecisionProblem {
            alternatives: self.alternatives.clone(),
            criteria: perm.iter().map(|&j| self.criteria[j].clone()).collect(),
            matrix: self
                .matrix
                .iter()
                .map(|r| perm.iter().map(|&j| r[j]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    /// Writes the decision-problem CSV layout accepted by [`parse_csv`].
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.criteria.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&csv_line(std::iter::once("alternative").chain(names)));
        let dirs: Vec<String> = self.criteria.iter().map(|c| c.direction.to_string()).collect();
        out.push_str(&csv_line(
            std::iter::once("direction").chain(dirs.iter().map(String::as_str)),
        ));
        if let Some(w) = self.weights() {
            let w: Vec<String> = w.iter().map(|v| format!("{v}")).collect();
            out.push_str(&csv_line(
                std::iter::once("weights").chain(w.iter().map(String::as_str)),
            ));
        }
        for (a, row) in self.alternatives.iter().zip(&self.matrix) {
            let vals: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&csv_line(
                std::iter::once(a.as_str()).chain(vals.iter().map(String::as_str)),
            ));
        }
        out
    }
}

fn csv_line<'a>(cells: impl Iterator<Item = &'a str>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(vec![]);
    w.write_record(cells).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

/// Loads a problem from CSV, JSON (`.json`) or TOML (`.toml`).
pub fn load_problem(path: impl AsRef<Path>) -> Result<DecisionProblem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| McdaError::io(path, e))?;
    match path.extension().and_then(|e| e.to_str()).map(|e| e.to_ascii_lowercase()) {
        Some(ext) if ext == "json" => parse_json(&text),
        Some(ext) if ext == "toml" => parse_toml(&text),
        _ => parse_csv(&text),
    }
}

pub fn parse_json(text: &str) -> Result<DecisionProblem> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| McdaError::Parse(e.to_string()))?;
    DecisionProblem::new(raw.alternatives, raw.criteria, raw.matrix)
}

pub fn parse_toml(text: &str) -> Result<DecisionProblem> {
    let raw: RawProblem = toml::from_str(text).map_err(|e| McdaError::Parse(e.to_string()))?;
    DecisionProblem::new(raw.alternatives, raw.criteria, raw.matrix)
}

/// CSV layout: criterion names, direction tokens, an optional row whose first
/// cell is `weights`, then one row per alternative (label + values). The
/// header rows may carry a leading corner cell; `#` lines are comments.
pub fn parse_csv(text: &str) -> Result<DecisionProblem> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<String>> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| McdaError::Parse(e.to_string()))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push(rec.iter().map(str::to_string).collect());
    }
    if rows.len() < 3 {
        return Err(McdaError::Parse(
            "expected a name row, a direction row and at least one alternative".into(),
        ));
    }
    let has_weights = rows[2]
        .first()
        .is_some_and(|c| c.eq_ignore_ascii_case("weights"));
    let data_start = if has_weights { 3 } else { 2 };
    if rows.len() <= data_start {
        return Err(McdaError::Parse("no alternative rows".into()));
    }
    let ncols = rows[data_start].len().saturating_sub(1);
    if ncols == 0 {
        return Err(McdaError::Dimension("alternative rows carry no values".into()));
    }
    let strip = |row: &[String], what: &str| -> Result<Vec<String>> {
        match row.len() {
            n if n == ncols + 1 => Ok(row[1..].to_vec()),
            n if n == ncols => Ok(row.to_vec()),
            n => Err(McdaError::Dimension(format!(
                "{what} row has {n} cells for {ncols} criteria"
            ))),
        }
    };
    let names = strip(&rows[0], "name")?;
    let directions = strip(&rows[1], "direction")?
        .iter()
        .map(|t| t.parse::<Direction>())
        .collect::<Result<Vec<_>>>()?;
    let weights = if has_weights {
        if rows[2].len() != ncols + 1 {
            return Err(McdaError::Dimension(format!(
                "weights row has {} values for {ncols} criteria",
                rows[2].len() - 1
            )));
        }
        Some(
            rows[2][1..]
                .iter()
                .enumerate()
                .map(|(j, v)| parse_cell(v, 3, j + 2))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let criteria = names
        .into_iter()
        .zip(directions)
        .enumerate()
        .map(|(j, (n, d))| Criterion::new(n, d, weights.as_ref().map(|w| w[j])))
        .collect();
    let mut alternatives = Vec::new();
    let mut matrix = Vec::new();
    for (i, row) in rows[data_start..].iter().enumerate() {
        let line = data_start + i + 1;
        if row.len() != ncols + 1 {
            return Err(McdaError::Dimension(format!(
                "row {line} has {} values, expected {ncols}",
                row.len() - 1
            )));
        }
        alternatives.push(row[0].clone());
        matrix.push(
            row[1..]
                .iter()
                .enumerate()
                .map(|(j, v)| parse_cell(v, line, j + 2))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    DecisionProblem::new(alternatives, criteria, matrix)
}

fn parse_cell(v: &str, row: usize, column: usize) -> Result<f64> {
    v.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| McdaError::NonNumeric {
            row,
            column,
            value: v.to_string(),
        })
}
