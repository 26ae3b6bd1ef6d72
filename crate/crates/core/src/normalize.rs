//! Column normalization schemes shared by the method modules.

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::problem::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// (x - min) / (max - min), reversed for MIN columns.
    MinMax,
    /// x / Σx; MIN columns use (1/x) / Σ(1/x).
    Sum,
    /// x / ‖column‖₂, direction ignored.
    Vector,
    /// x / max; MIN columns use min / x.
    MaxLinear,
}

pub type Matrix = Vec<Vec<f64>>;

pub(crate) fn column(m: &[Vec<f64>], j: usize) -> Vec<f64> {
    m.iter().map(|r| r[j]).collect()
}

pub(crate) fn col_min(m: &[Vec<f64>], j: usize) -> f64 {
    m.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min)
}

pub(crate) fn col_max(m: &[Vec<f64>], j: usize) -> f64 {
    m.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn map_columns(m: &[Vec<f64>], mut f: impl FnMut(usize, &[f64]) -> Vec<f64>) -> Matrix {
    let n = m.len();
    let k = m.first().map_or(0, Vec::len);
    let mut out = vec![vec![0.0; k]; n];
    for j in 0..k {
        let col = column(m, j);
        for (i, v) in f(j, &col).into_iter().enumerate() {
            out[i][j] = v;
        }
    }
    out
}

pub fn normalize(matrix: &[Vec<f64>], directions: &[Direction], scheme: Scheme) -> Result<Matrix> {
    let k = directions.len();
    if matrix.iter().any(|r| r.len() != k) {
        return Err(McdaError::Dimension(format!(
            "matrix rows must have {k} columns"
        )));
    }
    if matrix.iter().flatten().any(|v| !v.is_finite()) {
        return Err(McdaError::Data("matrix contains non-finite values".into()));
    }
    let degenerate = |column: usize, what: &str| McdaError::Degenerate {
        column,
        what: what.to_string(),
    };
    let mut err = None;
    let out = map_columns(matrix, |j, col| {
        let max = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = col.iter().cloned().fold(f64::INFINITY, f64::min);
        let is_max = directions[j].is_max();
        match scheme {
            Scheme::MinMax => {
                let span = max - min;
                if span == 0.0 {
                    err.get_or_insert(degenerate(j, "min-max normalization (constant column)"));
                    return vec![0.0; col.len()];
                }
                col.iter()
                    .map(|&x| if is_max { (x - min) / span } else { (max - x) / span })
                    .collect()
            }
            Scheme::Sum => {
                if is_max {
                    let s: f64 = col.iter().sum();
                    if s == 0.0 {
                        err.get_or_insert(degenerate(j, "sum normalization (zero sum)"));
                        return vec![0.0; col.len()];
                    }
                    col.iter().map(|&x| x / s).collect()
                } else {
                    if col.contains(&0.0) {
                        err.get_or_insert(degenerate(j, "sum normalization (zero in MIN column)"));
                        return vec![0.0; col.len()];
                    }
                    let s: f64 = col.iter().map(|&x| 1.0 / x).sum();
                    col.iter().map(|&x| (1.0 / x) / s).collect()
                }
            }
            Scheme::Vector => {
                let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm == 0.0 {
                    err.get_or_insert(degenerate(j, "vector normalization (all-zero column)"));
                    return vec![0.0; col.len()];
                }
                col.iter().map(|&x| x / norm).collect()
            }
            Scheme::MaxLinear => {
                if is_max {
                    if max <= 0.0 {
                        err.get_or_insert(degenerate(j, "max-linear normalization (nonpositive max)"));
                        return vec![0.0; col.len()];
                    }
                    col.iter().map(|&x| x / max).collect()
                } else {
                    if col.iter().any(|&x| x <= 0.0) {
                        err.get_or_insert(degenerate(j, "max-linear normalization (nonpositive MIN entry)"));
                        return vec![0.0; col.len()];
                    }
                    col.iter().map(|&x| min / x).collect()
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
