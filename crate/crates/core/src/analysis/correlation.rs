use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::rank::RankVector;

use super::{ComparisonTable, TableKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficient {
    KendallTauB,
    Pearson,
}

impl Coefficient {
    pub fn token(self) -> &'static str {
        match self {
            Coefficient::KendallTauB => "kendall",
            Coefficient::Pearson => "pearson",
        }
    }

    /// The coefficient conventionally used for a table kind.
    pub fn default_for(kind: TableKind) -> Self {
        match kind {
            TableKind::Ranks => Coefficient::KendallTauB,
            TableKind::Weights => Coefficient::Pearson,
        }
    }
}

impl FromStr for Coefficient {
    type Err = McdaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kendall" | "kendall_tau_b" | "tau" => Ok(Coefficient::KendallTauB),
            "pearson" => Ok(Coefficient::Pearson),
            other => Err(McdaError::Parse(format!("unknown coefficient {other:?} (expected kendall or pearson)"))),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

fn check_pair(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(McdaError::Dimension(format!("vectors of length {} and {}", a.len(), b.len())));
    }
    if a.len() < 2 {
        return Err(McdaError::Dimension("correlation needs at least 2 values".into()));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(McdaError::Data("correlation input is not finite".into()));
    }
    Ok(())
}

/// Number of tied pairs within runs of equal values of a sorted sequence.
fn tied_pairs<T: PartialEq>(sorted: &[T]) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

/// Merge sort counting strict inversions.
fn sort_counting_swaps(v: &mut [f64], buf: &mut Vec<f64>) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = sort_counting_swaps(&mut v[..mid], buf) + sort_counting_swaps(&mut v[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[j] < v[i] {
            swaps += (mid - i) as u64;
            buf.push(v[j]);
            j += 1;
        } else {
            buf.push(v[i]);
            i += 1;
        }
    }
    buf.extend_from_slice(&v[i..mid]);
    buf.extend_from_slice(&v[j..n]);
    v.copy_from_slice(buf);
    swaps
}

/// Kendall tau-b of two real vectors by Knight's O(n log n) algorithm.
/// `None` when either vector is constant (the coefficient is undefined).
pub fn kendall_tau_b(a: &[f64], b: &[f64]) -> Result<Option<f64>> {
    check_pair(a, b)?;
    let n = a.len() as u64;
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let ties_a = tied_pairs(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let ties_joint = tied_pairs(&pairs);
    let mut bs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = Vec::with_capacity(bs.len());
    let swaps = sort_counting_swaps(&mut bs, &mut buf);
    let ties_b = tied_pairs(&bs);
    let n0 = n * (n - 1) / 2;
    let denom = ((n0 - ties_a) as f64 * (n0 - ties_b) as f64).sqrt();
    if denom == 0.0 {
        return Ok(None);
    }
    let numer = n0 as f64 - ties_a as f64 - ties_b as f64 + ties_joint as f64 - 2.0 * swaps as f64;
    Ok(Some((numer / denom).clamp(-1.0, 1.0)))
}

/// Kendall tau-b between two rank vectors.
pub fn kendall_tau(a: &RankVector, b: &RankVector) -> Result<Option<f64>> {
    kendall_tau_b(&a.to_f64(), &b.to_f64())
}

/// Sample Pearson correlation; `None` when either vector is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<Option<f64>> {
    check_pair(a, b)?;
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    // relative threshold: a column equal up to rounding is constant
    let scale = |m: f64| (m.abs() * 1e-12).powi(2) * n;
    if saa <= scale(ma) || sbb <= scale(mb) {
        return Ok(None);
    }
    Ok(Some((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)))
}

/// Symmetric matrix of pairwise coefficients; `None` marks undefined cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
    pub coefficient: Coefficient,
    /// Kind of the table the rows came from.
    pub kind: TableKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl CorrelationMatrix {
    pub(crate) fn from_parts(
        labels: Vec<String>,
        values: Vec<Vec<Option<f64>>>,
        coefficient: Coefficient,
        kind: TableKind,
    ) -> Result<Self> {
        let n = labels.len();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(McdaError::Dimension(format!("correlation matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (values[i][j], values[j][i]);
                let symmetric = match (a, b) {
                    (Some(x), Some(y)) => (x - y).abs() <= 1e-12,
                    (None, None) => true,
                    _ => false,
                };
                if !symmetric {
                    return Err(McdaError::Data(format!("matrix is not symmetric at ({}, {})", i + 1, j + 1)));
                }
                if a.is_some_and(|x| !(-1.0..=1.0).contains(&x)) {
                    return Err(McdaError::Data(format!("coefficient out of [-1, 1] at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(CorrelationMatrix {
            labels,
            values,
            coefficient,
            kind,
            warnings: vec![],
        })
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        self.values[i][j]
    }

    /// Smallest defined off-diagonal value with its (row, column) indices,
    /// row < column.
    pub fn min_off_diagonal(&self) -> Option<(f64, usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..self.labels.len() {
            for j in i + 1..self.labels.len() {
                if let Some(v) = self.values[i][j] {
                    if best.is_none_or(|(b, _, _)| v.total_cmp(&b) == Ordering::Less) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        best
    }

    pub fn to_csv(&self) -> String {
        super::table_io::write_correlation(self)
    }
}

/// Pairwise coefficient over every row of `table`, external rows included.
/// Using Kendall on weights or Pearson on ranks is allowed with a warning.
pub fn correlation_matrix(table: &ComparisonTable, coefficient: Coefficient) -> Result<CorrelationMatrix> {
    let rows: Vec<_> = table.all_rows().collect();
    if rows.len() < 2 {
        return Err(McdaError::Data(format!("fewer than 2 rows ({}) to correlate", rows.len())));
    }
    let f = match coefficient {
        Coefficient::KendallTauB => kendall_tau_b,
        Coefficient::Pearson => pearson,
    };
    let n = rows.len();
    let mut values = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = f(&rows[i].values, &rows[j].values).ok().flatten();
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    let mut m = CorrelationMatrix::from_parts(table.labels(), values, coefficient, table.kind)?;
    if coefficient != Coefficient::default_for(table.kind) {
        m.warnings.push(format!("{} coefficient applied to a {} table", coefficient, table.kind.token()));
    }
    Ok(m)
}
