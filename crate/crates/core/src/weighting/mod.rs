//! Criterion weighting: objective methods computed from the decision matrix
//! (Entropy, CRITIC, CILOS, IDOCRIW, MEREC) and the Best-Worst Method.

mod lp;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{McdaError, Result};
use crate::normalize::{column, normalize, Scheme};
use crate::problem::DecisionProblem;

pub use lp::LinearProgram;

/// Floor applied to zero entries by MEREC and the IDOCRIW entropy stage.
pub const ZERO_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub weights: Vec<f64>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl WeightVector {
    fn from_raw(raw: Vec<f64>, source: &str) -> Result<Self> {
        let total: f64 = raw.iter().sum();
        if !(total.is_finite() && total > 0.0) || raw.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(McdaError::method(source, format!("cannot normalize weights {raw:?}")));
        }
        Ok(WeightVector {
            weights: raw.iter().map(|w| w / total).collect(),
            source: source.to_string(),
            warnings: vec![],
        })
    }

    fn uniform(k: usize, source: &str, warning: Option<String>) -> Self {
        WeightVector {
            weights: vec![1.0 / k as f64; k],
            source: source.to_string(),
            warnings: warning.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum WeightingMethodId {
    Bwm,
    Cilos,
    Critic,
    Entropy,
    Idocriw,
    Merec,
}

impl WeightingMethodId {
    pub const ALL: [WeightingMethodId; 6] = [
        Self::Bwm,
        Self::Cilos,
        Self::Critic,
        Self::Entropy,
        Self::Idocriw,
        Self::Merec,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Self::Bwm => "bwm",
            Self::Cilos => "cilos",
            Self::Critic => "critic",
            Self::Entropy => "entropy",
            Self::Idocriw => "idocriw",
            Self::Merec => "merec",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Bwm => "BWM",
            Self::Cilos => "CILOS",
            Self::Critic => "CRITIC",
            Self::Entropy => "Entropy",
            Self::Idocriw => "IDOCRIW",
            Self::Merec => "MEREC",
        }
    }
}

impl FromStr for WeightingMethodId {
    type Err = McdaError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|m| m.token() == t)
            .ok_or_else(|| McdaError::UnknownMethod(s.trim().to_string()))
    }
}

impl TryFrom<String> for WeightingMethodId {
    type Error = McdaError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<WeightingMethodId> for String {
    fn from(m: WeightingMethodId) -> String {
        m.token().to_string()
    }
}

impl fmt::Display for WeightingMethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn reject_negative(problem: &DecisionProblem, method: &str) -> Result<()> {
    if problem.matrix().iter().flatten().any(|&v| v < 0.0) {
        return Err(McdaError::method(method, "negative performance values"));
    }
    Ok(())
}

/// Shannon entropy weights. Columns are sum-normalized with MIN columns
/// folded as min/x; 0·ln 0 is taken as 0 and the entropy constant is
/// 1/ln(alternatives).
pub fn entropy_weights(problem: &DecisionProblem) -> Result<WeightVector> {
    const NAME: &str = "Entropy";
    let k = problem.n_criteria();
    let m = problem.n_alternatives();
    if k == 1 {
        return WeightVector::from_raw(vec![1.0], NAME);
    }
    reject_negative(problem, NAME)?;
    if m == 1 {
        return Ok(WeightVector::uniform(k, NAME, Some("single alternative: entropy is undefined, weights set uniform".into())));
    }
    let p = normalize(problem.matrix(), &problem.directions(), Scheme::Sum)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let scale = 1.0 / (m as f64).ln();
    let divergence: Vec<f64> = (0..k)
        .map(|j| {
            let h: f64 = column(&p, j)
                .iter()
                .filter(|&&x| x > 0.0)
                .map(|x| x * x.ln())
                .sum();
            (1.0 + scale * h).max(0.0)
        })
        .collect();
    if divergence.iter().all(|&d| d <= 1e-15) {
        return Ok(WeightVector::uniform(k, NAME, Some("all columns uniform: weights set uniform".into())));
    }
    WeightVector::from_raw(divergence, NAME)
}

/// Pearson correlation of two columns; 0 when either is constant.
fn column_correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    if va == 0.0 || vb == 0.0 {
        0.0
    } else {
        cov / (va * vb).sqrt()
    }
}

/// CRITIC: contrast intensity times conflict. The contrast of each
/// min-max normalized column is its sample standard deviation taken about
/// the grand mean of the normalized matrix; conflict is Σ_k (1 - r_jk).
pub fn critic_weights(problem: &DecisionProblem) -> Result<WeightVector> {
    const NAME: &str = "CRITIC";
    let k = problem.n_criteria();
    if k == 1 {
        return WeightVector::from_raw(vec![1.0], NAME);
    }
    let m = problem.n_alternatives();
    if m < 2 {
        return Err(McdaError::method(NAME, "needs at least two alternatives"));
    }
    let x = normalize(problem.matrix(), &problem.directions(), Scheme::MinMax)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let grand = x.iter().flatten().sum::<f64>() / (m * k) as f64;
    let cols: Vec<Vec<f64>> = (0..k).map(|j| column(&x, j)).collect();
    let info: Vec<f64> = (0..k)
        .map(|j| {
            let sd = (cols[j].iter().map(|v| (v - grand).powi(2)).sum::<f64>() / (m - 1) as f64).sqrt();
            let conflict: f64 = (0..k).map(|l| 1.0 - column_correlation(&cols[j], &cols[l])).sum();
            sd * conflict
        })
        .collect();
    if info.iter().all(|&v| v <= 0.0) {
        return Ok(WeightVector::uniform(k, NAME, Some("no conflict between criteria: weights set uniform".into())));
    }
    WeightVector::from_raw(info, NAME)
}

/// Relative impact-loss matrix P (p_ij = (a_jj - a_ij) / a_jj, where row i of
/// A is the alternative maximizing criterion i) with its diagonal replaced by
/// minus the column sums.
fn impact_loss_matrix(x: &[Vec<f64>], method: &str) -> Result<DMatrix<f64>> {
    let k = x[0].len();
    let rows: Vec<&Vec<f64>> = (0..k)
        .map(|j| {
            let mut best = 0;
            for i in 1..x.len() {
                if x[i][j] > x[best][j] {
                    best = i;
                }
            }
            &x[best]
        })
        .collect();
    let mut f = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        let ajj = rows[j][j];
        if ajj <= 0.0 {
            return Err(McdaError::method(method, format!("criterion {} has no positive value", j + 1)));
        }
        for i in 0..k {
            if i != j {
                f[(i, j)] = (ajj - rows[i][j]) / ajj;
            }
        }
    }
    for j in 0..k {
        let s: f64 = (0..k).map(|i| f[(i, j)]).sum();
        f[(j, j)] = -s;
    }
    Ok(f)
}

/// Solves F q = 0 with Σq = 1. The rows of F are linearly dependent (its
/// columns sum to zero), so the last row is replaced by the simplex
/// constraint.
fn loss_null_space(f: &DMatrix<f64>, method: &str) -> Result<Vec<f64>> {
    let k = f.nrows();
    let mut a = f.clone();
    for j in 0..k {
        a[(k - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(k);
    b[k - 1] = 1.0;
    let q = a
        .lu()
        .solve(&b)
        .ok_or_else(|| McdaError::method(method, "singular impact-loss system"))?;
    let residual = (f * &q).amax();
    if residual > 1e-9 || q.iter().any(|v| *v < -1e-12 || !v.is_finite()) {
        return Err(McdaError::method(method, "impact-loss system has no unique nonnegative solution"));
    }
    Ok(q.iter().map(|v| v.max(0.0)).collect())
}

/// CILOS (criterion impact loss). MIN columns are folded as min/x, columns
/// are sum-normalized, and the weights solve (F - diag(ΣP)) q = 0 on the simplex.
pub fn cilos_weights(problem: &DecisionProblem) -> Result<WeightVector> {
    const NAME: &str = "CILOS";
    let k = problem.n_criteria();
    if k == 1 {
        return WeightVector::from_raw(vec![1.0], NAME);
    }
    reject_negative(problem, NAME)?;
    let folded = normalize(problem.matrix(), &problem.directions(), Scheme::MaxLinear)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let x = normalize(&folded, &vec![crate::problem::Direction::Max; k], Scheme::Sum)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let f = impact_loss_matrix(&x, NAME)?;
    WeightVector::from_raw(loss_null_space(&f, NAME)?, NAME)
}

/// IDOCRIW: entropy-stage weights combined with an impact-loss stage.
///
/// The entropy stage works on the raw sum-normalized matrix (no direction
/// folding, zeros floored at [`ZERO_FLOOR`]) with constant
/// 1/ln(max(criteria, alternatives)).
/// The loss stage minimizes the total relative impact loss Σ_i Σ_j F_ij q_j
/// over q ∈ [1e-7, 1]^k by projected gradient descent from q = 1, using the
/// impact-loss matrix of the min/x-folded, sum-normalized matrix. Final
/// weights are q ∘ w / Σ(q ∘ w).
pub fn idocriw_weights(problem: &DecisionProblem) -> Result<WeightVector> {
    const NAME: &str = "IDOCRIW";
    let k = problem.n_criteria();
    if k == 1 {
        return WeightVector::from_raw(vec![1.0], NAME);
    }
    reject_negative(problem, NAME)?;
    let raw = normalize(problem.matrix(), &vec![crate::problem::Direction::Max; k], Scheme::Sum)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    // ln(criteria) reproduces the published rows (which have more criteria
    // than alternatives); the max keeps the divergence nonnegative otherwise
    let scale = 1.0 / (k.max(problem.n_alternatives()) as f64).ln();
    let entropy: Vec<f64> = (0..k)
        .map(|j| {
            let h: f64 = column(&raw, j)
                .iter()
                .map(|&x| {
                    let x = if x == 0.0 { ZERO_FLOOR } else { x };
                    x * x.ln()
                })
                .sum();
            1.0 + scale * h
        })
        .collect();
    let mut warnings = vec![];
    let entropy = if entropy.iter().all(|&e| e <= 1e-15) {
        warnings.push("entropy stage is uniform: its weights set uniform".to_string());
        vec![1.0; k]
    } else {
        entropy
    };
    let folded = normalize(problem.matrix(), &problem.directions(), Scheme::MaxLinear)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let x = normalize(&folded, &vec![crate::problem::Direction::Max; k], Scheme::Sum)
        .map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let f = impact_loss_matrix(&x, NAME)?;
    let q = minimize_total_loss(&f);
    let combined: Vec<f64> = q.iter().zip(&entropy).map(|(a, b)| a * b.max(0.0)).collect();
    let mut w = WeightVector::from_raw(combined, NAME)?;
    w.warnings = warnings;
    Ok(w)
}

/// Projected gradient descent of the linear objective 1ᵀ F q on the box
/// [1e-7, 1]^k. The gradient is the vector of column sums of F.
fn minimize_total_loss(f: &DMatrix<f64>) -> Vec<f64> {
    const LOWER: f64 = 1e-7;
    let k = f.ncols();
    let grad: Vec<f64> = (0..k).map(|j| f.column(j).sum()).collect();
    let mut q = vec![1.0; k];
    for _ in 0..100 {
        let mut moved = false;
        for j in 0..k {
            if grad[j].abs() > 1e-12 {
                let next = (q[j] - grad[j]).clamp(LOWER, 1.0);
                moved |= next != q[j];
                q[j] = next;
            }
        }
        if !moved {
            break;
        }
    }
    q
}

/// MEREC (method based on the removal effects of criteria). MAX columns are
/// folded as min/x and MIN columns as x/max after flooring zeros at
/// [`ZERO_FLOOR`]; weights are proportional to the total absolute change
/// of the logarithmic performance when each criterion is removed.
pub fn merec_weights(problem: &DecisionProblem) -> Result<WeightVector> {
    const NAME: &str = "MEREC";
    let k = problem.n_criteria();
    if k == 1 {
        return WeightVector::from_raw(vec![1.0], NAME);
    }
    reject_negative(problem, NAME)?;
    let floored: Vec<Vec<f64>> = problem
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&v| v.max(ZERO_FLOOR)).collect())
        .collect();
    let dirs = problem.directions();
    let inv_dirs: Vec<_> = dirs
        .iter()
        .map(|d| if d.is_max() { crate::problem::Direction::Min } else { crate::problem::Direction::Max })
        .collect();
    // min/x for MAX columns and x/max for MIN columns is max-linear with the
    // directions swapped
    let n = normalize(&floored, &inv_dirs, Scheme::MaxLinear).map_err(|e| McdaError::method(NAME, e.to_string()))?;
    let logs: Vec<Vec<f64>> = n.iter().map(|r| r.iter().map(|v| v.ln().abs()).collect()).collect();
    let kf = k as f64;
    let total: Vec<f64> = logs.iter().map(|r| (1.0 + r.iter().sum::<f64>() / kf).ln()).collect();
    let effects: Vec<f64> = (0..k)
        .map(|j| {
            logs.iter()
                .zip(&total)
                .map(|(r, s)| {
                    let without: f64 = r.iter().enumerate().filter(|(l, _)| *l != j).map(|(_, v)| v).sum();
                    ((1.0 + without / kf).ln() - s).abs()
                })
                .sum()
        })
        .collect();
    if effects.iter().all(|&e| e == 0.0) {
        return Ok(WeightVector::uniform(k, NAME, Some("no removal effect: weights set uniform".into())));
    }
    WeightVector::from_raw(effects, NAME)
}

/// Best-to-others (`mic`) and others-to-worst (`lic`) comparison vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BwmComparisons {
    pub mic: Vec<u32>,
    pub lic: Vec<u32>,
}

impl BwmComparisons {
    /// Index of the best criterion (first `1` in `mic`) and the worst
    /// (first `1` in `lic`).
    pub fn best_worst(&self, n: usize) -> Result<(usize, usize)> {
        let bad = |r: String| Err(McdaError::params("BWM", r));
        if self.mic.len() != n || self.lic.len() != n {
            return bad(format!("mic and lic need {n} entries each"));
        }
        if self.mic.iter().chain(&self.lic).any(|&v| v < 1) {
            return bad("comparison values must be >= 1".into());
        }
        let best = self.mic.iter().position(|&v| v == 1);
        let worst = self.lic.iter().position(|&v| v == 1);
        match (best, worst) {
            (Some(b), Some(w)) => Ok((b, w)),
            (None, _) => bad("mic has no entry equal to 1 (best criterion)".into()),
            (_, None) => bad("lic has no entry equal to 1 (worst criterion)".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BwmResult {
    pub weights: WeightVector,
    /// Optimal maximum absolute deviation ξ*.
    pub xi: f64,
}

/// Linear Best-Worst Method: minimize ξ subject to |w_B - a_Bj w_j| ≤ ξ,
/// |w_j - a_jW w_W| ≤ ξ, Σw = 1, w ≥ 0.
pub fn bwm(n_criteria: usize, comparisons: &BwmComparisons) -> Result<BwmResult> {
    const NAME: &str = "BWM";
    let (b, w) = comparisons.best_worst(n_criteria)?;
    let n = n_criteria;
    if n == 1 {
        return Ok(BwmResult {
            weights: WeightVector::from_raw(vec![1.0], NAME)?,
            xi: 0.0,
        });
    }
    // variables: w_0..w_{n-1}, ξ
    let mut a_ub = Vec::new();
    let mut push_abs = |coeffs: Vec<(usize, f64)>| {
        for sign in [1.0, -1.0] {
            let mut row = vec![0.0; n + 1];
            for &(j, c) in &coeffs {
                row[j] += sign * c;
            }
            row[n] = -1.0;
            a_ub.push(row);
        }
    };
    for j in 0..n {
        if j != b {
            push_abs(vec![(b, 1.0), (j, -(comparisons.mic[j] as f64))]);
        }
        if j != w {
            push_abs(vec![(j, 1.0), (w, -(comparisons.lic[j] as f64))]);
        }
    }
    let b_ub = vec![0.0; a_ub.len()];
    let mut sum_row = vec![1.0; n + 1];
    sum_row[n] = 0.0;
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let x = LinearProgram {
        c,
        a_ub,
        b_ub,
        a_eq: vec![sum_row],
        b_eq: vec![1.0],
    }
    .solve()?;
    Ok(BwmResult {
        weights: WeightVector::from_raw(x[..n].iter().map(|v| v.max(0.0)).collect(), NAME)?,
        xi: x[n],
    })
}

pub fn bwm_weights(n_criteria: usize, comparisons: &BwmComparisons) -> Result<WeightVector> {
    Ok(bwm(n_criteria, comparisons)?.weights)
}

/// Runs a matrix-based weighting method (BWM needs comparisons instead).
pub fn weights_for(
    method: WeightingMethodId,
    problem: &DecisionProblem,
    bwm_input: Option<&BwmComparisons>,
) -> Result<WeightVector> {
    match method {
        WeightingMethodId::Entropy => entropy_weights(problem),
        WeightingMethodId::Critic => critic_weights(problem),
        WeightingMethodId::Cilos => cilos_weights(problem),
        WeightingMethodId::Idocriw => idocriw_weights(problem),
        WeightingMethodId::Merec => merec_weights(problem),
        WeightingMethodId::Bwm => {
            let cmp = bwm_input.ok_or_else(|| McdaError::params("BWM", "mic/lic comparisons are required"))?;
            bwm_weights(problem.n_criteria(), cmp)
        }
    }
}
