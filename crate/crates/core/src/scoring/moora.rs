//! MOORA family: ratio system, its ratio variant, and MULTIMOORA.

use serde::{Deserialize, Serialize};

use super::{Ctx, ScoringMethodId};
use crate::error::Result;
use crate::normalize::{col_max, col_min, normalize, Scheme};
use crate::problem::DecisionProblem;
use crate::rank::ScoreRanking;

/// Weighted vector-normalized benefit and cost sums per alternative.
fn benefit_cost(c: &Ctx, weights: Option<&[f64]>) -> Result<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>)> {
    let m = normalize(c.x, c.d, Scheme::Vector)?;
    let (mut plus, mut minus) = (vec![0.0; c.n()], vec![0.0; c.n()]);
    for (i, row) in m.iter().enumerate() {
        for j in 0..c.k() {
            let v = row[j] * weights.map_or(1.0, |w| w[j]);
            if c.d[j].is_max() {
                plus[i] += v;
            } else {
                minus[i] += v;
            }
        }
    }
    Ok((plus, minus, m))
}

pub(super) fn moora(c: &Ctx) -> Result<Vec<f64>> {
    let (plus, minus, _) = benefit_cost(c, Some(c.w))?;
    Ok(plus.iter().zip(&minus).map(|(p, m)| p - m).collect())
}

/// Ratio of weighted benefit sum to weighted cost sum.
pub(super) fn moosra(c: &Ctx) -> Result<Vec<f64>> {
    let (plus, minus, _) = benefit_cost(c, Some(c.w))?;
    if minus.iter().any(|&m| m <= 0.0) {
        return Err(c.fail("needs at least one MIN criterion with positive values"));
    }
    Ok(plus.iter().zip(&minus).map(|(p, m)| p / m).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultimooraResult {
    /// Final dominance-based ranking.
    pub ranking: ScoreRanking,
    pub ratio_system: ScoreRanking,
    pub reference_point: ScoreRanking,
    pub full_multiplicative: ScoreRanking,
}

/// MULTIMOORA (unweighted, as in the original formulation): the three
/// subordinate rankings are combined by pairwise dominance, where one
/// alternative dominates another when it ranks better in at least two of the
/// three. Final score = number of alternatives dominated, with the summed
/// subordinate ranks breaking ties in the fractional part.
pub(super) fn multimoora_unchecked(c: &Ctx) -> Result<MultimooraResult> {
    let (plus, minus, m) = benefit_cost(c, None)?;
    let rs: Vec<f64> = plus.iter().zip(&minus).map(|(p, q)| p - q).collect();
    let reference: Vec<f64> = (0..c.k())
        .map(|j| if c.d[j].is_max() { col_max(&m, j) } else { col_min(&m, j) })
        .collect();
    let rp: Vec<f64> = m
        .iter()
        .map(|r| {
            r.iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    c.require_positive()?;
    // ratio of products, accumulated in log space to avoid overflow
    let fmf: Vec<f64> = c
        .x
        .iter()
        .map(|r| {
            r.iter()
                .zip(c.d)
                .map(|(x, d)| if d.is_max() { x.ln() } else { -x.ln() })
                .sum::<f64>()
                .exp()
        })
        .collect();
    let ratio_system = ScoreRanking::from_scores(rs, true)?;
    let reference_point = ScoreRanking::from_scores(rp, false)?;
    let full_multiplicative = ScoreRanking::from_scores(fmf, true)?;
    let subs = [
        ratio_system.ranks.as_slice(),
        reference_point.ranks.as_slice(),
        full_multiplicative.ranks.as_slice(),
    ];
    let n = c.n();
    let scores: Vec<f64> = (0..n)
        .map(|a| {
            let wins = (0..n)
                .filter(|&b| b != a && subs.iter().filter(|s| s[a] < s[b]).count() >= 2)
                .count();
            let rank_sum: usize = subs.iter().map(|s| s[a]).sum();
            let total = 3.0 * n as f64;
            wins as f64 + (total - rank_sum as f64) / total
        })
        .collect();
    Ok(MultimooraResult {
        ranking: ScoreRanking::from_scores(scores, true)?,
        ratio_system,
        reference_point,
        full_multiplicative,
    })
}

/// MULTIMOORA with its three subordinate rankings.
pub fn multimoora(problem: &DecisionProblem) -> Result<MultimooraResult> {
    let w = problem.require_weights()?;
    let d = problem.directions();
    if problem.n_alternatives() == 1 {
        let one = ScoreRanking::from_scores(vec![0.0], true)?;
        return Ok(MultimooraResult {
            ranking: one.clone(),
            ratio_system: one.clone(),
            reference_point: ScoreRanking::from_scores(vec![0.0], false)?,
            full_multiplicative: one,
        });
    }
    multimoora_unchecked(&Ctx {
        method: ScoringMethodId::Multimoora,
        x: problem.matrix(),
        d: &d,
        w: &w,
    })
}
