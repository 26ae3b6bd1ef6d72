//! Methods built on distances to ideal, anti-ideal or average solutions.

use serde::{Deserialize, Serialize};

use super::{weighted_row_sums, Ctx};
use crate::error::{McdaError, Result};
use crate::normalize::{col_max, col_min, map_columns, normalize, Scheme};
use crate::problem::DecisionProblem;
use crate::rank::{scores_to_ranks, ScoreRanking};

fn weighted(m: &[Vec<f64>], w: &[f64]) -> Vec<Vec<f64>> {
    m.iter()
        .map(|r| r.iter().zip(w).map(|(a, b)| a * b).collect())
        .collect()
}

fn max_of(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(f64::NEG_INFINITY, f64::max)
}

fn min_of(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(f64::INFINITY, f64::min)
}

/// Combinative distance-based assessment. Weighted max-linear matrix,
/// negative ideal = column minimum; the relative assessment sums
/// (E_i - E_k) + lambda (E_i - E_k)(T_i - T_k) over all k, where E and T are
/// the Euclidean and taxicab distances to the negative ideal.
pub(super) fn codas(c: &Ctx, lambda: f64) -> Result<Vec<f64>> {
    c.require_positive()?;
    let v = weighted(&normalize(c.x, c.d, Scheme::MaxLinear)?, c.w);
    let neg: Vec<f64> = (0..c.k()).map(|j| col_min(&v, j)).collect();
    let e: Vec<f64> = v
        .iter()
        .map(|r| r.iter().zip(&neg).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .collect();
    let t: Vec<f64> = v
        .iter()
        .map(|r| r.iter().zip(&neg).map(|(a, b)| (a - b).abs()).sum())
        .collect();
    Ok((0..c.n())
        .map(|i| {
            (0..c.n())
                .map(|k| (e[i] - e[k]) + lambda * (e[i] - e[k]) * (t[i] - t[k]))
                .sum()
        })
        .collect())
}

/// Compromise ranking of alternatives from distance to ideal and anti-ideal
/// solutions. MAX columns are scaled as min/x and MIN columns as x/max, so the
/// ideal of the weighted matrix is its smallest entry: the returned utility is
/// lower-is-better.
pub(super) fn cradis(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let m = map_columns(c.x, |j, col| {
        if c.d[j].is_max() {
            let lo = min_of(col.iter().cloned());
            col.iter().map(|x| lo / x).collect()
        } else {
            let hi = max_of(col.iter().cloned());
            col.iter().map(|x| x / hi).collect()
        }
    });
    let v = weighted(&m, c.w);
    let top = max_of(v.iter().flatten().cloned());
    let bottom = min_of(v.iter().flatten().cloned());
    let col_tops: Vec<f64> = (0..c.k()).map(|j| col_max(&v, j)).collect();
    let s_opt_plus: f64 = col_tops.iter().map(|t| top - t).sum();
    let s_opt_minus: f64 = col_tops.iter().map(|t| t - bottom).sum();
    if s_opt_minus == 0.0 {
        return Err(c.fail("degenerate weighted matrix"));
    }
    Ok(v.iter()
        .map(|r| {
            let s_plus: f64 = r.iter().map(|x| top - x).sum::<f64>() + 1e-16;
            let s_minus: f64 = r.iter().map(|x| x - bottom).sum();
            (s_opt_plus / s_plus + s_minus / s_opt_minus) / 2.0
        })
        .collect())
}

/// Evaluation based on distance from the average solution.
pub(super) fn edas(c: &Ctx) -> Result<Vec<f64>> {
    let n = c.n();
    let (mut sp, mut sn) = (vec![0.0; n], vec![0.0; n]);
    for j in 0..c.k() {
        let mean = c.x.iter().map(|r| r[j]).sum::<f64>() / n as f64;
        if mean == 0.0 {
            return Err(McdaError::Degenerate {
                column: j,
                what: "EDAS (zero column mean)".into(),
            });
        }
        for i in 0..n {
            let diff = if c.d[j].is_max() { c.x[i][j] - mean } else { mean - c.x[i][j] };
            sp[i] += c.w[j] * diff.max(0.0) / mean.abs();
            sn[i] += c.w[j] * (-diff).max(0.0) / mean.abs();
        }
    }
    let (spmax, snmax) = (max_of(sp.iter().cloned()), max_of(sn.iter().cloned()));
    Ok((0..n)
        .map(|i| {
            let nsp = if spmax > 0.0 { sp[i] / spmax } else { 0.0 };
            let nsn = if snmax > 0.0 { 1.0 - sn[i] / snmax } else { 1.0 };
            (nsp + nsn) / 2.0
        })
        .collect())
}

/// Grey relational analysis: weighted mean grey relational coefficient
/// against the ideal reference series (all ones after min-max).
pub(super) fn gra(c: &Ctx, epsilon: f64) -> Result<Vec<f64>> {
    let m = c.minmax()?;
    let coef = map_columns(&m, |_, col| {
        col.iter().map(|x| epsilon / ((1.0 - x) + epsilon)).collect()
    });
    Ok(weighted_row_sums(&coef, c.w))
}

/// Multi-attributive border approximation area comparison. The weighted
/// matrix uses a uniform factor 1/m per criterion (m alternatives) in place
/// of the problem weights; see the crate README for why.
pub(super) fn mabac(c: &Ctx) -> Result<Vec<f64>> {
    let n = c.n() as f64;
    let t = c.minmax()?;
    let v: Vec<Vec<f64>> = t
        .iter()
        .map(|r| r.iter().map(|x| (1.0 + x) / n).collect())
        .collect();
    let border: Vec<f64> = (0..c.k())
        .map(|j| v.iter().map(|r| r[j].powf(1.0 / n)).product())
        .collect();
    Ok(v.iter()
        .map(|r| r.iter().zip(&border).map(|(x, g)| x - g).sum())
        .collect())
}

/// Multi-attributive ideal-real comparative analysis: gap between theoretical
/// (w/m) and real ratings; lower is better.
pub(super) fn mairca(c: &Ctx) -> Result<Vec<f64>> {
    let n = c.n() as f64;
    let t = c.minmax()?;
    Ok(t.iter()
        .map(|r| {
            r.iter()
                .zip(c.w)
                .map(|(x, w)| {
                    let tp = w / n;
                    tp - tp * x
                })
                .sum()
        })
        .collect())
}

/// Measurement of alternatives and ranking according to compromise solution.
pub(super) fn marcos(c: &Ctx) -> Result<Vec<f64>> {
    c.require_positive()?;
    let mut ideal = 0.0;
    let mut anti = 0.0;
    let m = map_columns(c.x, |j, col| {
        let (lo, hi) = (min_of(col.iter().cloned()), max_of(col.iter().cloned()));
        // the anti-ideal normalizes to lo/hi under either direction
        ideal += c.w[j];
        anti += c.w[j] * lo / hi;
        if c.d[j].is_max() {
            col.iter().map(|x| x / hi).collect()
        } else {
            col.iter().map(|x| lo / x).collect()
        }
    });
    let s = weighted_row_sums(&m, c.w);
    Ok(s.iter()
        .map(|&si| {
            let k_minus = si / anti;
            let k_plus = si / ideal;
            let f_minus = k_plus / (k_plus + k_minus);
            let f_plus = k_minus / (k_plus + k_minus);
            (k_plus + k_minus) / (1.0 + (1.0 - f_plus) / f_plus + (1.0 - f_minus) / f_minus)
        })
        .collect())
}

/// Proximity indexed value: weighted vector-normalized deviation from the
/// column best; lower is better.
pub(super) fn piv(c: &Ctx) -> Result<Vec<f64>> {
    let v = weighted(&normalize(c.x, c.d, Scheme::Vector)?, c.w);
    let dev = map_columns(&v, |j, col| {
        if c.d[j].is_max() {
            let hi = max_of(col.iter().cloned());
            col.iter().map(|x| hi - x).collect()
        } else {
            let lo = min_of(col.iter().cloned());
            col.iter().map(|x| x - lo).collect()
        }
    });
    Ok(dev.iter().map(|r| r.iter().sum()).collect())
}

/// Stable preference ordering towards ideal solution: weighted normalized
/// distance to the expected solution point (smax for MAX, smin for MIN).
pub(super) fn spotis(c: &Ctx, smin: &[f64], smax: &[f64], extend: bool) -> Result<Vec<f64>> {
    let (lo, hi): (Vec<f64>, Vec<f64>) = if smin.is_empty() {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for j in 0..c.k() {
            let (a, b) = c.span(j)?;
            lo.push(a);
            hi.push(b);
        }
        (lo, hi)
    } else if extend {
        let mut lo = smin.to_vec();
        let mut hi = smax.to_vec();
        for j in 0..c.k() {
            for r in c.x.iter() {
                lo[j] = lo[j].min(r[j]);
                hi[j] = hi[j].max(r[j]);
            }
        }
        (lo, hi)
    } else {
        (smin.to_vec(), smax.to_vec())
    };
    Ok(c.x
        .iter()
        .map(|r| {
            (0..c.k())
                .map(|j| {
                    let target = if c.d[j].is_max() { hi[j] } else { lo[j] };
                    c.w[j] * (r[j] - target).abs() / (hi[j] - lo[j])
                })
                .sum()
        })
        .collect())
}

/// Technique for order preference by similarity to ideal solution, on the
/// weighted vector-normalized matrix.
pub(super) fn topsis(c: &Ctx) -> Result<Vec<f64>> {
    let v = weighted(&normalize(c.x, c.d, Scheme::Vector)?, c.w);
    let (mut best, mut worst) = (vec![0.0; c.k()], vec![0.0; c.k()]);
    for j in 0..c.k() {
        let (lo, hi) = (col_min(&v, j), col_max(&v, j));
        (best[j], worst[j]) = if c.d[j].is_max() { (hi, lo) } else { (lo, hi) };
    }
    let dist = |r: &[f64], p: &[f64]| r.iter().zip(p).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    v.iter()
        .map(|r| {
            let (dp, dn) = (dist(r, &best), dist(r, &worst));
            if dp + dn == 0.0 {
                Err(c.fail("alternative coincides with both ideal and anti-ideal"))
            } else {
                Ok(dn / (dp + dn))
            }
        })
        .collect()
}

/// VIKOR output: group utility S, individual regret R, compromise index Q
/// (lower is better) and the advisory compromise-solution analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VikorResult {
    pub s: Vec<f64>,
    pub r: Vec<f64>,
    pub q: Vec<f64>,
    pub ranking: ScoreRanking,
    /// Q gap between the two best alternatives is at least 1/(m-1).
    pub acceptable_advantage: bool,
    /// The Q-best alternative is also best by S or by R.
    pub acceptable_stability: bool,
    /// Alternative indices forming the compromise solution set.
    pub compromise_set: Vec<usize>,
}

pub(super) fn vikor_unchecked(c: &Ctx, v: f64) -> Result<VikorResult> {
    let n = c.n();
    let mut s = vec![0.0; n];
    let mut r = vec![0.0; n];
    for j in 0..c.k() {
        let (lo, hi) = c.span(j)?;
        let (best, worst) = if c.d[j].is_max() { (hi, lo) } else { (lo, hi) };
        for i in 0..n {
            let term = c.w[j] * (best - c.x[i][j]).abs() / (best - worst).abs();
            s[i] += term;
            r[i] = f64::max(r[i], term);
        }
    }
    let scaled = |x: &[f64]| -> Vec<f64> {
        let (lo, hi) = (min_of(x.iter().cloned()), max_of(x.iter().cloned()));
        x.iter()
            .map(|a| if hi > lo { (a - lo) / (hi - lo) } else { 0.0 })
            .collect()
    };
    let (ss, rs) = (scaled(&s), scaled(&r));
    let q: Vec<f64> = ss.iter().zip(&rs).map(|(a, b)| v * a + (1.0 - v) * b).collect();
    let ranking = ScoreRanking::from_scores(q.clone(), false)?;

    let dq = 1.0 / (n as f64 - 1.0);
    let order = ranking.ranks.order();
    let first = order[0];
    let acceptable_advantage = q[order[1]] - q[first] >= dq;
    let best_s = scores_to_ranks(&s, false);
    let best_r = scores_to_ranks(&r, false);
    let acceptable_stability = best_s.as_slice()[first] == 1 || best_r.as_slice()[first] == 1;
    let compromise_set = if acceptable_advantage && acceptable_stability {
        vec![first]
    } else if acceptable_advantage {
        vec![first, order[1]]
    } else {
        order
            .iter()
            .copied()
            .take_while(|&i| q[i] - q[first] < dq)
            .collect()
    };
    Ok(VikorResult {
        s,
        r,
        q,
        ranking,
        acceptable_advantage,
        acceptable_stability,
        compromise_set,
    })
}

/// VIKOR with the compromise-solution analysis attached. Ranks follow Q.
pub fn vikor(problem: &DecisionProblem, v: f64) -> Result<VikorResult> {
    let params = super::ScoringParams::Vikor { v };
    params.validate(super::ScoringMethodId::Vikor, problem)?;
    let w = problem.require_weights()?;
    let d = problem.directions();
    if problem.n_alternatives() == 1 {
        return Ok(VikorResult {
            s: vec![0.0],
            r: vec![0.0],
            q: vec![0.0],
            ranking: ScoreRanking::from_scores(vec![0.0], false)?,
            acceptable_advantage: true,
            acceptable_stability: true,
            compromise_set: vec![0],
        });
    }
    vikor_unchecked(
        &Ctx {
            method: super::ScoringMethodId::Vikor,
            x: problem.matrix(),
            d: &d,
            w: &w,
        },
        v,
    )
}
